#pragma once

// Wire formats shared by the HTTP service, the CLI and the on-disk config
// files. Field names are lowerCamelCase; IRIs travel as absolute strings.

#include <nlohmann/json.hpp>

#include "ontoforms/form.hpp"
#include "ontoforms/population.hpp"

namespace ontoforms {

using nlohmann::json;

json to_json(const FormStructure& form);
json to_json(const Submission& submission);
json to_json(const PopulationResult& result);
json to_json(const FormConfig& config);

/// Throws ParseError when the text is not JSON, ValidationError when the
/// document does not have the expected shape.
json parse_json_text(std::string_view text);
Submission submission_from_json(const json& j);
FormConfig config_from_json(const json& j);

/// Classes as a tree rooted at owl:Thing (children are direct subclasses and
/// named equivalents, sorted by IRI; a class already on the current branch
/// is not repeated).
json class_tree(const OntologyModel& model, const Iri& root);

/// The explorer view: class tree, properties table and individuals list.
json ontology_detail(const OntologyModel& model);

}  // namespace ontoforms
