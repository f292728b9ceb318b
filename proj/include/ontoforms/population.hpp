#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ontoforms/form.hpp"

namespace ontoforms {

struct Submission;

/// Values for one property. Exactly one carrier is meaningful: literals for
/// data properties, individuals and/or creations for object properties.
struct ValueEntry {
  Iri property;
  std::vector<Literal> literals;
  std::vector<Iri> individuals;
  std::vector<Submission> creations;

  std::size_t value_count() const { return literals.size() + individuals.size() + creations.size(); }
  friend bool operator==(const ValueEntry&, const ValueEntry&) = default;
};

struct Submission {
  Iri chosen_class;
  std::optional<std::string> display_label;
  std::vector<ValueEntry> values;

  const ValueEntry* find(const Iri& property) const;
  friend bool operator==(const Submission&, const Submission&) = default;
};

struct MintedIndividual {
  Iri iri;
  Iri cls;
  friend bool operator==(const MintedIndividual&, const MintedIndividual&) = default;
};

struct PopulationResult {
  Iri root_iri;
  std::vector<MintedIndividual> minted;
  Graph added_triples;
  /// Only non-empty for update.
  Graph removed_triples;

  /// `graph` minus removed plus added.
  Graph apply_to(const Graph& graph) const;
};

/// Sorts values by property and every list inside, recursively, so that two
/// submissions with the same content compare equal.
Submission canonicalize(Submission s);

/// Checks a submission against a form without touching any graph. Throws
/// ValidationError.
void validate_submission(const OntologyModel& model, const FormStructure& form, const Submission& s);

PopulationResult populate(const OntologyModel& model, const FormStructure& form, const Submission& submission);

Submission prefill(const OntologyModel& model, const FormStructure& form, const Iri& individual);

PopulationResult update(const OntologyModel& model, const FormStructure& form, const Iri& individual,
                        const Submission& submission);

/// Smallest unused `<namespace><name>_<n>` for the class. `reserved` holds
/// IRIs taken earlier in the same batch.
Iri mint_iri(const OntologyModel& model, const Iri& cls,
             const std::optional<std::string>& display_label = std::nullopt,
             const std::set<Iri>& reserved = {});

/// Keeps [A-Za-z0-9_], replaces every other byte with '_'.
std::string sanitize_local_name(std::string_view text);

/// Lexical-form check for the datatype's widget (integer grammar, decimal,
/// true/false, ISO-8601 dates). Text datatypes accept anything.
bool valid_lexical_form(const Iri& datatype, std::string_view lexical);

}  // namespace ontoforms
