#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ontoforms/ontology.hpp"

namespace ontoforms {

/// Administrator declarations applied on top of the default form.
struct FormConfig {
  /// Properties never rendered, at any nesting level.
  std::set<Iri> hidden_properties;
  /// (context class, range class): object properties of the context class
  /// ranging over the range class become nested sections.
  std::set<std::pair<Iri, Iri>> inline_pairs;
  std::map<Iri, std::string> label_overrides;

  friend bool operator==(const FormConfig&, const FormConfig&) = default;
};

enum class Widget { Text, Number, Checkbox, Date };

std::string_view to_string(Widget w);
Widget widget_for(const Iri& datatype);

struct Option {
  Iri iri;
  std::string label;
  friend bool operator==(const Option&, const Option&) = default;
};

struct FormStructure;

struct Field {
  Iri property;
  std::string label;
  Iri datatype;
  Widget widget = Widget::Text;
  bool functional = false;
  friend bool operator==(const Field&, const Field&) = default;
};

struct Selector {
  Iri property;
  std::string label;
  Iri range_class;
  bool multiple = true;
  std::vector<Option> options;
  friend bool operator==(const Selector&, const Selector&) = default;
};

struct Section {
  Iri property;
  std::string label;
  Iri range_class;
  std::shared_ptr<const FormStructure> form;
  friend bool operator==(const Section& a, const Section& b);
};

using FormElement = std::variant<Field, Selector, Section>;

const Iri& element_property(const FormElement& e);

/// An inline pair downgraded to a selector because the (class, property)
/// pair was already being expanded higher up the same branch.
struct CycleDegradedWarning {
  Iri context_class;
  Iri property;
  std::vector<std::pair<Iri, Iri>> path;
  friend bool operator==(const CycleDegradedWarning&, const CycleDegradedWarning&) = default;
};

struct FormStructure {
  Iri main_class;
  std::string label;
  std::vector<Option> subclass_options;
  std::vector<FormElement> elements;
  /// Collected from the whole tree; only populated on the root form.
  std::vector<CycleDegradedWarning> warnings;

  const FormElement* find(const Iri& property) const;
  friend bool operator==(const FormStructure&, const FormStructure&) = default;
};

FormStructure generate_form(const OntologyModel& model, const Iri& main_class,
                            const FormConfig& config = {});

/// Symmetric difference of the top-level element properties. Throws
/// MismatchedClassError when the forms describe different classes.
std::set<Iri> diff_forms(const FormStructure& a, const FormStructure& b);

/// Properties of every element at every nesting level.
std::set<Iri> all_element_properties(const FormStructure& form);

}  // namespace ontoforms
