#include "ontoforms/form.hpp"

#include <algorithm>

namespace ontoforms {

namespace {

using Path = std::vector<std::pair<Iri, Iri>>;

class Generator {
public:
  Generator(const OntologyModel& model, const FormConfig& config) : model_(model), config_(config) {}

  FormStructure run(const Iri& main_class) {
    FormStructure root = build(main_class, {});
    root.warnings = std::move(warnings_);
    return root;
  }

private:
  const OntologyModel& model_;
  const FormConfig& config_;
  std::vector<CycleDegradedWarning> warnings_;

  std::string label(const Iri& iri) const {
    auto it = config_.label_overrides.find(iri);
    return it != config_.label_overrides.end() ? it->second : label_of(model_, iri);
  }

  std::vector<Option> options_for(const Iri& range) const {
    std::vector<Option> out;
    for (auto& ind : individuals_of(model_, range)) {
      auto it = config_.label_overrides.find(ind.iri);
      out.push_back({ind.iri, it != config_.label_overrides.end() ? it->second : std::move(ind.label)});
    }
    return out;
  }

  FormStructure build(const Iri& cls, const Path& path) {
    FormStructure form;
    form.main_class = cls;
    form.label = label(cls);
    for (const auto& sub : subclasses_of(model_, cls)) form.subclass_options.push_back({sub, label(sub)});

    for (const auto& applicable : applicable_properties(model_, cls)) {
      const Iri& p = applicable.property;
      if (config_.hidden_properties.contains(p)) continue;
      const PropertyDecl& decl = model_.properties.at(p);

      if (decl.kind == PropertyKind::Data) {
        Iri datatype = decl.range.value_or(vocab::xsd("string"));
        Widget widget = widget_for(datatype);
        form.elements.emplace_back(Field{p, label(p), std::move(datatype), widget, decl.functional});
        continue;
      }

      Iri range = decl.range.value_or(vocab::thing());
      if (config_.inline_pairs.contains({cls, range})) {
        std::pair<Iri, Iri> step{cls, p};
        if (std::find(path.begin(), path.end(), step) == path.end()) {
          Path deeper = path;
          deeper.push_back(step);
          auto inner = std::make_shared<FormStructure>(build(range, deeper));
          form.elements.emplace_back(Section{p, label(p), range, std::move(inner)});
          continue;
        }
        warnings_.push_back({cls, p, path});
      }
      form.elements.emplace_back(Selector{p, label(p), range, !decl.functional, options_for(range)});
    }
    return form;
  }
};

void collect_properties(const FormStructure& form, std::set<Iri>& out) {
  for (const auto& e : form.elements) {
    out.insert(element_property(e));
    if (const auto* s = std::get_if<Section>(&e)) collect_properties(*s->form, out);
  }
}

}  // namespace

std::string_view to_string(Widget w) {
  switch (w) {
    case Widget::Text: return "text";
    case Widget::Number: return "number";
    case Widget::Checkbox: return "checkbox";
    case Widget::Date: return "date";
  }
  return "text";
}

Widget widget_for(const Iri& datatype) {
  static const std::set<std::string> numbers = {"integer", "int", "decimal", "float", "double",
                                                "nonNegativeInteger", "positiveInteger"};
  static const std::set<std::string> dates = {"date", "dateTime", "gYear"};
  if (!datatype.str().starts_with(vocab::kXsd)) return Widget::Text;
  std::string local = datatype.str().substr(vocab::kXsd.size());
  if (numbers.contains(local)) return Widget::Number;
  if (dates.contains(local)) return Widget::Date;
  if (local == "boolean") return Widget::Checkbox;
  return Widget::Text;
}

bool operator==(const Section& a, const Section& b) {
  if (a.property != b.property || a.label != b.label || a.range_class != b.range_class) return false;
  if (!a.form || !b.form) return a.form == b.form;
  return *a.form == *b.form;
}

const Iri& element_property(const FormElement& e) {
  return std::visit([](const auto& el) -> const Iri& { return el.property; }, e);
}

const FormElement* FormStructure::find(const Iri& property) const {
  for (const auto& e : elements) {
    if (element_property(e) == property) return &e;
  }
  return nullptr;
}

FormStructure generate_form(const OntologyModel& model, const Iri& main_class, const FormConfig& config) {
  model.require_class(main_class);
  return Generator(model, config).run(main_class);
}

std::set<Iri> diff_forms(const FormStructure& a, const FormStructure& b) {
  if (a.main_class != b.main_class) {
    throw MismatchedClassError("", "forms describe <" + a.main_class.str() + "> and <" +
                                       b.main_class.str() + ">");
  }
  std::set<Iri> pa, pb, out;
  for (const auto& e : a.elements) pa.insert(element_property(e));
  for (const auto& e : b.elements) pb.insert(element_property(e));
  std::set_symmetric_difference(pa.begin(), pa.end(), pb.begin(), pb.end(), std::inserter(out, out.end()));
  return out;
}

std::set<Iri> all_element_properties(const FormStructure& form) {
  std::set<Iri> out;
  collect_properties(form, out);
  return out;
}

}  // namespace ontoforms
