#include "ontoforms/json_io.hpp"

#include <algorithm>

namespace ontoforms {

namespace {

json option_json(const Option& o) { return {{"iri", o.iri.str()}, {"label", o.label}}; }

json element_json(const FormElement& element) {
  if (const auto* f = std::get_if<Field>(&element)) {
    return {{"kind", "field"},
            {"property", f->property.str()},
            {"label", f->label},
            {"datatype", f->datatype.str()},
            {"widget", std::string(to_string(f->widget))},
            {"functional", f->functional}};
  }
  if (const auto* s = std::get_if<Selector>(&element)) {
    json options = json::array();
    for (const auto& o : s->options) options.push_back(option_json(o));
    return {{"kind", "selector"},
            {"property", s->property.str()},
            {"label", s->label},
            {"rangeClass", s->range_class.str()},
            {"multiple", s->multiple},
            {"options", std::move(options)}};
  }
  const auto& sec = std::get<Section>(element);
  return {{"kind", "section"},
          {"property", sec.property.str()},
          {"label", sec.label},
          {"rangeClass", sec.range_class.str()},
          {"form", to_json(*sec.form)}};
}

[[noreturn]] void shape_error(const std::string& where, const std::string& what) {
  throw ValidationError("", where + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) shape_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) shape_error(where, std::string("missing \"") + key + "\"");
  return *it;
}

std::string string_member(const json& j, const char* key, const std::string& where) {
  const json& v = member(j, key, where);
  if (!v.is_string()) shape_error(where, std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

Iri iri_value(const json& v, const std::string& where) {
  if (!v.is_string() || v.get<std::string>().empty()) shape_error(where, "expected an IRI string");
  return Iri(v.get<std::string>());
}

const json* optional_array(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return nullptr;
  if (!it->is_array()) shape_error(where, std::string("\"") + key + "\" must be an array");
  return &*it;
}

Submission submission_at(const json& j, const std::string& where) {
  Submission s;
  s.chosen_class = iri_value(member(j, "chosenClass", where), where + ".chosenClass");
  if (auto it = j.find("displayLabel"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) shape_error(where, "\"displayLabel\" must be a string");
    s.display_label = it->get<std::string>();
  }
  const json* values = optional_array(j, "values", where);
  if (!values) return s;
  for (std::size_t i = 0; i < values->size(); ++i) {
    const json& v = (*values)[i];
    const std::string at = where + ".values[" + std::to_string(i) + "]";
    ValueEntry entry;
    entry.property = iri_value(member(v, "property", at), at + ".property");
    if (const json* lits = optional_array(v, "literals", at)) {
      for (const auto& l : *lits) {
        Literal lit;
        if (l.is_string()) {
          lit.lexical = l.get<std::string>();
        } else {
          lit.lexical = string_member(l, "value", at + ".literals");
          if (auto dt = l.find("datatype"); dt != l.end() && !dt->is_null()) {
            lit.datatype = iri_value(*dt, at + ".literals.datatype");
          }
          if (auto lang = l.find("language"); lang != l.end() && !lang->is_null()) {
            if (lit.datatype) shape_error(at, "literal cannot carry both datatype and language");
            lit.language = lang->get<std::string>();
          }
        }
        entry.literals.push_back(std::move(lit));
      }
    }
    if (const json* inds = optional_array(v, "individuals", at)) {
      for (const auto& ind : *inds) entry.individuals.push_back(iri_value(ind, at + ".individuals"));
    }
    if (const json* creations = optional_array(v, "creations", at)) {
      for (std::size_t k = 0; k < creations->size(); ++k) {
        entry.creations.push_back(submission_at((*creations)[k], at + ".creations[" + std::to_string(k) + "]"));
      }
    }
    s.values.push_back(std::move(entry));
  }
  return s;
}

json tree_node(const OntologyModel& model, const std::map<Iri, std::vector<Iri>>& children, const Iri& iri,
               std::vector<Iri>& path) {
  json node = {{"iri", iri.str()}, {"label", label_of(model, iri)}, {"children", json::array()}};
  path.push_back(iri);
  if (auto it = children.find(iri); it != children.end()) {
    for (const auto& child : it->second) {
      if (std::find(path.begin(), path.end(), child) != path.end()) continue;
      node["children"].push_back(tree_node(model, children, child, path));
    }
  }
  path.pop_back();
  return node;
}

std::map<Iri, std::vector<Iri>> child_index(const OntologyModel& model) {
  std::map<Iri, std::vector<Iri>> children;
  for (const auto& [iri, decl] : model.classes) {
    if (decl.direct_supers.empty()) children[vocab::thing()].push_back(iri);
    for (const auto& s : decl.direct_supers) children[s].push_back(iri);
    for (const auto& e : decl.equivalents) children[e].push_back(iri);
  }
  for (auto& [_, list] : children) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return children;
}

void mark_reached(const json& node, std::set<std::string>& reached) {
  reached.insert(node["iri"].get<std::string>());
  for (const auto& c : node["children"]) mark_reached(c, reached);
}

}  // namespace

json to_json(const FormStructure& form) {
  json subclass_options = json::array();
  for (const auto& o : form.subclass_options) subclass_options.push_back(option_json(o));
  json elements = json::array();
  for (const auto& e : form.elements) elements.push_back(element_json(e));
  json out = {{"mainClass", form.main_class.str()},
              {"label", form.label},
              {"subclassOptions", std::move(subclass_options)},
              {"elements", std::move(elements)}};
  if (!form.warnings.empty()) {
    json warnings = json::array();
    for (const auto& w : form.warnings) {
      json path = json::array();
      for (const auto& [cls, prop] : w.path) path.push_back({{"contextClass", cls.str()}, {"property", prop.str()}});
      warnings.push_back({{"kind", "cycleDegraded"},
                          {"contextClass", w.context_class.str()},
                          {"property", w.property.str()},
                          {"path", std::move(path)}});
    }
    out["warnings"] = std::move(warnings);
  }
  return out;
}

json to_json(const Submission& s) {
  json out = {{"chosenClass", s.chosen_class.str()}};
  if (s.display_label) out["displayLabel"] = *s.display_label;
  json values = json::array();
  for (const auto& v : s.values) {
    json entry = {{"property", v.property.str()}};
    if (!v.literals.empty()) {
      json lits = json::array();
      for (const auto& l : v.literals) {
        json lit = {{"value", l.lexical}};
        if (l.datatype) lit["datatype"] = l.datatype->str();
        if (l.language) lit["language"] = *l.language;
        lits.push_back(std::move(lit));
      }
      entry["literals"] = std::move(lits);
    }
    if (!v.individuals.empty()) {
      json inds = json::array();
      for (const auto& i : v.individuals) inds.push_back(i.str());
      entry["individuals"] = std::move(inds);
    }
    if (!v.creations.empty()) {
      json creations = json::array();
      for (const auto& c : v.creations) creations.push_back(to_json(c));
      entry["creations"] = std::move(creations);
    }
    values.push_back(std::move(entry));
  }
  out["values"] = std::move(values);
  return out;
}

json to_json(const PopulationResult& r) {
  json minted = json::array();
  for (const auto& m : r.minted) minted.push_back({{"iri", m.iri.str()}, {"class", m.cls.str()}});
  return {{"rootIri", r.root_iri.str()},
          {"minted", std::move(minted)},
          {"added", r.added_triples.size()},
          {"removed", r.removed_triples.size()}};
}

json to_json(const FormConfig& c) {
  json hidden = json::array();
  for (const auto& h : c.hidden_properties) hidden.push_back(h.str());
  json pairs = json::array();
  for (const auto& [ctx, range] : c.inline_pairs) pairs.push_back({{"contextClass", ctx.str()}, {"rangeClass", range.str()}});
  json overrides = json::object();
  for (const auto& [iri, label] : c.label_overrides) overrides[iri.str()] = label;
  return {{"hiddenProperties", std::move(hidden)}, {"inlinePairs", std::move(pairs)}, {"labelOverrides", std::move(overrides)}};
}

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports a byte offset; count lines for a useful position.
    std::size_t offset = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(line, column, "invalid JSON");
  }
}

Submission submission_from_json(const json& j) { return submission_at(j, "submission"); }

FormConfig config_from_json(const json& j) {
  FormConfig c;
  if (!j.is_object()) shape_error("config", "expected an object");
  if (const json* hidden = optional_array(j, "hiddenProperties", "config")) {
    for (const auto& h : *hidden) c.hidden_properties.insert(iri_value(h, "config.hiddenProperties"));
  }
  if (const json* pairs = optional_array(j, "inlinePairs", "config")) {
    for (const auto& p : *pairs) {
      c.inline_pairs.emplace(iri_value(member(p, "contextClass", "config.inlinePairs"), "config.inlinePairs"),
                             iri_value(member(p, "rangeClass", "config.inlinePairs"), "config.inlinePairs"));
    }
  }
  if (auto it = j.find("labelOverrides"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) shape_error("config", "\"labelOverrides\" must be an object");
    for (const auto& [key, value] : it->items()) {
      if (!value.is_string()) shape_error("config.labelOverrides", "labels must be strings");
      c.label_overrides[Iri(key)] = value.get<std::string>();
    }
  }
  return c;
}

json class_tree(const OntologyModel& model, const Iri& root) {
  model.require_class(root);
  auto children = child_index(model);
  std::vector<Iri> path;
  json tree = tree_node(model, children, root, path);
  if (root != vocab::thing()) return tree;

  // Classes only reachable through a subclass cycle hang directly under
  // Thing so that the tree lists every class.
  std::set<std::string> reached;
  mark_reached(tree, reached);
  for (const auto& [iri, _] : model.classes) {
    if (reached.contains(iri.str())) continue;
    path.assign({vocab::thing()});
    json sub = tree_node(model, children, iri, path);
    mark_reached(sub, reached);
    tree["children"].push_back(std::move(sub));
  }
  return tree;
}

json ontology_detail(const OntologyModel& model) {
  json properties = json::array();
  for (const auto& [iri, decl] : model.properties) {
    properties.push_back({{"iri", iri.str()},
                          {"domain", render_domain(model, decl.domain)},
                          {"label", label_of(model, iri)},
                          {"range", decl.range ? label_of(model, *decl.range) : "<undefined>"},
                          {"type", decl.kind == PropertyKind::Object ? "Object Prop" : "Data Prop"},
                          {"functional", decl.functional}});
  }
  json individuals = json::array();
  for (const auto& ind : individuals_of(model, vocab::thing())) {
    individuals.push_back({{"label", ind.label}, {"uri", ind.iri.str()}});
  }
  json warnings = json::array();
  for (const auto& w : model.warnings) warnings.push_back(w);
  return {{"iri", model.iri.str()},
          {"classes", class_tree(model, vocab::thing())},
          {"properties", std::move(properties)},
          {"individuals", std::move(individuals)},
          {"warnings", std::move(warnings)}};
}

}  // namespace ontoforms
