#include "ontoforms/population.hpp"

#include <algorithm>
#include <functional>
#include <regex>

namespace ontoforms {

namespace {

const Term& type_term() {
  static const Term t(vocab::type());
  return t;
}

const Term& marker_term() {
  static const Term t(vocab::created_as_intermediate());
  return t;
}

const Term& true_term() {
  static const Term t(Literal{"true", vocab::xsd("boolean"), std::nullopt});
  return t;
}

bool is_plain_datatype(const Iri& datatype) {
  return datatype == vocab::xsd("string") || datatype == vocab::rdfs("Literal") ||
         datatype == vocab::rdf("PlainLiteral");
}

Term make_literal(const Iri& field_datatype, const Literal& submitted) {
  if (is_plain_datatype(field_datatype)) {
    if (field_datatype == vocab::rdfs("Literal") && submitted.datatype &&
        !is_plain_datatype(*submitted.datatype)) {
      return Term(Literal{submitted.lexical, submitted.datatype, std::nullopt});
    }
    return Term(Literal{submitted.lexical, std::nullopt, submitted.language});
  }
  return Term(Literal{submitted.lexical, field_datatype, std::nullopt});
}

bool is_intermediate(const Graph& g, const Term& t) {
  return t.is_iri() && g.contains(Triple(t, marker_term(), true_term()));
}

std::optional<Iri> functional_property(const OntologyModel& model, const Iri& p) {
  auto it = model.properties.find(p);
  if (it != model.properties.end() && it->second.functional) return p;
  return std::nullopt;
}

bool in_options(const std::vector<Option>& options, const Iri& iri) {
  return std::any_of(options.begin(), options.end(), [&](const Option& o) { return o.iri == iri; });
}

bool is_individual_of(const OntologyModel& model, const Iri& ind, const Iri& cls) {
  auto it = model.individuals.find(ind);
  if (it == model.individuals.end()) return false;
  if (cls == vocab::thing()) return true;
  return std::any_of(it->second.types.begin(), it->second.types.end(),
                     [&](const Iri& t) { return subsumers(model, t).contains(cls); });
}

void validate_entry(const OntologyModel& model, const FormElement& element, const ValueEntry& entry) {
  const Iri& p = entry.property;
  if (const auto* field = std::get_if<Field>(&element)) {
    if (!entry.individuals.empty() || !entry.creations.empty()) {
      throw ValidationError(p.str(), "data property accepts literal values only");
    }
    for (const auto& lit : entry.literals) {
      if (lit.datatype && *lit.datatype != field->datatype && !is_plain_datatype(field->datatype)) {
        throw ValidationError(p.str(), "literal datatype <" + lit.datatype->str() + "> does not match <" +
                                           field->datatype.str() + ">");
      }
      if (!valid_lexical_form(field->datatype, lit.lexical)) {
        throw ValidationError(p.str(), "'" + lit.lexical + "' is not a valid <" + field->datatype.str() + ">");
      }
    }
  } else if (const auto* selector = std::get_if<Selector>(&element)) {
    if (!entry.literals.empty()) throw ValidationError(p.str(), "object property does not accept literals");
    if (!entry.creations.empty()) {
      throw ValidationError(p.str(), "property is rendered as a selector; new individuals cannot be created");
    }
    for (const auto& ind : entry.individuals) {
      if (!in_options(selector->options, ind)) {
        throw ValidationError(p.str(), "<" + ind.str() + "> is not an individual of <" +
                                           selector->range_class.str() + ">");
      }
    }
  } else {
    const auto& section = std::get<Section>(element);
    if (!entry.literals.empty()) throw ValidationError(p.str(), "object property does not accept literals");
    for (const auto& ind : entry.individuals) {
      if (!is_individual_of(model, ind, section.range_class)) {
        throw ValidationError(p.str(), "<" + ind.str() + "> is not an individual of <" +
                                           section.range_class.str() + ">");
      }
    }
    for (const auto& creation : entry.creations) validate_submission(model, *section.form, creation);
  }
  if (entry.value_count() > 1 && functional_property(model, p)) {
    throw ValidationError(p.str(), "functional property admits at most one value");
  }
}

/// Gives every literal the datatype its field will store it with, so that
/// user input and prefilled content compare equal.
Submission normalize(const FormStructure& form, Submission s) {
  for (auto& entry : s.values) {
    const FormElement* element = form.find(entry.property);
    if (!element) continue;
    if (const auto* field = std::get_if<Field>(element)) {
      for (auto& lit : entry.literals) {
        Term stored = make_literal(field->datatype, lit);
        lit = Literal{stored.literal().lexical, stored.literal().datatype.value_or(vocab::xsd("string")),
                      std::nullopt};
        if (stored.literal().language) {
          lit.datatype.reset();
          lit.language = stored.literal().language;
        }
      }
    } else if (const auto* section = std::get_if<Section>(element)) {
      for (auto& c : entry.creations) c = normalize(*section->form, std::move(c));
    }
  }
  return canonicalize(std::move(s));
}

/// Accumulates the triples of one populate or update call.
class Writer {
public:
  Writer(const OntologyModel& model, PopulationResult& result) : model_(model), result_(result) {}

  Iri emit(const FormStructure& form, const Submission& s, bool intermediate) {
    Iri iri = mint_iri(model_, s.chosen_class, s.display_label, reserved_);
    reserved_.insert(iri);
    result_.minted.push_back({iri, s.chosen_class});
    const Term subject(iri);
    add(Triple(subject, type_term(), Term(s.chosen_class)));
    if (intermediate) add(Triple(subject, marker_term(), true_term()));
    if (s.display_label) add(Triple(subject, Term(vocab::label()), Term(Literal{*s.display_label, {}, {}})));
    for (const auto& entry : s.values) emit_values(form, subject, entry, {});
    return iri;
  }

  /// Adds the triples of `entry` for `subject`; links already present in
  /// `keep` are not re-added.
  void emit_values(const FormStructure& form, const Term& subject, const ValueEntry& entry,
                   const std::set<Term>& keep) {
    const FormElement& element = *form.find(entry.property);
    const Term predicate(entry.property);
    if (const auto* field = std::get_if<Field>(&element)) {
      for (const auto& lit : entry.literals) add(Triple(subject, predicate, make_literal(field->datatype, lit)));
      return;
    }
    for (const auto& ind : entry.individuals) {
      if (!keep.contains(Term(ind))) add(Triple(subject, predicate, Term(ind)));
    }
    if (const auto* section = std::get_if<Section>(&element)) {
      for (const auto& c : entry.creations) {
        add(Triple(subject, predicate, Term(emit(*section->form, c, true))));
      }
    }
  }

  void add(Triple t) { result_.added_triples.insert(std::move(t)); }

private:
  const OntologyModel& model_;
  PopulationResult& result_;
  std::set<Iri> reserved_;
};

// Textual rendering of an already canonical submission, used as a sort key.
std::string fingerprint(const Submission& s) {
  std::string out = "{" + s.chosen_class.str() + "|" + (s.display_label ? "L" + *s.display_label : "-");
  for (const auto& v : s.values) {
    out += "|" + v.property.str() + "[";
    for (const auto& l : v.literals) out += Term(l).ntriples() + ",";
    for (const auto& i : v.individuals) out += "<" + i.str() + ">,";
    for (const auto& c : v.creations) out += fingerprint(c) + ",";
    out += "]";
  }
  return out + "}";
}

std::vector<Iri> sorted_unique(std::vector<Iri> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Submission prefill_impl(const OntologyModel& model, const FormStructure& form, const Iri& individual,
                        std::set<Iri>& visiting) {
  auto it = model.individuals.find(individual);
  if (it == model.individuals.end()) throw UnknownIndividualError(individual.str());
  const auto& types = it->second.types;

  Submission out;
  if (std::find(types.begin(), types.end(), form.main_class) != types.end()) {
    out.chosen_class = form.main_class;
  } else {
    for (const auto& t : types) {
      if (subsumers(model, t).contains(form.main_class)) {
        out.chosen_class = t;
        break;
      }
    }
  }
  if (out.chosen_class.empty()) {
    throw TypeMismatchError("", "<" + individual.str() + "> is not an individual of <" +
                                    form.main_class.str() + ">");
  }

  const Graph& g = model.source;
  const Term subject(individual);
  auto labels = g.objects(subject, vocab::label());
  if (labels.size() == 1 && labels.front().is_literal() && !labels.front().literal().language &&
      !labels.front().literal().datatype) {
    out.display_label = labels.front().literal().lexical;
  }

  visiting.insert(individual);
  for (const auto& element : form.elements) {
    const Iri& p = element_property(element);
    auto objects = g.objects(subject, p);
    if (objects.empty()) continue;
    ValueEntry entry;
    entry.property = p;
    if (const auto* field = std::get_if<Field>(&element)) {
      for (const auto& o : objects) {
        if (!o.is_literal()) continue;
        Literal lit = o.literal();
        if (!lit.datatype && !lit.language) lit.datatype = field->datatype;
        entry.literals.push_back(std::move(lit));
      }
    } else {
      const auto* section = std::get_if<Section>(&element);
      for (const auto& o : objects) {
        if (!o.is_iri()) continue;
        if (section && is_intermediate(g, o) && !visiting.contains(o.iri()) &&
            is_individual_of(model, o.iri(), section->range_class)) {
          entry.creations.push_back(prefill_impl(model, *section->form, o.iri(), visiting));
        } else {
          entry.individuals.push_back(o.iri());
        }
      }
    }
    if (entry.value_count() > 0) out.values.push_back(std::move(entry));
  }
  visiting.erase(individual);
  return out;
}

}  // namespace

const ValueEntry* Submission::find(const Iri& property) const {
  for (const auto& v : values) {
    if (v.property == property) return &v;
  }
  return nullptr;
}

Graph PopulationResult::apply_to(const Graph& graph) const {
  Graph out = graph;
  for (const auto& t : removed_triples) out.erase(t);
  for (const auto& t : added_triples) out.insert(t);
  return out;
}

Submission canonicalize(Submission s) {
  for (auto& entry : s.values) {
    std::sort(entry.literals.begin(), entry.literals.end());
    entry.individuals = sorted_unique(std::move(entry.individuals));
    for (auto& c : entry.creations) c = canonicalize(std::move(c));
    std::sort(entry.creations.begin(), entry.creations.end(),
              [](const Submission& a, const Submission& b) { return fingerprint(a) < fingerprint(b); });
  }
  std::sort(s.values.begin(), s.values.end(),
            [](const ValueEntry& a, const ValueEntry& b) { return a.property < b.property; });
  return s;
}

void validate_submission(const OntologyModel& model, const FormStructure& form, const Submission& s) {
  bool legal = s.chosen_class == form.main_class ||
               std::any_of(form.subclass_options.begin(), form.subclass_options.end(),
                           [&](const Option& o) { return o.iri == s.chosen_class; });
  if (!legal) {
    throw ValidationError("", "<" + s.chosen_class.str() + "> is not a legal class for a <" +
                                  form.main_class.str() + "> form");
  }
  std::set<Iri> seen;
  for (const auto& entry : s.values) {
    if (!seen.insert(entry.property).second) {
      throw ValidationError(entry.property.str(), "property listed more than once");
    }
    const FormElement* element = form.find(entry.property);
    if (!element) throw ValidationError(entry.property.str(), "property is not part of the form");
    validate_entry(model, *element, entry);
  }
}

PopulationResult populate(const OntologyModel& model, const FormStructure& form, const Submission& submission) {
  validate_submission(model, form, submission);
  PopulationResult result;
  Writer writer(model, result);
  result.root_iri = writer.emit(form, submission, false);
  return result;
}

Submission prefill(const OntologyModel& model, const FormStructure& form, const Iri& individual) {
  std::set<Iri> visiting;
  return prefill_impl(model, form, individual, visiting);
}

PopulationResult update(const OntologyModel& model, const FormStructure& form, const Iri& individual,
                        const Submission& submission) {
  auto it = model.individuals.find(individual);
  if (it == model.individuals.end()) throw UnknownIndividualError(individual.str());
  const auto& types = it->second.types;
  if (std::find(types.begin(), types.end(), submission.chosen_class) == types.end()) {
    throw TypeMismatchError("", "<" + individual.str() + "> cannot be retyped to <" +
                                    submission.chosen_class.str() + ">");
  }
  validate_submission(model, form, submission);

  const Graph& g = model.source;
  PopulationResult result;
  result.root_iri = individual;
  Writer writer(model, result);
  const Term subject(individual);

  auto still_present = [&](const Triple& t) { return g.contains(t) && !result.removed_triples.contains(t); };

  // Retracts an intermediate reached through `link` together with every
  // intermediate it owns.
  std::function<void(const Term&, const Triple&)> retract = [&](const Term& node, const Triple& link) {
    for (const auto& ref : g.with_object(node)) {
      if (ref != link && still_present(ref)) {
        throw OrphanRetractionConflict(link.predicate.iri().str(),
                                       "intermediate " + node.ntriples() + " is also referenced by " +
                                           ref.subject.ntriples());
      }
    }
    for (const auto& t : g.with_subject(node)) {
      if (!still_present(t)) continue;
      result.removed_triples.insert(t);
      if (t.object != node && is_intermediate(g, t.object)) retract(t.object, t);
    }
  };

  if (submission.display_label) {
    const Term wanted(Literal{*submission.display_label, {}, {}});
    for (const auto& o : g.objects(subject, vocab::label())) {
      if (o != wanted) result.removed_triples.insert(Triple(subject, Term(vocab::label()), o));
    }
    writer.add(Triple(subject, Term(vocab::label()), wanted));
  }

  for (const auto& entry : submission.values) {
    const FormElement& element = *form.find(entry.property);
    const Term predicate(entry.property);
    const auto existing = g.objects(subject, entry.property);

    if (const auto* field = std::get_if<Field>(&element)) {
      std::set<Term> wanted;
      for (const auto& lit : entry.literals) wanted.insert(make_literal(field->datatype, lit));
      for (const auto& o : existing) {
        if (!wanted.contains(o)) result.removed_triples.insert(Triple(subject, predicate, o));
      }
      for (const auto& w : wanted) writer.add(Triple(subject, predicate, w));
      continue;
    }

    std::set<Term> keep;
    for (const auto& ind : entry.individuals) keep.insert(Term(ind));

    ValueEntry fresh = entry;
    fresh.creations.clear();
    if (const auto* section = std::get_if<Section>(&element)) {
      std::vector<std::pair<Term, Submission>> candidates;
      for (const auto& o : existing) {
        if (is_intermediate(g, o) && !keep.contains(o) && is_individual_of(model, o.iri(), section->range_class)) {
          candidates.emplace_back(o, normalize(*section->form, prefill(model, *section->form, o.iri())));
        }
      }
      for (const auto& creation : entry.creations) {
        Submission wanted = normalize(*section->form, creation);
        auto match = std::find_if(candidates.begin(), candidates.end(),
                                  [&](const auto& c) { return c.second == wanted; });
        if (match != candidates.end()) {
          keep.insert(match->first);
          candidates.erase(match);
        } else {
          fresh.creations.push_back(creation);
        }
      }
    }

    for (const auto& o : existing) {
      if (keep.contains(o)) continue;
      Triple link(subject, predicate, o);
      result.removed_triples.insert(link);
      if (is_intermediate(g, o)) retract(o, link);
    }
    std::set<Term> present(existing.begin(), existing.end());
    writer.emit_values(form, subject, fresh, present);
  }

  // Triples both retracted and re-asserted cancel out.
  std::vector<Triple> cancelled;
  for (const auto& t : result.added_triples) {
    if (result.removed_triples.erase(t) || g.contains(t)) cancelled.push_back(t);
  }
  for (const auto& t : cancelled) result.added_triples.erase(t);
  return result;
}

std::string sanitize_local_name(std::string_view text) {
  std::string out(text);
  for (auto& c : out) {
    unsigned char u = static_cast<unsigned char>(c);
    bool keep = (u >= 'A' && u <= 'Z') || (u >= 'a' && u <= 'z') || (u >= '0' && u <= '9') || u == '_';
    if (!keep) c = '_';
  }
  return out;
}

Iri mint_iri(const OntologyModel& model, const Iri& cls, const std::optional<std::string>& display_label,
             const std::set<Iri>& reserved) {
  model.require_class(cls);
  std::string stem = sanitize_local_name(display_label && !display_label->empty()
                                             ? std::string_view(*display_label)
                                             : cls.local_name());
  if (stem.empty()) stem = "individual";
  const std::string ns = model.individual_namespace(cls);
  const Graph& g = model.source;
  for (std::size_t n = 1;; ++n) {
    Iri candidate(ns + stem + "_" + std::to_string(n));
    if (reserved.contains(candidate)) continue;
    const Term t(candidate);
    if (!g.with_subject(t).empty() || !g.with_object(t).empty()) continue;
    return candidate;
  }
}

bool valid_lexical_form(const Iri& datatype, std::string_view lexical) {
  if (!datatype.str().starts_with(vocab::kXsd)) return true;
  const std::string local = datatype.str().substr(vocab::kXsd.size());
  const std::string s(lexical);

  static const std::regex integer(R"([+-]?[0-9]+)");
  static const std::regex unsigned_integer(R"(\+?[0-9]+)");
  static const std::regex decimal(R"([+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+))");
  static const std::regex floating(R"([+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)([eE][+-]?[0-9]+)?|[+-]?INF|NaN)");
  static const std::regex date(R"(-?([0-9]{4,})-([0-9]{2})-([0-9]{2})(Z|[+-][0-9]{2}:[0-9]{2})?)");
  static const std::regex date_time(
      R"(-?([0-9]{4,})-([0-9]{2})-([0-9]{2})T([0-9]{2}):([0-9]{2}):([0-9]{2})(\.[0-9]+)?(Z|[+-][0-9]{2}:[0-9]{2})?)");
  static const std::regex year(R"(-?[0-9]{4,}(Z|[+-][0-9]{2}:[0-9]{2})?)");

  auto valid_day = [](const std::smatch& m) {
    long y = std::stol(m[1].str());
    int mo = std::stoi(m[2].str());
    int d = std::stoi(m[3].str());
    if (mo < 1 || mo > 12 || d < 1) return false;
    static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    return d <= days[mo - 1] + (mo == 2 && leap ? 1 : 0);
  };

  std::smatch m;
  if (local == "integer" || local == "int" || local == "long" || local == "short" || local == "byte") {
    return std::regex_match(s, integer);
  }
  if (local == "nonNegativeInteger") return std::regex_match(s, unsigned_integer);
  if (local == "positiveInteger") {
    return std::regex_match(s, unsigned_integer) && s.find_first_of("123456789") != std::string::npos;
  }
  if (local == "decimal") return std::regex_match(s, decimal);
  if (local == "float" || local == "double") return std::regex_match(s, floating);
  if (local == "boolean") return s == "true" || s == "false";
  if (local == "date") return std::regex_match(s, m, date) && valid_day(m);
  if (local == "dateTime") {
    if (!std::regex_match(s, m, date_time) || !valid_day(m)) return false;
    int h = std::stoi(m[4].str()), mi = std::stoi(m[5].str()), sec = std::stoi(m[6].str());
    return (h < 24 && mi < 60 && sec < 60) || (h == 24 && mi == 0 && sec == 0);
  }
  if (local == "gYear") return std::regex_match(s, year);
  return true;
}

}  // namespace ontoforms
