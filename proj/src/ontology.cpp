#include "ontoforms/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace ontoforms {

namespace {

bool is_english_or_plain(const Literal& lit) {
  if (lit.datatype && *lit.datatype != vocab::xsd("string")) return false;
  if (!lit.language) return true;
  std::string lang = *lit.language;
  std::transform(lang.begin(), lang.end(), lang.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lang == "en" || lang.starts_with("en-");
}

std::optional<std::string> preferred_label(const Graph& graph, const Iri& entity) {
  std::optional<std::string> english;
  for (const auto& obj : graph.objects(Term(entity), vocab::label())) {
    if (!obj.is_literal() || !is_english_or_plain(obj.literal())) continue;
    if (!obj.literal().language) return obj.literal().lexical;
    if (!english) english = obj.literal().lexical;
  }
  return english;
}

bool typed_as(const Graph& g, const Term& subject, const Iri& type) {
  return g.contains(Triple(subject, Term(vocab::type()), Term(type)));
}

class Extractor {
public:
  explicit Extractor(const Graph& g) : g_(g) { model_.source = g; }

  OntologyModel run() {
    find_ontology_iri();
    collect_classes();
    collect_properties();
    collect_individuals();
    return std::move(model_);
  }

private:
  const Graph& g_;
  OntologyModel model_;

  void warn(std::string message) { model_.warnings.push_back(std::move(message)); }

  void find_ontology_iri() {
    for (const auto& s : g_.subjects(vocab::type(), Term(vocab::owl("Ontology")))) {
      if (s.is_iri()) {
        model_.iri = s.iri();
        return;
      }
    }
  }

  bool is_vocabulary_class(const Iri& iri) const {
    return iri == vocab::thing() || iri == vocab::owl("Nothing") || is_datatype_iri(iri);
  }

  ClassDecl& ensure_class(const Iri& iri) {
    auto it = model_.classes.find(iri);
    if (it == model_.classes.end()) {
      it = model_.classes.emplace(iri, ClassDecl{iri, preferred_label(g_, iri), {}, {}}).first;
    }
    return it->second;
  }

  void collect_classes() {
    for (const auto& kind : {vocab::owl("Class"), vocab::rdfs("Class")}) {
      for (const auto& s : g_.subjects(vocab::type(), Term(kind))) {
        if (s.is_iri() && !is_vocabulary_class(s.iri())) ensure_class(s.iri());
      }
    }

    const Term sub_class_of(vocab::rdfs("subClassOf"));
    const Term equivalent(vocab::owl("equivalentClass"));
    for (const auto& t : g_) {
      if (t.predicate == sub_class_of) {
        if (!t.subject.is_iri() || is_vocabulary_class(t.subject.iri())) continue;
        auto& decl = ensure_class(t.subject.iri());
        if (!t.object.is_iri()) continue;  // restrictions do not contribute supers
        const Iri& super = t.object.iri();
        if (is_vocabulary_class(super) || super == decl.iri) continue;
        ensure_class(super);
        if (std::find(decl.direct_supers.begin(), decl.direct_supers.end(), super) ==
            decl.direct_supers.end()) {
          decl.direct_supers.push_back(super);
        }
      } else if (t.predicate == equivalent) {
        if (!t.subject.is_iri()) continue;
        if (!t.object.is_iri()) {
          warn("ignored complex equivalent-class expression on <" + t.subject.iri().str() + ">");
          continue;
        }
        const Iri& a = t.subject.iri();
        const Iri& b = t.object.iri();
        if (a == b || is_vocabulary_class(a) || is_vocabulary_class(b)) continue;
        auto add = [](ClassDecl& d, const Iri& other) {
          if (std::find(d.equivalents.begin(), d.equivalents.end(), other) == d.equivalents.end()) {
            d.equivalents.push_back(other);
          }
        };
        add(ensure_class(a), b);
        add(ensure_class(b), a);
      }
    }
  }

  DomainExpr decode_class_expr(const Term& t, const Iri& property) {
    if (t.is_iri()) {
      if (t.iri() == vocab::thing()) return DomainExpr::thing();
      if (!model_.classes.contains(t.iri())) {
        warn("domain class <" + t.iri().str() + "> of <" + property.str() + "> is not declared");
        ensure_class(t.iri());
      }
      return DomainExpr::of(t.iri());
    }
    if (t.is_blank()) {
      for (const auto& [op, is_union] : {std::pair{vocab::owl("unionOf"), true},
                                         std::pair{vocab::owl("intersectionOf"), false}}) {
        auto lists = g_.objects(t, op);
        if (lists.empty()) continue;
        std::vector<DomainExpr> members;
        for (const auto& item : read_list(g_, lists.front())) {
          members.push_back(decode_class_expr(item, property));
        }
        if (members.size() == 1) return std::move(members.front());
        if (members.empty()) break;
        return is_union ? DomainExpr::union_of(std::move(members))
                        : DomainExpr::intersection_of(std::move(members));
      }
    }
    warn("unsupported domain expression on <" + property.str() + ">; treated as unspecified");
    return DomainExpr::unspecified();
  }

  void collect_properties() {
    static const std::vector<Iri> object_types = {
        vocab::owl("ObjectProperty"), vocab::owl("TransitiveProperty"),
        vocab::owl("SymmetricProperty"), vocab::owl("InverseFunctionalProperty"),
        vocab::owl("AsymmetricProperty"), vocab::owl("ReflexiveProperty"),
        vocab::owl("IrreflexiveProperty")};

    std::set<Iri> object_props;
    std::set<Iri> data_props;
    for (const auto& ty : object_types) {
      for (const auto& s : g_.subjects(vocab::type(), Term(ty))) {
        if (s.is_iri()) object_props.insert(s.iri());
      }
    }
    for (const auto& s : g_.subjects(vocab::type(), Term(vocab::owl("DatatypeProperty")))) {
      if (s.is_iri()) data_props.insert(s.iri());
    }
    for (const auto& iri : data_props) {
      if (object_props.contains(iri)) {
        throw ModelError("property <" + iri.str() + "> is typed both object and datatype property");
      }
    }

    auto add = [&](const Iri& iri, PropertyKind kind) {
      PropertyDecl decl;
      decl.iri = iri;
      decl.kind = kind;
      decl.functional = typed_as(g_, Term(iri), vocab::owl("FunctionalProperty"));
      decl.label = preferred_label(g_, iri);

      std::vector<Term> domains = g_.objects(Term(iri), vocab::rdfs("domain"));
      if (domains.size() == 1) {
        decl.domain = decode_class_expr(domains.front(), iri);
      } else if (domains.size() > 1) {
        std::vector<DomainExpr> members;
        for (const auto& d : domains) members.push_back(decode_class_expr(d, iri));
        decl.domain = DomainExpr::intersection_of(std::move(members));
      }

      for (const auto& r : g_.objects(Term(iri), vocab::rdfs("range"))) {
        if (!r.is_iri()) {
          warn("ignored anonymous range expression on <" + iri.str() + ">");
          continue;
        }
        if (decl.range) {
          warn("extra range <" + r.iri().str() + "> on <" + iri.str() + "> ignored");
          continue;
        }
        if (kind == PropertyKind::Object) {
          if (is_datatype_iri(r.iri())) {
            warn("object property <" + iri.str() + "> has datatype range; ignored");
            continue;
          }
          if (r.iri() != vocab::thing() && !model_.classes.contains(r.iri())) {
            warn("range class <" + r.iri().str() + "> of <" + iri.str() + "> is not declared");
            ensure_class(r.iri());
          }
        }
        decl.range = r.iri();
      }
      model_.properties.emplace(iri, std::move(decl));
    };
    for (const auto& iri : object_props) add(iri, PropertyKind::Object);
    for (const auto& iri : data_props) add(iri, PropertyKind::Data);
  }

  void collect_individuals() {
    const Term type(vocab::type());
    for (const auto& t : g_) {
      if (t.predicate != type || !t.subject.is_iri() || !t.object.is_iri()) continue;
      const Iri& subject = t.subject.iri();
      const Iri& cls = t.object.iri();
      if (!model_.classes.contains(cls) && cls != vocab::thing()) continue;
      if (model_.classes.contains(subject) || model_.properties.contains(subject)) continue;
      auto it = model_.individuals.find(subject);
      if (it == model_.individuals.end()) {
        it = model_.individuals
                 .emplace(subject, IndividualDecl{subject, {}, preferred_label(g_, subject)})
                 .first;
      }
      it->second.types.push_back(cls);
    }
  }

public:
  static std::map<Iri, std::set<Iri>> closure_of(const OntologyModel& model_) {
    std::map<Iri, std::set<Iri>> closure;
    std::map<Iri, std::vector<Iri>> edges;
    for (const auto& [iri, decl] : model_.classes) {
      auto& out = edges[iri];
      out.insert(out.end(), decl.direct_supers.begin(), decl.direct_supers.end());
      out.insert(out.end(), decl.equivalents.begin(), decl.equivalents.end());
    }
    for (const auto& [iri, _] : model_.classes) {
      std::set<Iri> seen{iri, vocab::thing()};
      std::deque<Iri> queue{iri};
      while (!queue.empty()) {
        Iri current = queue.front();
        queue.pop_front();
        auto it = edges.find(current);
        if (it == edges.end()) continue;
        for (const auto& next : it->second) {
          if (seen.insert(next).second) queue.push_back(next);
        }
      }
      closure.emplace(iri, std::move(seen));
    }
    return closure;
  }
};

bool directly_matches(const OntologyModel& model, const DomainExpr& d, const Iri& cls,
                      const std::set<Iri>& cls_subsumers) {
  switch (d.kind) {
    case DomainExpr::Kind::Named:
      if (d.named == cls) return true;
      // An equivalent class is not a strict superclass.
      return cls_subsumers.contains(d.named) && subsumers(model, d.named).contains(cls);
    case DomainExpr::Kind::UnionOf:
      return std::any_of(d.members.begin(), d.members.end(), [&](const DomainExpr& m) {
        return domain_admits(model, m, cls) && directly_matches(model, m, cls, cls_subsumers);
      });
    case DomainExpr::Kind::IntersectionOf:
      return std::any_of(d.members.begin(), d.members.end(), [&](const DomainExpr& m) {
        return directly_matches(model, m, cls, cls_subsumers);
      });
    default:
      return false;
  }
}

bool admits_with(const DomainExpr& d, const std::set<Iri>& cls_subsumers) {
  switch (d.kind) {
    case DomainExpr::Kind::Unspecified:
    case DomainExpr::Kind::Thing:
      return true;
    case DomainExpr::Kind::Named:
      return cls_subsumers.contains(d.named);
    case DomainExpr::Kind::UnionOf:
      return std::any_of(d.members.begin(), d.members.end(),
                         [&](const DomainExpr& m) { return admits_with(m, cls_subsumers); });
    case DomainExpr::Kind::IntersectionOf:
      return std::all_of(d.members.begin(), d.members.end(),
                         [&](const DomainExpr& m) { return admits_with(m, cls_subsumers); });
  }
  return false;
}

}  // namespace

bool OntologyModel::knows_class(const Iri& cls) const {
  return cls == vocab::thing() || classes.contains(cls);
}

void OntologyModel::require_class(const Iri& cls) const {
  if (!knows_class(cls)) throw UnknownClassError(cls.str());
}

std::string OntologyModel::individual_namespace(const Iri& fallback_class) const {
  if (!iri.empty()) {
    const auto& s = iri.str();
    if (s.back() == '#' || s.back() == '/') return s;
    return s + "#";
  }
  std::string ns(fallback_class.namespace_part());
  return ns.empty() ? fallback_class.str() + "#" : ns;
}

OntologyModel extract_model(const Graph& graph) {
  OntologyModel model = Extractor(graph).run();
  model.closure_ = Extractor::closure_of(model);
  return model;
}

std::set<Iri> subsumers(const OntologyModel& model, const Iri& cls) {
  if (cls == vocab::thing()) return {vocab::thing()};
  auto it = model.closure_.find(cls);
  if (it == model.closure_.end()) throw UnknownClassError(cls.str());
  return it->second;
}

bool domain_admits(const OntologyModel& model, const DomainExpr& domain, const Iri& cls) {
  return admits_with(domain, subsumers(model, cls));
}

std::vector<ApplicableProperty> applicable_properties(const OntologyModel& model, const Iri& cls) {
  const auto sup = subsumers(model, cls);
  std::vector<ApplicableProperty> out;
  for (const auto& [iri, decl] : model.properties) {
    if (!admits_with(decl.domain, sup)) continue;
    ApplicableProperty::Source source = ApplicableProperty::Source::Inherited;
    if (decl.domain.kind == DomainExpr::Kind::Unspecified || decl.domain.kind == DomainExpr::Kind::Thing) {
      source = ApplicableProperty::Source::Global;
    } else if (directly_matches(model, decl.domain, cls, sup)) {
      source = ApplicableProperty::Source::Declared;
    }
    out.push_back({iri, source});
  }
  return out;
}

std::vector<NamedIndividual> individuals_of(const OntologyModel& model, const Iri& cls) {
  model.require_class(cls);
  std::vector<NamedIndividual> out;
  for (const auto& [iri, decl] : model.individuals) {
    bool member = cls == vocab::thing() ||
                  std::any_of(decl.types.begin(), decl.types.end(),
                              [&](const Iri& t) { return subsumers(model, t).contains(cls); });
    if (member) out.push_back({iri, label_of(model, iri)});
  }
  std::sort(out.begin(), out.end(), [](const NamedIndividual& a, const NamedIndividual& b) {
    return std::tie(a.label, a.iri) < std::tie(b.label, b.iri);
  });
  return out;
}

std::vector<Iri> subclasses_of(const OntologyModel& model, const Iri& cls) {
  model.require_class(cls);
  std::vector<Iri> out;
  for (const auto& [iri, _] : model.classes) {
    if (iri != cls && subsumers(model, iri).contains(cls)) out.push_back(iri);
  }
  return out;  // std::map iteration is already IRI-ordered
}

std::string label_of(const OntologyModel& model, const Iri& entity) {
  if (auto label = preferred_label(model.source, entity)) return *label;
  auto local = entity.local_name();
  return local.empty() ? entity.str() : std::string(local);
}

std::string render_domain(const OntologyModel& model, const DomainExpr& domain) {
  switch (domain.kind) {
    case DomainExpr::Kind::Unspecified: return "<undefined>";
    case DomainExpr::Kind::Thing: return "Thing";
    case DomainExpr::Kind::Named: return label_of(model, domain.named);
    case DomainExpr::Kind::UnionOf:
    case DomainExpr::Kind::IntersectionOf: {
      const char* sep = domain.kind == DomainExpr::Kind::UnionOf ? " or " : " and ";
      std::string out = "(";
      for (std::size_t i = 0; i < domain.members.size(); ++i) {
        if (i) out += sep;
        out += render_domain(model, domain.members[i]);
      }
      return out + ")";
    }
  }
  return {};
}

bool is_datatype_iri(const Iri& iri) {
  const auto& s = iri.str();
  return s.starts_with(vocab::kXsd) || iri == vocab::rdfs("Literal") ||
         iri == vocab::rdf("langString") || iri == vocab::rdf("PlainLiteral") ||
         iri == vocab::rdf("XMLLiteral");
}

}  // namespace ontoforms
