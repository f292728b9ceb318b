#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ontoforms/rdf.hpp"

namespace ontoforms {

/// Decoded rdfs:domain of a property. Nested unions and intersections are
/// kept as parsed.
struct DomainExpr {
  enum class Kind { Unspecified, Thing, Named, UnionOf, IntersectionOf };

  Kind kind = Kind::Unspecified;
  Iri named;                       // Kind::Named only
  std::vector<DomainExpr> members; // UnionOf / IntersectionOf, two or more

  static DomainExpr unspecified() { return {}; }
  static DomainExpr thing() { return {Kind::Thing, {}, {}}; }
  static DomainExpr of(Iri cls) { return {Kind::Named, std::move(cls), {}}; }
  static DomainExpr union_of(std::vector<DomainExpr> ms) { return {Kind::UnionOf, {}, std::move(ms)}; }
  static DomainExpr intersection_of(std::vector<DomainExpr> ms) {
    return {Kind::IntersectionOf, {}, std::move(ms)};
  }

  friend bool operator==(const DomainExpr&, const DomainExpr&) = default;
};

enum class PropertyKind { Object, Data };

struct PropertyDecl {
  Iri iri;
  PropertyKind kind = PropertyKind::Object;
  DomainExpr domain;
  std::optional<Iri> range;
  bool functional = false;
  std::optional<std::string> label;
};

struct ClassDecl {
  Iri iri;
  std::optional<std::string> label;
  std::vector<Iri> direct_supers;
  std::vector<Iri> equivalents;
};

struct IndividualDecl {
  Iri iri;
  std::vector<Iri> types;
  std::optional<std::string> label;
};

/// Read-only view of the classes, properties and individuals of a graph.
/// Built once by extract_model; every query below is a pure function of it.
class OntologyModel {
public:
  Iri iri;
  std::map<Iri, ClassDecl> classes;
  std::map<Iri, PropertyDecl> properties;
  std::map<Iri, IndividualDecl> individuals;
  Graph source;
  /// Non-fatal findings from extraction (unresolved references, ignored
  /// expressions, extra ranges).
  std::vector<std::string> warnings;

  /// owl:Thing or a key of `classes`.
  bool knows_class(const Iri& cls) const;
  void require_class(const Iri& cls) const;

  /// Namespace new individuals are minted in: the ontology IRI followed by
  /// '#', unless it already ends in '#' or '/'.
  std::string individual_namespace(const Iri& fallback_class) const;

private:
  friend OntologyModel extract_model(const Graph& graph);
  friend std::set<Iri> subsumers(const OntologyModel& model, const Iri& cls);
  std::map<Iri, std::set<Iri>> closure_;
};

OntologyModel extract_model(const Graph& graph);

/// Reflexive-transitive closure over direct supers and named equivalences,
/// always including owl:Thing.
std::set<Iri> subsumers(const OntologyModel& model, const Iri& cls);

bool domain_admits(const OntologyModel& model, const DomainExpr& domain, const Iri& cls);

struct ApplicableProperty {
  enum class Source { Declared, Inherited, Global };
  Iri property;
  Source source;

  friend bool operator==(const ApplicableProperty&, const ApplicableProperty&) = default;
};

/// Properties whose domain admits `cls`, ordered by property IRI.
std::vector<ApplicableProperty> applicable_properties(const OntologyModel& model, const Iri& cls);

struct NamedIndividual {
  Iri iri;
  std::string label;
  friend bool operator==(const NamedIndividual&, const NamedIndividual&) = default;
};

/// Individuals with an asserted type under `cls`, sorted by label then IRI.
std::vector<NamedIndividual> individuals_of(const OntologyModel& model, const Iri& cls);

/// Strict descendants, sorted by IRI.
std::vector<Iri> subclasses_of(const OntologyModel& model, const Iri& cls);

/// rdfs:label (untagged or English preferred), else the IRI local name.
std::string label_of(const OntologyModel& model, const Iri& entity);

/// Human rendering of a domain for the properties table ("<undefined>",
/// "Thing", a label, "(A or B)", "(A and B)").
std::string render_domain(const OntologyModel& model, const DomainExpr& domain);

bool is_datatype_iri(const Iri& iri);

}  // namespace ontoforms
