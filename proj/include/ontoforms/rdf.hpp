#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ontoforms/errors.hpp"

namespace ontoforms {

/// Absolute IRI. Equality is byte equality of the string.
class Iri {
public:
  Iri() = default;
  explicit Iri(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  /// Substring after the last '#', else after the last '/'.
  std::string_view local_name() const noexcept;
  /// Everything up to and including the last '#' or '/'.
  std::string_view namespace_part() const noexcept;

  friend auto operator<=>(const Iri&, const Iri&) = default;

private:
  std::string value_;
};

struct BlankNode {
  std::string label;
  friend auto operator<=>(const BlankNode&, const BlankNode&) = default;
};

/// A literal carries at most one of datatype and language. Neither means a
/// plain string.
struct Literal {
  std::string lexical;
  std::optional<Iri> datatype;
  std::optional<std::string> language;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Any RDF term. Ordering follows the N-Triples rendering so graph
/// iteration is lexicographic by rendered triple.
class Term {
public:
  Term() = default;
  Term(Iri iri);              // NOLINT(google-explicit-constructor)
  Term(BlankNode blank);      // NOLINT(google-explicit-constructor)
  Term(Literal literal);      // NOLINT(google-explicit-constructor)

  bool is_iri() const noexcept { return std::holds_alternative<Iri>(value_); }
  bool is_blank() const noexcept { return std::holds_alternative<BlankNode>(value_); }
  bool is_literal() const noexcept { return std::holds_alternative<Literal>(value_); }

  const Iri& iri() const { return std::get<Iri>(value_); }
  const BlankNode& blank() const { return std::get<BlankNode>(value_); }
  const Literal& literal() const { return std::get<Literal>(value_); }
  const std::variant<Iri, BlankNode, Literal>& value() const noexcept { return value_; }

  /// N-Triples form, e.g. <http://x>, _:b0, "v"^^<dt>, "v"@en.
  const std::string& ntriples() const noexcept { return key_; }

  friend bool operator==(const Term& a, const Term& b) noexcept { return a.key_ == b.key_; }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
    return a.key_.compare(b.key_) <=> 0;
  }

private:
  std::variant<Iri, BlankNode, Literal> value_;
  std::string key_;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  Triple() = default;
  /// Throws std::invalid_argument when the subject is a literal or the
  /// predicate is not an IRI.
  Triple(Term s, Term p, Term o);

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Set of triples plus the prefix bindings seen while parsing.
class Graph {
public:
  using Set = std::set<Triple>;
  using const_iterator = Set::const_iterator;

  /// Returns false when the triple was already present.
  bool insert(Triple t);
  bool erase(const Triple& t);
  bool contains(const Triple& t) const { return triples_.contains(t); }

  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }
  const_iterator begin() const noexcept { return triples_.begin(); }
  const_iterator end() const noexcept { return triples_.end(); }
  const Set& triples() const noexcept { return triples_; }

  /// Triples whose subject is `s`, in graph order.
  std::vector<Triple> with_subject(const Term& s) const;
  std::vector<Term> objects(const Term& s, const Iri& p) const;
  std::vector<Term> subjects(const Iri& p, const Term& o) const;
  /// Triples with `o` in object position, any predicate.
  std::vector<Triple> with_object(const Term& o) const;

  std::map<std::string, Iri>& prefixes() noexcept { return prefixes_; }
  const std::map<std::string, Iri>& prefixes() const noexcept { return prefixes_; }

  /// Set equality of triples; prefixes are ignored.
  bool same_triples(const Graph& other) const { return triples_ == other.triples_; }

private:
  Set triples_;
  std::map<std::string, Iri> prefixes_;
};

Graph parse_turtle(std::string_view document);
std::string serialize_turtle(const Graph& graph);

/// Set union. Prefix bindings of `a` win. Blank-node labels of `b` that
/// collide with labels in `a` are renamed.
Graph graph_union(const Graph& a, const Graph& b);

/// Items of an rdf:first/rdf:rest chain starting at `head`. Throws
/// ModelError on a malformed or cyclic list.
std::vector<Term> read_list(const Graph& graph, const Term& head);

namespace vocab {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kOntoforms = "http://ontoforms.org/vocab#";

Iri rdf(std::string_view local);
Iri rdfs(std::string_view local);
Iri owl(std::string_view local);
Iri xsd(std::string_view local);

const Iri& type();
const Iri& label();
const Iri& first();
const Iri& rest();
const Iri& nil();
const Iri& thing();
const Iri& created_as_intermediate();
}  // namespace vocab

}  // namespace ontoforms
