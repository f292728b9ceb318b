#include "ontoforms/rdf.hpp"

#include <stdexcept>
#include <unordered_set>

namespace ontoforms {

namespace {

void append_escaped(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
}

}  // namespace

std::string_view Iri::local_name() const noexcept {
  std::string_view v = value_;
  auto pos = v.rfind('#');
  if (pos == std::string_view::npos) pos = v.rfind('/');
  return pos == std::string_view::npos ? v : v.substr(pos + 1);
}

std::string_view Iri::namespace_part() const noexcept {
  std::string_view v = value_;
  auto pos = v.rfind('#');
  if (pos == std::string_view::npos) pos = v.rfind('/');
  return pos == std::string_view::npos ? std::string_view{} : v.substr(0, pos + 1);
}

Term::Term(Iri iri) : value_(std::move(iri)) {
  key_.reserve(std::get<Iri>(value_).str().size() + 2);
  key_ += '<';
  key_ += std::get<Iri>(value_).str();
  key_ += '>';
}

Term::Term(BlankNode blank) : value_(std::move(blank)) {
  key_ = "_:" + std::get<BlankNode>(value_).label;
}

Term::Term(Literal literal) {
  if (literal.datatype && literal.language) {
    throw std::invalid_argument("literal cannot carry both datatype and language");
  }
  value_ = std::move(literal);
  const auto& lit = std::get<Literal>(value_);
  key_ += '"';
  append_escaped(key_, lit.lexical);
  key_ += '"';
  if (lit.datatype) {
    key_ += "^^<" + lit.datatype->str() + ">";
  } else if (lit.language) {
    key_ += "@" + *lit.language;
  }
}

Triple::Triple(Term s, Term p, Term o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
  if (subject.is_literal()) throw std::invalid_argument("literal in subject position");
  if (!predicate.is_iri()) throw std::invalid_argument("predicate must be an IRI");
}

bool Graph::insert(Triple t) { return triples_.insert(std::move(t)).second; }

bool Graph::erase(const Triple& t) { return triples_.erase(t) > 0; }

std::vector<Triple> Graph::with_subject(const Term& s) const {
  Triple probe;
  probe.subject = s;
  std::vector<Triple> out;
  for (auto it = triples_.lower_bound(probe); it != triples_.end() && it->subject == s; ++it) {
    out.push_back(*it);
  }
  return out;
}

std::vector<Term> Graph::objects(const Term& s, const Iri& p) const {
  Triple probe;
  probe.subject = s;
  probe.predicate = Term(p);
  std::vector<Term> out;
  for (auto it = triples_.lower_bound(probe);
       it != triples_.end() && it->subject == s && it->predicate == probe.predicate; ++it) {
    out.push_back(it->object);
  }
  return out;
}

std::vector<Term> Graph::subjects(const Iri& p, const Term& o) const {
  const Term pred(p);
  std::vector<Term> out;
  for (const auto& t : triples_) {
    if (t.predicate == pred && t.object == o) out.push_back(t.subject);
  }
  return out;
}

std::vector<Triple> Graph::with_object(const Term& o) const {
  std::vector<Triple> out;
  for (const auto& t : triples_) {
    if (t.object == o) out.push_back(t);
  }
  return out;
}

Graph graph_union(const Graph& a, const Graph& b) {
  Graph out = a;
  for (const auto& [prefix, ns] : b.prefixes()) out.prefixes().emplace(prefix, ns);

  std::unordered_set<std::string> labels;
  auto collect = [&](const Graph& g) {
    for (const auto& t : g) {
      if (t.subject.is_blank()) labels.insert(t.subject.blank().label);
      if (t.object.is_blank()) labels.insert(t.object.blank().label);
    }
  };
  collect(a);
  std::unordered_set<std::string> taken_by_a = labels;
  collect(b);

  std::map<std::string, std::string> renamed;
  auto remap = [&](const Term& t) -> Term {
    if (!t.is_blank() || !taken_by_a.contains(t.blank().label)) return t;
    const auto& label = t.blank().label;
    auto it = renamed.find(label);
    if (it == renamed.end()) {
      std::string fresh;
      for (int n = 1;; ++n) {
        fresh = label + "_" + std::to_string(n);
        if (!labels.contains(fresh)) break;
      }
      labels.insert(fresh);
      it = renamed.emplace(label, fresh).first;
    }
    return Term(BlankNode{it->second});
  };

  // A blank node shared by both graphs is still a distinct node per
  // document, so every colliding label in b is renamed.
  for (const auto& t : b) {
    out.insert(Triple(remap(t.subject), t.predicate, remap(t.object)));
  }
  return out;
}

std::vector<Term> read_list(const Graph& graph, const Term& head) {
  std::vector<Term> items;
  std::set<Term> seen;
  Term node = head;
  const Term nil(vocab::nil());
  while (node != nil) {
    if (!seen.insert(node).second) throw ModelError("cyclic RDF list at " + node.ntriples());
    auto firsts = graph.objects(node, vocab::first());
    auto rests = graph.objects(node, vocab::rest());
    if (firsts.size() != 1 || rests.size() != 1) {
      throw ModelError("malformed RDF list node " + node.ntriples());
    }
    items.push_back(firsts.front());
    node = rests.front();
  }
  return items;
}

namespace vocab {

Iri rdf(std::string_view local) { return Iri(std::string(kRdf) + std::string(local)); }
Iri rdfs(std::string_view local) { return Iri(std::string(kRdfs) + std::string(local)); }
Iri owl(std::string_view local) { return Iri(std::string(kOwl) + std::string(local)); }
Iri xsd(std::string_view local) { return Iri(std::string(kXsd) + std::string(local)); }

const Iri& type() {
  static const Iri v = rdf("type");
  return v;
}
const Iri& label() {
  static const Iri v = rdfs("label");
  return v;
}
const Iri& first() {
  static const Iri v = rdf("first");
  return v;
}
const Iri& rest() {
  static const Iri v = rdf("rest");
  return v;
}
const Iri& nil() {
  static const Iri v = rdf("nil");
  return v;
}
const Iri& thing() {
  static const Iri v = owl("Thing");
  return v;
}
const Iri& created_as_intermediate() {
  static const Iri v(std::string(kOntoforms) + "createdAsIntermediate");
  return v;
}

}  // namespace vocab

}  // namespace ontoforms
