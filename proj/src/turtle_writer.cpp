#include <cctype>
#include <cstdio>

#include "ontoforms/rdf.hpp"

namespace ontoforms {

namespace {

bool is_local_start(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }
bool is_local_char(unsigned char c) { return is_local_start(c) || c == '-' || c == '.'; }

bool valid_local_name(std::string_view local) {
  if (local.empty()) return true;
  if (!is_local_start(static_cast<unsigned char>(local.front()))) return false;
  if (local.back() == '.') return false;
  for (char c : local) {
    if (!is_local_char(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

class Writer {
public:
  explicit Writer(const Graph& g) : graph_(g) {}

  std::string run() {
    for (const auto& [prefix, ns] : graph_.prefixes()) {
      out_ += "@prefix " + prefix + ": <";
      append_iri_body(ns.str());
      out_ += "> .\n";
    }
    if (!graph_.empty() && !graph_.prefixes().empty()) out_ += '\n';

    const Term* subject = nullptr;
    const Term* predicate = nullptr;
    for (const auto& t : graph_) {
      if (!subject || t.subject != *subject) {
        if (subject) out_ += " .\n\n";
        append_term(t.subject, false);
        out_ += "\n    ";
        append_term(t.predicate, true);
        out_ += ' ';
      } else if (t.predicate != *predicate) {
        out_ += " ;\n    ";
        append_term(t.predicate, true);
        out_ += ' ';
      } else {
        out_ += " , ";
      }
      append_term(t.object, false);
      subject = &t.subject;
      predicate = &t.predicate;
    }
    if (subject) out_ += " .\n";
    return std::move(out_);
  }

private:
  const Graph& graph_;
  std::string out_;

  void append_iri_body(std::string_view iri) {
    for (char c : iri) {
      unsigned char u = static_cast<unsigned char>(c);
      if (u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
          c == '^' || c == '`' || c == '\\') {
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\u%04X", u);
        out_ += buf;
      } else {
        out_ += c;
      }
    }
  }

  void append_iri(const Iri& iri, bool predicate_position) {
    if (predicate_position && iri == vocab::type()) {
      out_ += 'a';
      return;
    }
    // Longest matching namespace gives the shortest local part.
    const std::string* best_prefix = nullptr;
    std::size_t best_len = 0;
    for (const auto& [prefix, ns] : graph_.prefixes()) {
      const auto& n = ns.str();
      if (!n.empty() && n.size() >= best_len && iri.str().starts_with(n) &&
          valid_local_name(std::string_view(iri.str()).substr(n.size()))) {
        if (n.size() > best_len || !best_prefix) {
          best_prefix = &prefix;
          best_len = n.size();
        }
      }
    }
    if (best_prefix) {
      out_ += *best_prefix + ":" + iri.str().substr(best_len);
      return;
    }
    out_ += '<';
    append_iri_body(iri.str());
    out_ += '>';
  }

  void append_term(const Term& t, bool predicate_position) {
    if (t.is_iri()) {
      append_iri(t.iri(), predicate_position);
    } else if (t.is_blank()) {
      out_ += "_:" + t.blank().label;
    } else {
      const auto& lit = t.literal();
      out_ += '"';
      for (char c : lit.lexical) {
        switch (c) {
          case '\\': out_ += "\\\\"; break;
          case '"': out_ += "\\\""; break;
          case '\n': out_ += "\\n"; break;
          case '\r': out_ += "\\r"; break;
          case '\t': out_ += "\\t"; break;
          case '\b': out_ += "\\b"; break;
          case '\f': out_ += "\\f"; break;
          default: out_ += c;
        }
      }
      out_ += '"';
      if (lit.datatype) {
        out_ += "^^";
        append_iri(*lit.datatype, false);
      } else if (lit.language) {
        out_ += '@' + *lit.language;
      }
    }
  }
};

}  // namespace

std::string serialize_turtle(const Graph& graph) { return Writer(graph).run(); }

}  // namespace ontoforms
