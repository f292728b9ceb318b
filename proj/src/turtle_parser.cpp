// Recursive-descent reader for the Turtle subset used by ontology documents:
// directives (@prefix/@base and the SPARQL-style forms), prefixed names,
// 'a', literals with datatypes and language tags, numeric and boolean
// shorthands, ';'/',' lists, blank-node property lists and collections.

#include <cctype>
#include <unordered_set>

#include "ontoforms/rdf.hpp"

namespace ontoforms {

namespace {

bool is_pn_chars_base(unsigned char c) { return std::isalpha(c) || c >= 0x80; }
bool is_pn_chars_u(unsigned char c) { return is_pn_chars_base(c) || c == '_'; }
bool is_pn_chars(unsigned char c) { return is_pn_chars_u(c) || std::isdigit(c) || c == '-'; }

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::string remove_dot_segments(std::string in) {
  std::string out;
  auto pop_segment = [&out] {
    auto slash = out.rfind('/');
    out.erase(slash == std::string::npos ? 0 : slash);
  };
  while (!in.empty()) {
    if (in.starts_with("../")) {
      in.erase(0, 3);
    } else if (in.starts_with("./")) {
      in.erase(0, 2);
    } else if (in.starts_with("/./")) {
      in.replace(0, 3, "/");
    } else if (in == "/.") {
      in = "/";
    } else if (in.starts_with("/../")) {
      in.replace(0, 4, "/");
      pop_segment();
    } else if (in == "/..") {
      in = "/";
      pop_segment();
    } else if (in == "." || in == "..") {
      in.clear();
    } else {
      auto next = in.find('/', in.front() == '/' ? 1 : 0);
      if (next == std::string::npos) next = in.size();
      out += in.substr(0, next);
      in.erase(0, next);
    }
  }
  return out;
}

bool has_scheme(std::string_view ref) {
  auto colon = ref.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!std::isalpha(static_cast<unsigned char>(ref[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    unsigned char c = ref[i];
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  return true;
}

// RFC 3986 section 5.2 reference resolution.
std::string resolve(std::string_view base, std::string_view ref) {
  if (base.empty() || has_scheme(ref)) return std::string(ref);
  auto scheme_end = base.find(':');
  std::string_view scheme = base.substr(0, scheme_end + 1);
  std::string_view rest = base.substr(scheme_end + 1);
  std::string_view authority;
  if (rest.starts_with("//")) {
    auto end = rest.find_first_of("/?#", 2);
    if (end == std::string_view::npos) end = rest.size();
    authority = rest.substr(0, end);
    rest = rest.substr(end);
  }
  auto qpos = rest.find_first_of("?#");
  std::string_view base_path = rest.substr(0, qpos);
  std::string_view base_query;
  if (qpos != std::string_view::npos && rest[qpos] == '?') {
    auto hash = rest.find('#', qpos);
    base_query = rest.substr(qpos, hash == std::string_view::npos ? rest.npos : hash - qpos);
  }

  if (ref.starts_with("//")) return std::string(scheme) + std::string(ref);
  std::string prefix = std::string(scheme) + std::string(authority);
  if (ref.empty()) return prefix + std::string(base_path) + std::string(base_query);
  if (ref.front() == '#') return prefix + std::string(base_path) + std::string(base_query) + std::string(ref);
  if (ref.front() == '?') return prefix + std::string(base_path) + std::string(ref);

  auto rq = ref.find_first_of("?#");
  std::string_view ref_path = ref.substr(0, rq);
  std::string_view ref_tail = rq == std::string_view::npos ? std::string_view{} : ref.substr(rq);
  std::string merged;
  if (ref_path.front() == '/') {
    merged = std::string(ref_path);
  } else if (!authority.empty() && base_path.empty()) {
    merged = "/" + std::string(ref_path);
  } else {
    auto slash = base_path.rfind('/');
    merged = (slash == std::string_view::npos ? std::string{} : std::string(base_path.substr(0, slash + 1))) +
             std::string(ref_path);
  }
  return prefix + remove_dot_segments(merged) + std::string(ref_tail);
}

class TurtleParser {
public:
  explicit TurtleParser(std::string_view src) : src_(src) { reserve_labels(); }

  Graph parse() {
    skip_ws();
    while (!at_end()) {
      statement();
      skip_ws();
    }
    return std::move(graph_);
  }

private:
  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::string base_;
  Graph graph_;
  std::unordered_set<std::string> reserved_;
  std::size_t next_blank_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  char get() {
    if (at_end()) fail("unexpected end of document");
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
    return c;
  }
  void expect(char c) {
    if (peek() != c || at_end()) fail(std::string("expected '") + c + "'");
    get();
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  bool match_keyword_ci(std::string_view kw) const {
    if (src_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(src_[pos_ + i])) != kw[i]) return false;
    }
    char after = peek(kw.size());
    return after == ' ' || after == '\t' || after == '\n' || after == '\r' || after == '<' ||
           after == '#';
  }

  // Explicit _:labels are kept as written; generated labels avoid them.
  void reserve_labels() {
    for (std::size_t i = src_.find("_:"); i != std::string_view::npos; i = src_.find("_:", i + 2)) {
      std::size_t j = i + 2;
      while (j < src_.size() && (is_pn_chars(src_[j]) || src_[j] == '.')) ++j;
      reserved_.emplace(src_.substr(i + 2, j - i - 2));
    }
  }

  Term fresh_blank() {
    std::string label;
    do {
      label = "b" + std::to_string(next_blank_++);
    } while (reserved_.contains(label));
    return Term(BlankNode{label});
  }

  void statement() {
    if (peek() == '@') {
      get();
      std::string kw;
      while (std::isalpha(static_cast<unsigned char>(peek()))) kw += get();
      if (kw == "prefix") {
        prefix_decl();
      } else if (kw == "base") {
        base_decl();
      } else {
        fail("unknown directive '@" + kw + "'");
      }
      skip_ws();
      expect('.');
      return;
    }
    if (match_keyword_ci("PREFIX")) {
      for (int i = 0; i < 6; ++i) get();
      prefix_decl();
      return;
    }
    if (match_keyword_ci("BASE")) {
      for (int i = 0; i < 4; ++i) get();
      base_decl();
      return;
    }
    triples();
    skip_ws();
    expect('.');
  }

  void prefix_decl() {
    skip_ws();
    std::string prefix;
    if (peek() != ':') {
      if (!is_pn_chars_base(peek())) fail("expected prefix name");
      while (is_pn_chars(peek()) || (peek() == '.' && is_pn_chars(peek(1)))) prefix += get();
    }
    expect(':');
    skip_ws();
    Iri ns = iri_ref();
    graph_.prefixes()[prefix] = ns;
  }

  void base_decl() {
    skip_ws();
    base_ = iri_ref().str();
  }

  void triples() {
    if (peek() == '[') {
      Term subject = blank_node_property_list();
      skip_ws();
      if (peek() != '.') predicate_object_list(subject);
      return;
    }
    Term subject = subject_term();
    skip_ws();
    predicate_object_list(subject);
  }

  Term subject_term() {
    char c = peek();
    if (c == '<') return Term(iri_ref());
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '(') return collection();
    if (c == '[') return blank_node_property_list();
    if (c == '"' || c == '\'' || std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-') {
      fail("literal in subject position");
    }
    return Term(prefixed_name());
  }

  void predicate_object_list(const Term& subject) {
    for (;;) {
      skip_ws();
      Term predicate = verb();
      skip_ws();
      object_list(subject, predicate);
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        get();
        skip_ws();
      }
      char c = peek();
      if (c == '.' || c == ']' || at_end()) return;
    }
  }

  Term verb() {
    if (peek() == 'a') {
      char n = peek(1);
      if (n == ' ' || n == '\t' || n == '\n' || n == '\r' || n == '<' || n == '[' || n == '"' ||
          n == '(' || n == '_') {
        get();
        return Term(vocab::type());
      }
    }
    if (peek() == '<') return Term(iri_ref());
    if (peek() == '_' || peek() == '[' || peek() == '(' || peek() == '"') fail("predicate must be an IRI");
    return Term(prefixed_name());
  }

  void object_list(const Term& subject, const Term& predicate) {
    for (;;) {
      skip_ws();
      Term obj = object();
      graph_.insert(Triple(subject, predicate, obj));
      skip_ws();
      if (peek() != ',') return;
      get();
    }
  }

  Term object() {
    char c = peek();
    if (c == '<') return Term(iri_ref());
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '(') return collection();
    if (c == '[') return blank_node_property_list();
    if (c == '"' || c == '\'') return Term(rdf_literal());
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return Term(numeric_literal());
    }
    if (src_.substr(pos_).starts_with("true") && !is_name_continuation(peek(4))) {
      for (int i = 0; i < 4; ++i) get();
      return Term(Literal{"true", vocab::xsd("boolean"), std::nullopt});
    }
    if (src_.substr(pos_).starts_with("false") && !is_name_continuation(peek(5))) {
      for (int i = 0; i < 5; ++i) get();
      return Term(Literal{"false", vocab::xsd("boolean"), std::nullopt});
    }
    if (at_end()) fail("unexpected end of document");
    return Term(prefixed_name());
  }

  static bool is_name_continuation(char c) {
    return is_pn_chars(static_cast<unsigned char>(c)) || c == ':' || c == '.';
  }

  Term blank_label() {
    get();
    get();
    std::string label;
    if (!is_pn_chars_u(peek()) && !std::isdigit(static_cast<unsigned char>(peek()))) {
      fail("invalid blank node label");
    }
    while (is_pn_chars(peek()) || (peek() == '.' && is_pn_chars(peek(1)))) label += get();
    return Term(BlankNode{label});
  }

  Term blank_node_property_list() {
    expect('[');
    Term node = fresh_blank();
    skip_ws();
    if (peek() == ']') {
      get();
      return node;
    }
    predicate_object_list(node);
    skip_ws();
    expect(']');
    return node;
  }

  Term collection() {
    expect('(');
    std::vector<Term> items;
    skip_ws();
    while (peek() != ')') {
      if (at_end()) fail("unterminated collection");
      items.push_back(object());
      skip_ws();
    }
    get();
    if (items.empty()) return Term(vocab::nil());
    Term head = fresh_blank();
    Term node = head;
    for (std::size_t i = 0; i < items.size(); ++i) {
      graph_.insert(Triple(node, Term(vocab::first()), items[i]));
      Term next = i + 1 < items.size() ? fresh_blank() : Term(vocab::nil());
      graph_.insert(Triple(node, Term(vocab::rest()), next));
      node = next;
    }
    return head;
  }

  unsigned long read_hex(int digits) {
    unsigned long cp = 0;
    for (int i = 0; i < digits; ++i) {
      char c = get();
      if (!std::isxdigit(static_cast<unsigned char>(c))) fail("invalid unicode escape");
      cp = cp * 16 + static_cast<unsigned long>(std::isdigit(static_cast<unsigned char>(c))
                                                    ? c - '0'
                                                    : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10);
    }
    return cp;
  }

  Iri iri_ref() {
    expect('<');
    std::string value;
    for (;;) {
      if (at_end()) fail("unterminated IRI");
      char c = get();
      if (c == '>') break;
      if (c == '\\') {
        char e = get();
        if (e == 'u') {
          append_utf8(value, read_hex(4));
        } else if (e == 'U') {
          append_utf8(value, read_hex(8));
        } else {
          fail("invalid escape in IRI");
        }
        continue;
      }
      if (c == ' ' || c == '\n' || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' ||
          c == '^' || c == '`') {
        fail("invalid character in IRI");
      }
      value += c;
    }
    return Iri(resolve(base_, value));
  }

  Iri prefixed_name() {
    std::size_t line = line_, col = col_;
    std::string prefix;
    if (peek() != ':') {
      if (!is_pn_chars_base(peek())) fail("unexpected character '" + std::string(1, peek()) + "'");
      while (is_pn_chars(peek()) || (peek() == '.' && is_pn_chars(peek(1)))) prefix += get();
    }
    if (peek() != ':') fail("expected ':' in prefixed name '" + prefix + "'");
    get();
    std::string local;
    auto local_char_ok = [&](char c) {
      return is_pn_chars(static_cast<unsigned char>(c)) || c == ':' || c == '%' || c == '\\';
    };
    if (local_char_ok(peek()) || std::isdigit(static_cast<unsigned char>(peek()))) {
      for (;;) {
        char c = peek();
        if (c == '.') {
          if (local_char_ok(peek(1))) {
            local += get();
            continue;
          }
          break;
        }
        if (!local_char_ok(c)) break;
        if (c == '\\') {
          get();
          local += get();
        } else if (c == '%') {
          local += get();
          for (int i = 0; i < 2; ++i) {
            if (!std::isxdigit(static_cast<unsigned char>(peek()))) fail("invalid percent escape");
            local += get();
          }
        } else {
          local += get();
        }
      }
    }
    auto it = graph_.prefixes().find(prefix);
    if (it == graph_.prefixes().end()) throw UnknownPrefixError(line, col, prefix);
    return Iri(it->second.str() + local);
  }

  Literal rdf_literal() {
    std::string lexical = string_literal();
    Literal lit{std::move(lexical), std::nullopt, std::nullopt};
    if (peek() == '@') {
      get();
      std::string lang;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-') lang += get();
      if (lang.empty()) fail("empty language tag");
      lit.language = lang;
    } else if (peek() == '^' && peek(1) == '^') {
      get();
      get();
      lit.datatype = peek() == '<' ? iri_ref() : prefixed_name();
    }
    return lit;
  }

  std::string string_literal() {
    char quote = get();
    bool long_form = peek() == quote && peek(1) == quote;
    if (long_form) {
      get();
      get();
    }
    std::string out;
    for (;;) {
      if (at_end()) fail("unterminated string literal");
      char c = peek();
      if (c == quote) {
        if (!long_form) {
          get();
          return out;
        }
        if (peek(1) == quote && peek(2) == quote) {
          // A long string may end with up to two extra quote characters.
          while (peek(3) == quote) out += get();
          get();
          get();
          get();
          return out;
        }
        out += get();
        continue;
      }
      if (!long_form && (c == '\n' || c == '\r')) fail("newline in short string literal");
      get();
      if (c != '\\') {
        out += c;
        continue;
      }
      char e = get();
      switch (e) {
        case 't': out += '\t'; break;
        case 'b': out += '\b'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 'f': out += '\f'; break;
        case '"': out += '"'; break;
        case '\'': out += '\''; break;
        case '\\': out += '\\'; break;
        case 'u': append_utf8(out, read_hex(4)); break;
        case 'U': append_utf8(out, read_hex(8)); break;
        default: fail(std::string("invalid escape '\\") + e + "'");
      }
    }
  }

  Literal numeric_literal() {
    std::string lex;
    if (peek() == '+' || peek() == '-') lex += get();
    auto digits = [&] {
      std::size_t n = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        lex += get();
        ++n;
      }
      return n;
    };
    std::size_t int_digits = digits();
    bool decimal = false;
    std::size_t frac_digits = 0;
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      lex += get();
      decimal = true;
      frac_digits = digits();
    }
    if (int_digits == 0 && frac_digits == 0) fail("invalid numeric literal");
    if (peek() == 'e' || peek() == 'E') {
      lex += get();
      if (peek() == '+' || peek() == '-') lex += get();
      if (digits() == 0) fail("invalid exponent");
      return Literal{lex, vocab::xsd("double"), std::nullopt};
    }
    return Literal{lex, vocab::xsd(decimal ? "decimal" : "integer"), std::nullopt};
  }
};

}  // namespace

Graph parse_turtle(std::string_view document) { return TurtleParser(document).parse(); }

}  // namespace ontoforms
