#include "ccv/rdf/turtle.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "ccv/error.hpp"
#include "ccv/rdf/vocab.hpp"

namespace ccv::rdf {
namespace {

// Language-tagged literals keep their tag in the datatype slot so equality
// stays exact: rdf:langString@en.
const std::string lang_marker = vocab::rdf_lang_string + "@";

bool is_name_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c >= 0x80;
}

bool has_scheme(std::string_view iri) {
  if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
  for (std::size_t i = 1; i < iri.size(); ++i) {
    unsigned char c = iri[i];
    if (c == ':') return true;
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  return false;
}

std::string resolve(const std::string& base, const std::string& rel) {
  if (rel.empty()) return base;
  if (rel[0] == '#') return base.substr(0, base.find('#')) + rel;
  auto scheme_end = base.find("://");
  if (rel[0] == '/') {
    if (scheme_end == std::string::npos) return base + rel;
    auto path_start = base.find('/', scheme_end + 3);
    return (path_start == std::string::npos ? base : base.substr(0, path_start)) + rel;
  }
  auto stem = base.substr(0, base.find_first_of("?#"));
  auto slash = stem.rfind('/');
  if (slash == std::string::npos || (scheme_end != std::string::npos && slash < scheme_end + 3))
    return stem + "/" + rel;
  return stem.substr(0, slash + 1) + rel;
}

void append_utf8(std::string& out, std::uint32_t cp) {
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

class TurtleReader {
public:
  TurtleReader(std::string_view text, const TurtleOptions& options)
      : src_(text), base_(options.base), lenient_(options.lenient_collections) {}

  Graph run() {
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
  bool lenient_;
  Graph graph_;
  std::size_t blank_counter_ = 0;

  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t off = 0) const {
    return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
  }
  char get() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, col_); }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  bool keyword_ahead(std::string_view word) const {
    if (pos_ + word.size() > src_.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i)
      if (std::toupper(static_cast<unsigned char>(src_[pos_ + i])) != word[i]) return false;
    char next = peek(word.size());
    return next == '\0' || std::isspace(static_cast<unsigned char>(next)) || next == '<';
  }

  void statement() {
    if (peek() == '@') {
      if (src_.substr(pos_, 7) == "@prefix") {
        for (int i = 0; i < 7; ++i) get();
        prefix_directive();
        expect('.');
      } else if (src_.substr(pos_, 5) == "@base") {
        for (int i = 0; i < 5; ++i) get();
        base_directive();
        expect('.');
      } else {
        fail("unknown directive");
      }
      return;
    }
    if (keyword_ahead("PREFIX")) {
      for (int i = 0; i < 6; ++i) get();
      prefix_directive();
      return;
    }
    if (keyword_ahead("BASE")) {
      for (int i = 0; i < 4; ++i) get();
      base_directive();
      return;
    }
    triples();
    expect('.');
  }

  void prefix_directive() {
    skip_ws();
    std::string name;
    while (!at_end() && (is_name_char(peek()) || peek() == '.')) name += get();
    if (!name.empty() && name.back() == '.') fail("prefix name may not end with '.'");
    if (peek() != ':') fail("expected ':' after prefix name");
    get();
    skip_ws();
    if (peek() != '<') fail("expected IRI in prefix declaration");
    graph_.prefixes()[name] = iri_ref().value();
  }

  void base_directive() {
    skip_ws();
    if (peek() != '<') fail("expected IRI in base declaration");
    base_ = iri_ref().value();
  }

  void triples() {
    skip_ws();
    if (peek() == '[') {
      Term subject = blank_property_list();
      skip_ws();
      if (peek() != '.') predicate_object_list(subject);
      return;
    }
    Term subject = subject_term();
    predicate_object_list(subject);
  }

  void predicate_object_list(const Term& subject) {
    skip_ws();
    Term predicate = verb();
    object_list(subject, predicate);
    for (;;) {
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        get();
        skip_ws();
      }
      char c = peek();
      if (c == '.' || c == ']' || c == '\0') return;
      Term next = verb();
      object_list(subject, next);
    }
  }

  void object_list(const Term& subject, const Term& predicate) {
    for (;;) {
      Term o = object_term();
      graph_.insert(subject, predicate, o);
      skip_ws();
      if (peek() != ',') return;
      get();
    }
  }

  Term verb() {
    skip_ws();
    if (peek() == 'a') {
      char next = peek(1);
      if (std::isspace(static_cast<unsigned char>(next)) || next == '<' || next == '[' ||
          next == '"' || next == '(' || next == '_') {
        get();
        return Term::iri(vocab::rdf_type);
      }
    }
    Term p = iri_term();
    return p;
  }

  Term subject_term() {
    skip_ws();
    char c = peek();
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '(') return collection();
    return iri_term();
  }

  Term object_term() {
    skip_ws();
    char c = peek();
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '[') return blank_property_list();
    if (c == '(') return collection();
    if (c == '"' || c == '\'') return rdf_literal();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))))
      return numeric_literal();
    if (c == '<') return iri_ref();
    // prefixed name or boolean
    std::size_t save_pos = pos_, save_line = line_, save_col = col_;
    std::string word;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) word += get();
    if ((word == "true" || word == "false") && peek() != ':' && !is_name_char(peek()))
      return Term::literal(word, vocab::xsd_boolean);
    pos_ = save_pos;
    line_ = save_line;
    col_ = save_col;
    return prefixed_name();
  }

  Term iri_term() {
    skip_ws();
    if (peek() == '<') return iri_ref();
    return prefixed_name();
  }

  Term iri_ref() {
    get();  // '<'
    std::string iri;
    for (;;) {
      if (at_end()) fail("unterminated IRI");
      char c = get();
      if (c == '>') break;
      if (c == '\\') {
        iri += unicode_escape();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '"' || c == '{' ||
          c == '}' || c == '|' || c == '^' || c == '`')
        fail("invalid character in IRI");
      iri += c;
    }
    if (!has_scheme(iri)) {
      if (base_.empty()) fail("relative IRI without base: <" + iri + ">");
      iri = resolve(base_, iri);
    }
    return Term::iri(std::move(iri));
  }

  std::string unicode_escape() {
    char kind = at_end() ? '\0' : get();
    std::size_t n = kind == 'u' ? 4 : (kind == 'U' ? 8 : 0);
    if (n == 0) fail("invalid escape sequence");
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < n; ++i) {
      char h = at_end() ? '\0' : get();
      if (!std::isxdigit(static_cast<unsigned char>(h))) fail("invalid hex digit in escape");
      cp = cp * 16 + static_cast<std::uint32_t>(std::isdigit(static_cast<unsigned char>(h))
                                                    ? h - '0'
                                                    : std::tolower(h) - 'a' + 10);
    }
    std::string out;
    append_utf8(out, cp);
    return out;
  }

  Term prefixed_name() {
    std::string prefix;
    if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != ':' &&
        static_cast<unsigned char>(peek()) < 0x80)
      fail(at_end() ? "unexpected end of input" : std::string("unexpected character '") + peek() + "'");
    while (!at_end() && (is_name_char(peek()) || peek() == '.') && peek() != ':') prefix += get();
    if (peek() != ':') fail("expected prefixed name, got '" + prefix + "'");
    if (!prefix.empty() && prefix.back() == '.') fail("prefix name may not end with '.'");
    std::size_t prefix_col = col_ - prefix.size();
    get();  // ':'
    std::string local;
    while (!at_end()) {
      char c = peek();
      if (is_name_char(c) || c == ':' || c == '.') {
        local += get();
      } else if (c == '%' && std::isxdigit(static_cast<unsigned char>(peek(1))) &&
                 std::isxdigit(static_cast<unsigned char>(peek(2)))) {
        local += get();
        local += get();
        local += get();
      } else if (c == '\\' && peek(1) != '\0') {
        get();
        local += get();
      } else {
        break;
      }
    }
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_;
      --col_;
    }
    auto it = graph_.prefixes().find(prefix);
    if (it == graph_.prefixes().end())
      throw ParseError("undefined prefix '" + prefix + ":'", line_, prefix_col);
    return Term::iri(it->second + local);
  }

  Term blank_label() {
    get();
    get();  // "_:"
    std::string label;
    while (!at_end() && (is_name_char(peek()) || peek() == '.')) label += get();
    while (!label.empty() && label.back() == '.') {
      label.pop_back();
      --pos_;
      --col_;
    }
    if (label.empty()) fail("empty blank node label");
    return Term::blank(label);
  }

  Term fresh_blank() { return Term::blank("genid" + std::to_string(blank_counter_++)); }

  Term blank_property_list() {
    get();  // '['
    Term node = fresh_blank();
    skip_ws();
    if (peek() == ']') {
      get();
      return node;
    }
    predicate_object_list(node);
    expect(']');
    return node;
  }

  Term collection() {
    get();  // '('
    std::vector<Term> items;
    for (;;) {
      skip_ws();
      if (lenient_) {
        while (peek() == ';' || peek() == ',') {
          get();
          skip_ws();
        }
      }
      if (at_end()) fail("unterminated collection");
      if (peek() == ')') {
        get();
        break;
      }
      items.push_back(object_term());
    }
    Term nil = Term::iri(vocab::rdf_nil);
    if (items.empty()) return nil;
    std::vector<Term> cells;
    cells.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) cells.push_back(fresh_blank());
    for (std::size_t i = 0; i < items.size(); ++i) {
      graph_.insert(cells[i], Term::iri(vocab::rdf_first), items[i]);
      graph_.insert(cells[i], Term::iri(vocab::rdf_rest), i + 1 < items.size() ? cells[i + 1] : nil);
    }
    return cells.front();
  }

  Term rdf_literal() {
    std::string lexical = string_body();
    if (peek() == '@') {
      get();
      std::string lang;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-'))
        lang += get();
      if (lang.empty()) fail("empty language tag");
      return Term::literal(std::move(lexical), lang_marker + lang);
    }
    if (peek() == '^' && peek(1) == '^') {
      get();
      get();
      Term datatype = iri_term();
      return Term::literal(std::move(lexical), datatype.value());
    }
    return Term::literal(std::move(lexical), vocab::xsd_string);
  }

  std::string string_body() {
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
          get();
          get();
          get();
          return out;
        }
      }
      if (!long_form && (c == '\n' || c == '\r')) fail("newline in string literal");
      get();
      if (c != '\\') {
        out += c;
        continue;
      }
      if (at_end()) fail("unterminated escape");
      char e = peek();
      switch (e) {
        case 't': out += '\t'; get(); break;
        case 'n': out += '\n'; get(); break;
        case 'r': out += '\r'; get(); break;
        case 'b': out += '\b'; get(); break;
        case 'f': out += '\f'; get(); break;
        case '"': out += '"'; get(); break;
        case '\'': out += '\''; get(); break;
        case '\\': out += '\\'; get(); break;
        case 'u':
        case 'U': out += unicode_escape(); break;
        default: fail("invalid escape sequence");
      }
    }
  }

  Term numeric_literal() {
    std::string text;
    if (peek() == '+' || peek() == '-') text += get();
    while (std::isdigit(static_cast<unsigned char>(peek()))) text += get();
    bool decimal = false, exponent = false;
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      decimal = true;
      text += get();
      while (std::isdigit(static_cast<unsigned char>(peek()))) text += get();
    }
    if (peek() == 'e' || peek() == 'E') {
      exponent = true;
      text += get();
      if (peek() == '+' || peek() == '-') text += get();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed exponent");
      while (std::isdigit(static_cast<unsigned char>(peek()))) text += get();
    }
    if (text == "+" || text == "-" || text.empty()) fail("malformed number");
    const std::string& datatype =
        exponent ? vocab::xsd_double : (decimal ? vocab::xsd_decimal : vocab::xsd_integer);
    return Term::literal(std::move(text), datatype);
  }
};

bool valid_local_name(std::string_view local) {
  if (local.empty()) return true;
  unsigned char first = local.front();
  if (!(std::isalnum(first) || first == '_')) return false;
  if (local.back() == '.') return false;
  for (unsigned char c : local)
    if (!(std::isalnum(c) || c == '_' || c == '-' || c == '.')) return false;
  return true;
}

bool plain_integer(std::string_view lexical) {
  std::size_t i = (!lexical.empty() && (lexical[0] == '+' || lexical[0] == '-')) ? 1 : 0;
  if (i == lexical.size()) return false;
  for (; i < lexical.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(lexical[i]))) return false;
  return true;
}

}  // namespace

Graph parse_turtle(std::string_view text, const TurtleOptions& options) {
  return TurtleReader(text, options).run();
}

Graph read_turtle_file(const std::string& path, const TurtleOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_turtle(buffer.str(), options);
  } catch (const ParseError& e) {
    throw ParseError(e.message() + " (in " + path + ")", e.line(), e.column());
  }
}

std::string format_term(const Term& term, const PrefixMap& prefixes) {
  switch (term.kind()) {
    case TermKind::blank: return "_:" + term.value();
    case TermKind::iri: {
      const std::string* best_name = nullptr;
      std::size_t best_len = 0;
      for (const auto& [name, ns] : prefixes) {
        if (ns.size() < best_len || ns.empty() || !term.value().starts_with(ns)) continue;
        if (!valid_local_name(std::string_view(term.value()).substr(ns.size()))) continue;
        if (best_name == nullptr || ns.size() > best_len) {
          best_name = &name;
          best_len = ns.size();
        }
      }
      if (best_name != nullptr) return *best_name + ":" + term.value().substr(best_len);
      return "<" + term.value() + ">";
    }
    case TermKind::literal: break;
  }
  const std::string& dt = term.datatype();
  if (dt == vocab::xsd_string) return "\"" + escape_string(term.value()) + "\"";
  if (dt.starts_with(lang_marker))
    return "\"" + escape_string(term.value()) + "\"@" + dt.substr(lang_marker.size());
  if (dt == vocab::xsd_integer && plain_integer(term.value())) return term.value();
  if (dt == vocab::xsd_boolean && (term.value() == "true" || term.value() == "false"))
    return term.value();
  return "\"" + escape_string(term.value()) + "\"^^" + format_term(Term::iri(dt), prefixes);
}

std::string serialize_turtle(const Graph& g) {
  std::ostringstream out;
  for (const auto& [name, ns] : g.prefixes()) out << "@prefix " << name << ": <" << ns << "> .\n";
  if (g.empty()) return out.str();
  out << '\n';
  const Term rdf_type = Term::iri(vocab::rdf_type);
  const Term* subject = nullptr;
  const Term* predicate = nullptr;
  for (const auto& t : g) {
    if (subject == nullptr || t.subject != *subject) {
      if (subject != nullptr) out << " .\n";
      out << format_term(t.subject, g.prefixes()) << ' '
          << (t.predicate == rdf_type ? "a" : format_term(t.predicate, g.prefixes())) << ' ';
    } else if (t.predicate != *predicate) {
      out << " ;\n    "
          << (t.predicate == rdf_type ? "a" : format_term(t.predicate, g.prefixes())) << ' ';
    } else {
      out << ", ";
    }
    out << format_term(t.object, g.prefixes());
    subject = &t.subject;
    predicate = &t.predicate;
  }
  out << " .\n";
  return out.str();
}

}  // namespace ccv::rdf
