#include "ccv/rdf/term.hpp"

#include <cstdio>

#include "ccv/rdf/literal.hpp"
#include "ccv/rdf/vocab.hpp"

namespace ccv::rdf {

Term Term::iri(std::string value) {
  Term t;
  t.kind_ = TermKind::iri;
  t.value_ = std::move(value);
  return t;
}

Term Term::literal(std::string lexical, std::string datatype) {
  Term t;
  t.kind_ = TermKind::literal;
  t.datatype_ = datatype.empty() ? vocab::xsd_string : std::move(datatype);
  if (t.datatype_ == vocab::xsd_date_time) {
    if (auto canonical = canonical_date_time(lexical)) lexical = std::move(*canonical);
  }
  t.value_ = std::move(lexical);
  return t;
}

Term Term::string_literal(std::string lexical) { return literal(std::move(lexical), vocab::xsd_string); }

Term Term::integer(long long value) { return literal(std::to_string(value), vocab::xsd_integer); }

Term Term::date_time(std::string lexical) { return literal(std::move(lexical), vocab::xsd_date_time); }

Term Term::blank(std::string label) {
  Term t;
  t.kind_ = TermKind::blank;
  t.value_ = std::move(label);
  return t;
}

std::string escape_string(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (unsigned char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

std::string Term::to_ntriples() const {
  switch (kind_) {
    case TermKind::iri: return "<" + value_ + ">";
    case TermKind::blank: return "_:" + value_;
    case TermKind::literal: break;
  }
  return "\"" + escape_string(value_) + "\"^^<" + datatype_ + ">";
}

std::ostream& operator<<(std::ostream& os, const Term& term) { return os << term.to_ntriples(); }

std::ostream& operator<<(std::ostream& os, const Triple& triple) {
  return os << triple.subject << ' ' << triple.predicate << ' ' << triple.object << " .";
}

}  // namespace ccv::rdf
