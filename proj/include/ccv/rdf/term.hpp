#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace ccv::rdf {

// Declaration order fixes the canonical term order: literals, IRIs, blank nodes.
enum class TermKind : std::uint8_t { literal, iri, blank };

/// An RDF term. Literals always carry a datatype; xsd:dateTime lexical forms
/// are normalized on construction so equality is value-based.
class Term {
public:
  Term() = default;

  static Term iri(std::string value);
  static Term literal(std::string lexical, std::string datatype);
  static Term string_literal(std::string lexical);
  static Term integer(long long value);
  static Term date_time(std::string lexical);
  static Term blank(std::string label);

  TermKind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == TermKind::iri; }
  bool is_literal() const noexcept { return kind_ == TermKind::literal; }
  bool is_blank() const noexcept { return kind_ == TermKind::blank; }

  /// IRI string, literal lexical form or blank node label.
  const std::string& value() const noexcept { return value_; }
  /// Datatype IRI for literals, empty otherwise.
  const std::string& datatype() const noexcept { return datatype_; }

  /// N-Triples style rendering: <iri>, "lex"^^<dt>, _:label.
  std::string to_ntriples() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term&, const Term&) = default;

private:
  TermKind kind_ = TermKind::literal;
  std::string value_;
  std::string datatype_;
};

std::ostream& operator<<(std::ostream& os, const Term& term);

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend std::strong_ordering operator<=>(const Triple&, const Triple&) = default;
};

std::ostream& operator<<(std::ostream& os, const Triple& triple);

/// Escapes a lexical form for use inside a double-quoted Turtle/N-Triples string.
std::string escape_string(const std::string& text);

}  // namespace ccv::rdf

template <>
struct std::hash<ccv::rdf::Term> {
  std::size_t operator()(const ccv::rdf::Term& t) const noexcept {
    std::size_t h = std::hash<std::string>{}(t.value());
    h ^= std::hash<std::string>{}(t.datatype()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(t.kind());
  }
};
