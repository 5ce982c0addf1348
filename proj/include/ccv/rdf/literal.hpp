#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ccv/rdf/term.hpp"

namespace ccv::rdf {

enum class LiteralOrder { less, equal, greater, incomparable };

struct LiteralComparison {
  LiteralOrder order = LiteralOrder::incomparable;
  /// Set when one side's lexical form is invalid for its datatype.
  bool malformed = false;
};

/// Orders two literals within a datatype family: temporal (xsd:dateTime,
/// xsd:date) by instant, numeric (xsd:integer and friends, xsd:decimal) by
/// value, xsd:string lexicographically. Anything else is incomparable.
LiteralComparison compare_literals(const Term& a, const Term& b);

/// Convenience: true iff a <= b under compare_literals.
bool literal_less_or_equal(const Term& a, const Term& b);

/// Canonical UTC form "YYYY-MM-DDThh:mm:ss[.fff]" of an xsd:dateTime lexical
/// form. Date-only input is read as midnight; a missing offset is read as UTC.
std::optional<std::string> canonical_date_time(std::string_view lexical);

}  // namespace ccv::rdf
