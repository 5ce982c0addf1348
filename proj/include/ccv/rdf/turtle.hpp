#pragma once

#include <string>
#include <string_view>

#include "ccv/rdf/graph.hpp"

namespace ccv::rdf {

struct TurtleOptions {
  /// Base IRI for resolving relative IRIs; empty means relative IRIs are errors.
  std::string base;
  /// Skip stray ';' and ',' inside collections, e.g. "( :a; )".
  bool lenient_collections = false;
};

/// Parses the Turtle subset used for contract data, shapes and strategies.
/// Throws ParseError with line/column on malformed input.
Graph parse_turtle(std::string_view text, const TurtleOptions& options = {});

/// Reads and parses a file. Throws ccv::Error if the file cannot be read.
Graph read_turtle_file(const std::string& path, const TurtleOptions& options = {});

/// Canonical Turtle: all prefix declarations sorted by name, then one
/// statement per subject, sorted by subject, predicate and object.
std::string serialize_turtle(const Graph& g);

/// Prefixed name when a namespace of `prefixes` yields a valid local name,
/// otherwise the <iri> / literal / blank node form.
std::string format_term(const Term& term, const PrefixMap& prefixes);

}  // namespace ccv::rdf
