#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ccv/rdf/graph.hpp"
#include "ccv/rdf/term.hpp"

namespace ccv::shacl {

using rdf::Term;

/// SHACL property path restricted to predicate, inverse and sequence paths.
class Path {
public:
  enum class Kind { predicate, inverse, sequence };

  static Path predicate(Term iri);
  static Path inverse(Path inner);
  /// Requires at least two steps.
  static Path sequence(std::vector<Path> steps);

  Kind kind() const noexcept { return kind_; }
  /// The IRI of a predicate path.
  const Term& iri() const noexcept { return iri_; }
  /// Wrapped path for inverse (one element) or the steps of a sequence.
  const std::vector<Path>& steps() const noexcept { return steps_; }

  /// SPARQL-style rendering, e.g. ^smashHitCore:hasObligations/smashHitCore:hasEndDate.
  std::string to_string(const rdf::PrefixMap& prefixes) const;

  friend bool operator==(const Path&, const Path&) = default;

private:
  Kind kind_ = Kind::predicate;
  Term iri_;
  std::vector<Path> steps_;
};

struct ShapeBody;

struct MinCount {
  std::size_t count = 0;
  friend bool operator==(const MinCount&, const MinCount&) = default;
};
struct MaxCount {
  std::size_t count = 0;
  friend bool operator==(const MaxCount&, const MaxCount&) = default;
};
struct In {
  std::vector<Term> values;
  friend bool operator==(const In&, const In&) = default;
};
struct HasValue {
  Term value;
  friend bool operator==(const HasValue&, const HasValue&) = default;
};
struct LessThanOrEquals {
  Term property;
  friend bool operator==(const LessThanOrEquals&, const LessThanOrEquals&) = default;
};
struct Not {
  std::shared_ptr<const ShapeBody> body;
  friend bool operator==(const Not& a, const Not& b);
};
struct Or {
  std::vector<ShapeBody> bodies;
  friend bool operator==(const Or&, const Or&);
};

using Constraint = std::variant<MinCount, MaxCount, In, HasValue, LessThanOrEquals, Not, Or>;

enum class Component { min_count, max_count, in, has_value, less_than_or_equals, not_, or_ };

Component component_of(const Constraint& c);
/// SHACL component local name, e.g. "MinCountConstraintComponent".
std::string_view component_name(Component c);

struct PropertyShape {
  Path path;
  std::vector<Constraint> constraints;
  friend bool operator==(const PropertyShape&, const PropertyShape&) = default;
};

struct ShapeBody {
  std::vector<PropertyShape> properties;
  std::vector<Constraint> node_constraints;
  friend bool operator==(const ShapeBody&, const ShapeBody&) = default;
};

struct NodeShape {
  Term id;
  Term target_class;
  ShapeBody body;
  friend bool operator==(const NodeShape&, const NodeShape&) = default;
};

/// Decodes every sh:NodeShape with a sh:targetClass, ordered by shape id.
/// Throws UnsupportedShapeError for constructs outside the supported fragment.
std::vector<NodeShape> parse_shapes(const rdf::Graph& shapes_graph);

/// Every term listed under sh:in or sh:hasValue in any shape.
std::set<Term> shape_constants(const std::vector<NodeShape>& shapes);

/// Encodes shapes back to RDF using fresh blank nodes for nested nodes.
rdf::Graph shapes_to_graph(const std::vector<NodeShape>& shapes);

/// Reads an RDF collection starting at `head`. Throws UnsupportedShapeError
/// when the list is malformed (missing first/rest, branching, cycles).
std::vector<Term> read_list(const rdf::Graph& g, const Term& head);

}  // namespace ccv::shacl
