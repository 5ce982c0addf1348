#include "ccv/profile.hpp"

#include "ccv/rdf/turtle.hpp"

namespace ccv::profile {
namespace detail {
extern const std::string_view shapes_turtle;
extern const std::string_view strategies_turtle;
}  // namespace detail

std::string_view shapes_text() { return detail::shapes_turtle; }
std::string_view strategies_text() { return detail::strategies_turtle; }

rdf::Graph shapes_graph() { return rdf::parse_turtle(shapes_text()); }

rdf::Graph strategies_graph() {
  rdf::TurtleOptions options;
  options.lenient_collections = true;
  return rdf::parse_turtle(strategies_text(), options);
}

const std::vector<shacl::NodeShape>& shapes() {
  static const std::vector<shacl::NodeShape> parsed = shacl::parse_shapes(shapes_graph());
  return parsed;
}

}  // namespace ccv::profile
