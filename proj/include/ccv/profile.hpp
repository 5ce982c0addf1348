#pragma once

#include <string_view>
#include <vector>

#include "ccv/rdf/graph.hpp"
#include "ccv/shacl/shapes.hpp"

namespace ccv::profile {

/// Turtle text of the bundled CCV shapes and strategies.
std::string_view shapes_text();
std::string_view strategies_text();

rdf::Graph shapes_graph();
rdf::Graph strategies_graph();

/// Parsed CCV shapes (functional status, end dates, violated contracts).
const std::vector<shacl::NodeShape>& shapes();

}  // namespace ccv::profile
