#pragma once

#include <chrono>

#include "ccv/repair/solver.hpp"
#include "ccv/strategy/strategy.hpp"

namespace ccv::repair {

/// Applying a model kept exposing new violations past the iteration bound.
class NonTerminatingRepairError : public Error {
public:
  using Error::Error;
};

struct RepairOptions {
  SolveOptions solve;
  unsigned fixpoint_bound = 8;
};

struct RepairResult {
  shacl::ValidationReport report;
  std::vector<RepairModel> models;
  CandidateUniverse universe;  // of the first iteration
  SolveStats stats;
  unsigned iterations = 0;
  std::chrono::duration<double> solve_time{};  // ground + compile + solve
};

/// Validate, then ground, compile strategies and solve. Every returned model
/// makes g conform; when one would not, repair continues on its result and
/// the patches are composed.
RepairResult repair(const rdf::Graph& g, const std::vector<shacl::NodeShape>& shapes,
                    const std::vector<strategy::RepairStrategy>& strategies,
                    const RepairOptions& options = {});

}  // namespace ccv::repair
