#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ccv/repair/universe.hpp"

namespace ccv::repair {

/// The search ran out of budget. The incumbent, when present, is feasible
/// but not proven optimal.
class BudgetError : public Error {
public:
  BudgetError(const std::string& message, std::optional<RepairModel> incumbent)
      : Error(message), incumbent_(std::move(incumbent)) {}
  const std::optional<RepairModel>& incumbent() const noexcept { return incumbent_; }

private:
  std::optional<RepairModel> incumbent_;
};

struct SolveOptions {
  /// Maximum number of candidate subsets checked, summed over components.
  std::uint64_t budget = 1'000'000;
  /// Worker threads for independent components; results do not depend on it.
  unsigned threads = 1;
  /// Cap on returned tied optima; extra combinations are dropped after sorting.
  std::size_t max_models = 10'000;
};

struct SolveStats {
  std::size_t components = 0;
  std::uint64_t evaluations = 0;
  bool truncated = false;
};

/// Every feasible atom subset that is optimal under (cardinality, weight),
/// sorted by canonical atom order. Forbidden atoms never occur.
std::vector<RepairModel> solve(const rdf::Graph& g, const std::vector<shacl::NodeShape>& shapes,
                               const CandidateUniverse& universe, const SolveOptions& options = {},
                               SolveStats* stats = nullptr);

/// Weight of applying `model` to g: static atom weights plus function costs.
long long model_weight(const rdf::Graph& g, const CandidateUniverse& universe, const RepairModel& model);

}  // namespace ccv::repair
