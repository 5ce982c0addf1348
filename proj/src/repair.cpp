#include "ccv/repair/repair.hpp"

#include <algorithm>

namespace ccv::repair {
namespace {

using Clock = std::chrono::steady_clock;

struct Round {
  std::vector<RepairModel> models;
  CandidateUniverse universe;
  SolveStats stats;
};

Round solve_round(const rdf::Graph& g, const std::vector<shacl::NodeShape>& shapes,
                  const shacl::ValidationReport& report,
                  const std::vector<strategy::RepairStrategy>& strategies, const RepairOptions& options) {
  Round r;
  r.universe = strategy::compile(strategies, ground(g, shapes, report, strategy::ground_options(strategies)), g);
  r.models = solve(g, shapes, r.universe, options.solve, &r.stats);
  return r;
}

}  // namespace

RepairResult repair(const rdf::Graph& g, const std::vector<shacl::NodeShape>& shapes,
                    const std::vector<strategy::RepairStrategy>& strategies, const RepairOptions& options) {
  RepairResult result;
  result.report = shacl::validate(g, shapes);
  if (result.report.conforms) return result;

  auto start = Clock::now();
  Round first = solve_round(g, shapes, result.report, strategies, options);
  result.universe = first.universe;
  result.stats = first.stats;
  result.iterations = 1;

  for (auto& model : first.models) {
    RepairModel total = model;
    for (unsigned round = 1;; ++round) {
      rdf::Graph patched = rdf::apply_patch(g, total.additions, total.deletions);
      auto report = shacl::validate(patched, shapes);
      if (report.conforms) break;
      if (round >= options.fixpoint_bound)
        throw NonTerminatingRepairError("repair did not reach conformance within " +
                                        std::to_string(options.fixpoint_bound) + " iterations");
      Round next = solve_round(patched, shapes, report, strategies, options);
      total = compose(g, total, next.models.front());
      result.iterations = std::max(result.iterations, round + 1);
    }
    model = std::move(total);
  }
  result.models = std::move(first.models);
  std::sort(result.models.begin(), result.models.end(),
            [](const RepairModel& a, const RepairModel& b) { return a.atoms() < b.atoms(); });
  result.models.erase(std::unique(result.models.begin(), result.models.end()), result.models.end());
  result.solve_time = Clock::now() - start;
  return result;
}

}  // namespace ccv::repair
