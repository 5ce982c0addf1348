#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ccv/repair/repair.hpp"

namespace ccv::bulk {

inline constexpr std::size_t contract_count = 19;
inline constexpr std::size_t obligation_count = 21;
inline constexpr std::size_t base_triple_count = 1374;

struct BulkCase {
  std::string id;
  std::uint64_t seed = 0;
  std::size_t target = 0;
  std::size_t inconsistencies = 0;  // validator violation count
  rdf::Graph graph;
};

struct BulkResult {
  std::string id;
  std::uint64_t seed = 0;
  std::size_t inconsistencies = 0;
  std::size_t models = 0;
  std::size_t changes = 0;
  bool conforms_after = false;
  double seconds = 0;  // validate + ground + compile + solve
  std::string error;   // empty on success

  bool passed() const { return error.empty() && models == 1 && conforms_after; }
};

/// 19 contracts, 21 obligations, consistent statuses and end dates, padded
/// with inert triples to exactly 1374 triples. Conforms to the CCV shapes.
rdf::Graph generate_base(std::uint64_t seed);

/// Adds extra statuses, end dates and violated states one at a time until
/// the validator reports at least `target` violations or nothing is left.
BulkCase inject(const rdf::Graph& base, std::uint64_t seed, std::size_t target);

/// Violation count with every injection applied.
std::size_t saturation(const rdf::Graph& base, std::uint64_t seed);

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t cases = 200;
  std::size_t max_inconsistencies = 3000;
  unsigned threads = 1;  // cases run in parallel
  repair::RepairOptions repair;
};

/// Case i uses a seed derived from (seed, i) and a target drawn from
/// [0, min(max_inconsistencies, saturation)]; case 0 always targets 0.
std::vector<BulkCase> generate_cases(const SuiteOptions& options);

/// Repairs one case with the CCV profile and checks the two criteria.
/// A conforming case counts the empty patch as its single model.
BulkResult run_case(const BulkCase& c, const repair::RepairOptions& options = {});

std::vector<BulkResult> run_suite(const std::vector<BulkCase>& cases, const SuiteOptions& options,
                                  const std::function<void(const BulkResult&)>& progress = {});

/// case,seed,inconsistencies,models,changes,conforms,seconds
std::string results_csv(const std::vector<BulkResult>& results);

/// Writes case-NNN.ttl files plus manifest.csv into `dir`.
void write_cases(const std::vector<BulkCase>& cases, const std::string& dir);
std::vector<BulkCase> read_cases(const std::string& dir);

}  // namespace ccv::bulk
