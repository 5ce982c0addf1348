#pragma once

#include <map>
#include <string>
#include <vector>

#include "ccv/error.hpp"
#include "ccv/repair/model.hpp"
#include "ccv/shacl/validate.hpp"

namespace ccv::repair {

/// A violation no candidate atom can touch, or no subset can fix.
class UnrepairableError : public Error {
public:
  UnrepairableError(const std::string& message, std::vector<std::string> blocking)
      : Error(message), blocking_(std::move(blocking)) {}
  /// "shape @ focus" for every blocking constraint instance.
  const std::vector<std::string>& blocking() const noexcept { return blocking_; }

private:
  std::vector<std::string> blocking_;
};

/// Strategy annotations on one atom. Constraints dominate preferences.
struct Candidate {
  RepairAtom atom;
  long long minimize = 0;
  long long maximize = 0;
  bool forbidden = false;

  /// Static weight contribution when the atom is chosen.
  long long weight() const { return minimize - maximize; }
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

enum class ValueFunction { min_value, max_value };

/// State-dependent deletion preference on a predicate: deleting (X,p,Y)
/// costs 1 when some (X,p,Z) survives in the repaired graph with Y >= Z
/// (max_value) or Y <= Z (min_value).
struct FunctionPreference {
  Term predicate;
  ValueFunction function = ValueFunction::max_value;
  friend bool operator==(const FunctionPreference&, const FunctionPreference&) = default;
};

struct CandidateUniverse {
  std::vector<Candidate> atoms;  // canonical atom order
  std::vector<FunctionPreference> functions;
  std::vector<std::string> notes;

  const Candidate* find(const RepairAtom& a) const;
  friend bool operator==(const CandidateUniverse&, const CandidateUniverse&) = default;
};

struct GroundOptions {
  /// Extra addition values per predicate (strategy-preferred values).
  std::map<Term, std::vector<Term>> add_values;
};

/// A (shape, focus node) pair; shape indexes the shapes vector.
struct Instance {
  std::size_t shape = 0;
  Term focus;
  friend auto operator<=>(const Instance&, const Instance&) = default;
  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Candidate atoms for the violations in `report`, closed under lookahead:
/// every instance whose evaluation over g plus all candidate additions reads
/// a candidate triple contributes its own candidates, until nothing changes.
/// Throws UnrepairableError when a violated instance gets no candidate.
CandidateUniverse ground(const rdf::Graph& g, const std::vector<shacl::NodeShape>& shapes,
                         const shacl::ValidationReport& report, const GroundOptions& options = {});

/// Every target instance of every shape in g.
std::vector<Instance> all_instances(const rdf::Graph& g, const std::vector<shacl::NodeShape>& shapes);

std::string describe(const Instance& i, const std::vector<shacl::NodeShape>& shapes);

}  // namespace ccv::repair
