#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ccv/repair/universe.hpp"

namespace ccv::strategy {

using rdf::Term;
using repair::Action;
using repair::ValueFunction;

enum class PreferenceType { read_only, change };

struct Preference {
  Term path;
  Action action = Action::del;
  PreferenceType type = PreferenceType::read_only;
  std::variant<std::vector<Term>, ValueFunction> source;
  friend bool operator==(const Preference&, const Preference&) = default;
};

/// Forbids `action` on path values (all of them when `values` is empty).
struct ReadOnlyConstraint {
  Term path;
  Action action = Action::del;
  std::optional<std::vector<Term>> values;
  friend bool operator==(const ReadOnlyConstraint&, const ReadOnlyConstraint&) = default;
};

struct RepairStrategy {
  Term id;
  std::vector<Preference> preferences;
  std::vector<ReadOnlyConstraint> constraints;
  friend bool operator==(const RepairStrategy&, const RepairStrategy&) = default;
};

/// One strategy per shr:RepairStrategy instance, ordered by id. Throws
/// StrategyError on unknown shr: properties, missing actions, or a
/// preference carrying both values and a function.
std::vector<RepairStrategy> parse_strategy(const rdf::Graph& g);

/// Reads a strategy file, tolerating stray separators inside collections.
std::vector<RepairStrategy> read_strategy_file(const std::string& path);

/// Annotates a universe with weights, functions and forbidden flags. Never
/// adds or removes atoms.
repair::CandidateUniverse compile(const std::vector<RepairStrategy>& strategies,
                                  repair::CandidateUniverse universe, const rdf::Graph& g);

/// Values listed by addition preferences, as extra grounding candidates.
repair::GroundOptions ground_options(const std::vector<RepairStrategy>& strategies);

/// Directive table, one atom per line in canonical order.
std::string format_directives(const repair::CandidateUniverse& u, const rdf::PrefixMap& prefixes);

}  // namespace ccv::strategy
