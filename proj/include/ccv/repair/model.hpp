#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "ccv/rdf/graph.hpp"

namespace ccv::repair {

using rdf::Term;
using rdf::Triple;

enum class Action : unsigned char { add, del };

std::string_view action_name(Action a);

/// One triple addition or deletion. Ordered by triple, then action.
struct RepairAtom {
  Triple triple;
  Action action = Action::add;
  friend bool operator==(const RepairAtom&, const RepairAtom&) = default;
  friend auto operator<=>(const RepairAtom&, const RepairAtom&) = default;
};

struct Cost {
  std::size_t changes = 0;
  long long weight = 0;
  friend bool operator==(const Cost&, const Cost&) = default;
  friend auto operator<=>(const Cost&, const Cost&) = default;
};

struct RepairModel {
  std::set<Triple> additions;
  std::set<Triple> deletions;
  Cost cost;

  /// Additions and deletions as atoms in canonical order.
  std::vector<RepairAtom> atoms() const;
  bool empty() const { return additions.empty() && deletions.empty(); }
  friend bool operator==(const RepairModel&, const RepairModel&) = default;
};

/// Canonical patch document:
///   # cost changes=<n> weight=<w>
///   # additions
///   <Turtle>
///   # deletions
///   <Turtle>
std::string serialize_patch(const RepairModel& m);
/// Inverse of serialize_patch. Throws ParseError on malformed documents.
RepairModel parse_patch(std::string_view text);

/// Content hash of the canonical patch document (16 hex digits).
std::string model_id(const RepairModel& m);

/// Single patch equivalent to applying `first` and then `second` to `g`.
RepairModel compose(const rdf::Graph& g, const RepairModel& first, const RepairModel& second);

}  // namespace ccv::repair
