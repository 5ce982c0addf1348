#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "ccv/rdf/graph.hpp"

namespace ccv::rdf {

/// Read-only view of (base \ deletions) ∪ additions without copying base.
/// Same lookup interface as Graph (objects/subjects), same canonical order.
class PatchedView {
public:
  PatchedView(const Graph& base, const std::set<Triple>& additions,
              const std::set<Triple>& deletions)
      : base_(base), additions_(additions), deletions_(deletions) {}

  std::vector<Term> objects(const Term& s, const Term& p) const {
    std::vector<Term> out;
    for (auto& o : base_.objects(s, p))
      if (deletions_.empty() || !deletions_.contains(Triple{s, p, o})) out.push_back(std::move(o));
    for (const auto& t : additions_)
      if (t.subject == s && t.predicate == p && !kept(t)) out.push_back(t.object);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Term> subjects(const Term& p, const Term& o) const {
    std::vector<Term> out;
    for (auto& s : base_.subjects(p, o))
      if (deletions_.empty() || !deletions_.contains(Triple{s, p, o})) out.push_back(std::move(s));
    for (const auto& t : additions_)
      if (t.predicate == p && t.object == o && !kept(t)) out.push_back(t.subject);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool contains(const Triple& t) const {
    if (additions_.contains(t)) return true;
    return base_.contains(t) && !deletions_.contains(t);
  }

private:
  bool kept(const Triple& t) const { return base_.contains(t) && !deletions_.contains(t); }

  const Graph& base_;
  const std::set<Triple>& additions_;
  const std::set<Triple>& deletions_;
};

}  // namespace ccv::rdf
