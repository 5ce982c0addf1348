#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccv/rdf/term.hpp"

namespace ccv::rdf {

/// Prefix name (without the colon) to namespace IRI.
using PrefixMap = std::map<std::string, std::string>;

/// sh, shr, rdf, xsd, fibo, smashHitCore and the empty test prefix.
const PrefixMap& default_prefixes();

namespace detail {
struct PosLess {
  bool operator()(const Triple& a, const Triple& b) const {
    if (auto c = a.predicate <=> b.predicate; c != 0) return c < 0;
    if (auto c = a.object <=> b.object; c != 0) return c < 0;
    return a.subject < b.subject;
  }
};
}  // namespace detail

/// Set of triples with (s,p,o) and (p,o,s) indexes.
class Graph {
public:
  using const_iterator = std::set<Triple>::const_iterator;

  Graph() : prefixes_(default_prefixes()) {}

  /// Returns false when the triple was already present.
  bool insert(const Triple& t);
  bool insert(const Term& s, const Term& p, const Term& o) { return insert(Triple{s, p, o}); }
  bool erase(const Triple& t);

  bool contains(const Triple& t) const { return spo_.contains(t); }
  std::size_t size() const noexcept { return spo_.size(); }
  bool empty() const noexcept { return spo_.empty(); }

  const_iterator begin() const { return spo_.begin(); }
  const_iterator end() const { return spo_.end(); }
  const std::set<Triple>& triples() const noexcept { return spo_; }

  /// Objects of (s, p, ?), in canonical order.
  std::vector<Term> objects(const Term& s, const Term& p) const;
  /// Subjects of (?, p, o), in canonical order.
  std::vector<Term> subjects(const Term& p, const Term& o) const;
  /// All triples with subject s.
  std::vector<Triple> about(const Term& s) const;
  /// Triples matching the bound positions.
  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const;

  PrefixMap& prefixes() noexcept { return prefixes_; }
  const PrefixMap& prefixes() const noexcept { return prefixes_; }

  /// Triple-set equality; prefix maps are presentation only.
  friend bool operator==(const Graph& a, const Graph& b) { return a.spo_ == b.spo_; }

private:
  std::set<Triple> spo_;
  std::set<Triple, detail::PosLess> pos_;
  PrefixMap prefixes_;
};

/// (g \ deletions) ∪ additions. Deleting an absent triple is a no-op.
Graph apply_patch(const Graph& g, const std::set<Triple>& additions,
                  const std::set<Triple>& deletions);

}  // namespace ccv::rdf
