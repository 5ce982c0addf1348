#include "ccv/rdf/graph.hpp"

#include <algorithm>

#include "ccv/rdf/vocab.hpp"

namespace ccv::rdf {

const PrefixMap& default_prefixes() {
  static const PrefixMap prefixes = {
      {"", std::string(vocab::test_ns)},
      {"fibo", std::string(vocab::fibo_ns)},
      {"rdf", std::string(vocab::rdf_ns)},
      {"sh", std::string(vocab::sh_ns)},
      {"shr", std::string(vocab::shr_ns)},
      {"smashHitCore", std::string(vocab::core_ns)},
      {"xsd", std::string(vocab::xsd_ns)},
  };
  return prefixes;
}

bool Graph::insert(const Triple& t) {
  if (!spo_.insert(t).second) return false;
  pos_.insert(t);
  return true;
}

bool Graph::erase(const Triple& t) {
  if (spo_.erase(t) == 0) return false;
  pos_.erase(t);
  return true;
}

std::vector<Term> Graph::objects(const Term& s, const Term& p) const {
  std::vector<Term> out;
  for (auto it = spo_.lower_bound(Triple{s, p, Term{}});
       it != spo_.end() && it->subject == s && it->predicate == p; ++it)
    out.push_back(it->object);
  return out;
}

std::vector<Term> Graph::subjects(const Term& p, const Term& o) const {
  std::vector<Term> out;
  for (auto it = pos_.lower_bound(Triple{Term{}, p, o});
       it != pos_.end() && it->predicate == p && it->object == o; ++it)
    out.push_back(it->subject);
  return out;
}

std::vector<Triple> Graph::about(const Term& s) const {
  std::vector<Triple> out;
  for (auto it = spo_.lower_bound(Triple{s, Term{}, Term{}}); it != spo_.end() && it->subject == s;
       ++it)
    out.push_back(*it);
  return out;
}

std::vector<Triple> Graph::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
  std::vector<Triple> out;
  auto keep = [&](const Triple& t) {
    return (!s || t.subject == *s) && (!p || t.predicate == *p) && (!o || t.object == *o);
  };
  if (s) {
    for (const auto& t : about(*s))
      if (keep(t)) out.push_back(t);
  } else if (p) {
    for (auto it = pos_.lower_bound(Triple{Term{}, *p, o.value_or(Term{})});
         it != pos_.end() && it->predicate == *p; ++it) {
      if (o && it->object != *o) break;
      out.push_back(*it);
    }
    std::sort(out.begin(), out.end());
  } else {
    for (const auto& t : spo_)
      if (keep(t)) out.push_back(t);
  }
  return out;
}

Graph apply_patch(const Graph& g, const std::set<Triple>& additions,
                  const std::set<Triple>& deletions) {
  Graph out = g;
  for (const auto& t : deletions) out.erase(t);
  for (const auto& t : additions) out.insert(t);
  return out;
}

}  // namespace ccv::rdf
