#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <set>
#include <vector>

#include "ccv/rdf/literal.hpp"
#include "ccv/rdf/turtle.hpp"
#include "ccv/repair/universe.hpp"
#include "ccv/strategy/strategy.hpp"
#include "fixtures.hpp"

namespace ccv::testing {

// ---- the consistency requirements, by quantifier enumeration ------------------
//
// Every variable ranges over all terms of the graph; atoms are triple lookups.

struct Formulas {
  const rdf::Graph& g;
  std::set<rdf::Term> terms;
  rdf::Term type = iri(vocab::rdf_type);
  rdf::Term contract = iri(vocab::contract_class), obligation = iri(vocab::obligation_class);
  rdf::Term status = iri(vocab::has_contract_status), obligations = iri(vocab::has_obligations),
            state = iri(vocab::has_state), end_date = iri(vocab::has_end_date);

  explicit Formulas(const rdf::Graph& graph) : g(graph) {
    for (const auto& t : g) {
      terms.insert(t.subject);
      terms.insert(t.object);
    }
  }

  bool holds(const rdf::Term& s, const rdf::Term& p, const rdf::Term& o) const {
    return g.contains(rdf::Triple{s, p, o});
  }

  // Contract(x) -> exactly one y with hasContractStatus(x,y), and y is a valid status.
  bool cr1() const {
    const std::vector<rdf::Term> valid{core("statusPending"), core("statusFulfilled"), core("statusViolated")};
    for (const auto& x : terms) {
      if (!holds(x, type, contract)) continue;
      int count = 0;
      for (const auto& y : terms) {
        if (!holds(x, status, y)) continue;
        ++count;
        if (std::find(valid.begin(), valid.end(), y) == valid.end()) return false;
      }
      if (count != 1) return false;
    }
    return true;
  }

  // Obligation(y) -> exactly one end date w, and hasObligations(x,y) with
  // hasEndDate(x,z) implies w <= z.
  bool cr2() const {
    for (const auto& y : terms) {
      if (!holds(y, type, obligation)) continue;
      int count = 0;
      for (const auto& w : terms) count += holds(y, end_date, w);
      if (count != 1) return false;
      for (const auto& x : terms) {
        if (!holds(x, obligations, y)) continue;
        for (const auto& z : terms)
          for (const auto& w : terms)
            if (holds(x, end_date, z) && holds(y, end_date, w) && !rdf::literal_less_or_equal(w, z))
              return false;
      }
    }
    return true;
  }

  // Contract(x), hasObligations(x,y), hasState(y, violated) -> hasContractStatus(x, violated).
  bool cr3() const {
    for (const auto& x : terms) {
      if (!holds(x, type, contract)) continue;
      for (const auto& y : terms)
        if (holds(x, obligations, y) && holds(y, state, core("ViolatedState")) &&
            !holds(x, status, core("statusViolated")))
          return false;
    }
    return true;
  }
};

// ---- repair by exhaustive subset enumeration --------------------------------------

inline long long oracle_weight(const rdf::Graph& after, const repair::CandidateUniverse& u,
                               const std::vector<const repair::Candidate*>& chosen) {
  long long w = 0;
  for (const auto* c : chosen) {
    w += c->minimize - c->maximize;
    if (c->atom.action != repair::Action::del) continue;
    const auto& t = c->atom.triple;
    for (const auto& f : u.functions) {
      if (f.predicate != t.predicate) continue;
      bool costly = false;
      for (const auto& z : after.objects(t.subject, t.predicate)) {
        auto order = rdf::compare_literals(t.object, z).order;
        costly |= order == rdf::LiteralOrder::equal ||
                  order == (f.function == repair::ValueFunction::max_value ? rdf::LiteralOrder::greater
                                                                           : rdf::LiteralOrder::less);
      }
      w += costly;
    }
  }
  return w;
}

/// All cost-minimal feasible subsets of the permitted atoms, sorted like the
/// solver's output; empty when no subset repairs the graph.
inline std::vector<repair::RepairModel> brute_force(const rdf::Graph& g,
                                                    const std::vector<shacl::NodeShape>& shapes,
                                                    const repair::CandidateUniverse& u) {
  std::vector<const repair::Candidate*> permitted;
  for (const auto& c : u.atoms)
    if (!c.forbidden) permitted.push_back(&c);
  std::vector<repair::RepairModel> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << permitted.size()); ++mask) {
    repair::RepairModel m;
    std::vector<const repair::Candidate*> chosen;
    for (std::size_t i = 0; i < permitted.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      chosen.push_back(permitted[i]);
      const auto& a = permitted[i]->atom;
      (a.action == repair::Action::add ? m.additions : m.deletions).insert(a.triple);
    }
    rdf::Graph after = rdf::apply_patch(g, m.additions, m.deletions);
    if (!shacl::validate(after, shapes).conforms) continue;
    m.cost = repair::Cost{chosen.size(), oracle_weight(after, u, chosen)};
    if (!best.empty() && m.cost > best.front().cost) continue;
    if (!best.empty() && m.cost < best.front().cost) best.clear();
    best.push_back(std::move(m));
  }
  std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) { return a.atoms() < b.atoms(); });
  return best;
}

// ---- random inputs for the solver oracle --------------------------------------

inline std::vector<shacl::NodeShape> all_shapes() {
  auto shapes = ccv_shapes();
  for (auto& s : shacl::parse_shapes(load("profile/contract-shape.ttl"))) shapes.push_back(s);
  return shapes;
}

inline std::vector<strategy::RepairStrategy> random_strategies(std::mt19937& rng) {
  auto profile = strategy::read_strategy_file(data_path("profile/ccv-strategies.ttl"));
  std::vector<strategy::RepairStrategy> out;
  std::uniform_int_distribution<int> coin(0, 1);
  for (const auto& s : profile)
    if (coin(rng)) out.push_back(s);
  if (coin(rng)) {
    std::vector<rdf::Term> order{core("statusPending"), core("statusFulfilled"), core("statusViolated")};
    std::shuffle(order.begin(), order.end(), rng);
    strategy::Preference p{rdf::Term::iri(vocab::has_contract_status), coin(rng) ? repair::Action::add : repair::Action::del,
                           coin(rng) ? strategy::PreferenceType::change : strategy::PreferenceType::read_only,
                           order};
    out.push_back({ex("Shuffled"), {p}, {}});
  }
  if (coin(rng) && coin(rng)) {
    strategy::Preference p{rdf::Term::iri(vocab::has_end_date), repair::Action::del, strategy::PreferenceType::read_only,
                           repair::ValueFunction::min_value};
    out.push_back({ex("Earliest"), {p}, {}});
  }
  return out;
}

inline std::vector<shacl::NodeShape> random_shapes(std::mt19937& rng) {
  auto pool = all_shapes();
  std::vector<shacl::NodeShape> out;
  while (out.empty())
    for (const auto& s : pool)
      if (std::uniform_int_distribution<int>(0, 1)(rng)) out.push_back(s);
  return out;
}

}  // namespace ccv::testing

namespace ccv::repair {

inline void PrintTo(const RepairModel& m, std::ostream* os) {
  const auto& prefixes = rdf::default_prefixes();
  *os << "{";
  for (const auto& a : m.atoms())
    *os << (a.action == Action::add ? " +" : " -") << rdf::format_term(a.triple.subject, prefixes) << ' '
        << rdf::format_term(a.triple.predicate, prefixes) << ' ' << rdf::format_term(a.triple.object, prefixes);
  *os << " | changes=" << m.cost.changes << " weight=" << m.cost.weight << " }";
}

}  // namespace ccv::repair
