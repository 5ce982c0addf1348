#include "ccv/repair/solver.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <map>
#include <numeric>

#include "ccv/rdf/view.hpp"

namespace ccv::repair {
namespace {

using View = rdf::PatchedView;

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

template <class Lookup>
long long function_cost(const CandidateUniverse& u, const Triple& deleted, const Lookup& after) {
  long long cost = 0;
  for (const auto& f : u.functions) {
    if (f.predicate != deleted.predicate) continue;
    auto worse = f.function == ValueFunction::max_value ? rdf::LiteralOrder::greater : rdf::LiteralOrder::less;
    for (const auto& z : after.objects(deleted.subject, deleted.predicate)) {
      auto order = rdf::compare_literals(deleted.object, z).order;
      if (order == worse || order == rdf::LiteralOrder::equal) {
        ++cost;
        break;
      }
    }
  }
  return cost;
}

struct Component {
  std::vector<const Candidate*> atoms;
  std::vector<Instance> instances;
};

struct Choice {
  std::vector<std::size_t> picked;  // indexes into Component::atoms
  long long weight = 0;
};

struct ComponentResult {
  std::vector<Choice> optima;
  std::size_t cardinality = 0;
  std::uint64_t evaluations = 0;
  bool exhausted = false;  // budget hit
  bool infeasible = false;
};

class ComponentSearch {
public:
  ComponentSearch(const rdf::Graph& g, const std::vector<shacl::NodeShape>& shapes,
                  const CandidateUniverse& u, const Component& c, std::uint64_t budget)
      : g_(g), shapes_(shapes), u_(u), c_(c), budget_(budget) {}

  ComponentResult run() {
    ComponentResult r;
    const std::size_t n = c_.atoms.size();
    std::vector<std::size_t> pick;
    for (std::size_t k = 0; k <= n; ++k) {
      pick.resize(k);
      std::iota(pick.begin(), pick.end(), 0);
      for (;;) {
        if (r.evaluations >= budget_) {
          r.exhausted = true;
          return r;
        }
        ++r.evaluations;
        if (auto w = feasible_weight(pick)) {
          if (r.optima.empty() || *w < r.optima.front().weight) r.optima.clear();
          if (r.optima.empty() || *w == r.optima.front().weight) r.optima.push_back({pick, *w});
        }
        if (!next_combination(pick, n)) break;
      }
      if (!r.optima.empty()) {
        r.cardinality = k;
        return r;
      }
    }
    r.infeasible = true;
    return r;
  }

private:
  const rdf::Graph& g_;
  const std::vector<shacl::NodeShape>& shapes_;
  const CandidateUniverse& u_;
  const Component& c_;
  std::uint64_t budget_;

  static bool next_combination(std::vector<std::size_t>& pick, std::size_t n) {
    std::size_t k = pick.size();
    for (std::size_t i = k; i-- > 0;) {
      if (pick[i] < n - k + i) {
        ++pick[i];
        for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

  std::optional<long long> feasible_weight(const std::vector<std::size_t>& pick) const {
    std::set<Triple> adds, dels;
    for (auto i : pick) {
      const RepairAtom& a = c_.atoms[i]->atom;
      (a.action == Action::add ? adds : dels).insert(a.triple);
    }
    // An atom set that adds and deletes the same triple is not a patch.
    for (const auto& t : adds)
      if (dels.contains(t)) return std::nullopt;
    View view(g_, adds, dels);
    shacl::Evaluator<View> eval(view);
    for (const auto& inst : c_.instances)
      if (!eval.holds(inst.focus, shapes_[inst.shape].body)) return std::nullopt;
    long long w = 0;
    for (auto i : pick) {
      const Candidate& cand = *c_.atoms[i];
      w += cand.weight();
      if (cand.atom.action == Action::del) w += function_cost(u_, cand.atom.triple, view);
    }
    return w;
  }
};

std::vector<Component> decompose(const rdf::Graph& g, const std::vector<shacl::NodeShape>& shapes,
                                  const std::vector<const Candidate*>& active, std::set<Instance>& blocked) {
  std::set<Triple> adds;
  std::map<Triple, std::vector<std::size_t>> by_triple;
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (active[i]->atom.action == Action::add) adds.insert(active[i]->atom.triple);
    by_triple[active[i]->atom.triple].push_back(i);
  }
  const std::set<Triple> none;
  View upper(g, adds, none);
  shacl::Evaluator<View> upper_eval(upper);
  shacl::Evaluator<rdf::Graph> base_eval(g);

  UnionFind uf(active.size());
  std::vector<std::pair<Instance, std::size_t>> owned;  // instance -> one of its atoms
  for (const auto& inst : all_instances(g, shapes)) {
    std::set<Triple> reads;
    upper_eval.reads(inst.focus, shapes[inst.shape].body, reads);
    std::optional<std::size_t> first;
    for (const auto& t : reads) {
      auto it = by_triple.find(t);
      if (it == by_triple.end()) continue;
      for (auto i : it->second) {
        if (first) uf.unite(*first, i);
        else first = i;
      }
    }
    if (first) owned.emplace_back(inst, *first);
    else if (!base_eval.holds(inst.focus, shapes[inst.shape].body)) blocked.insert(inst);
  }
  // Function costs read sibling values of the deleted triple.
  std::map<std::pair<Term, Term>, std::size_t> groups;
  for (std::size_t i = 0; i < active.size(); ++i) {
    const Triple& t = active[i]->atom.triple;
    auto [it, fresh] = groups.try_emplace({t.subject, t.predicate}, i);
    if (!fresh) uf.unite(it->second, i);
  }

  std::map<std::size_t, std::size_t> index;
  std::vector<Component> out;
  for (std::size_t i = 0; i < active.size(); ++i) {
    auto [it, fresh] = index.try_emplace(uf.find(i), out.size());
    if (fresh) out.emplace_back();
    out[it->second].atoms.push_back(active[i]);
  }
  for (auto& [inst, atom] : owned) out[index.at(uf.find(atom))].instances.push_back(inst);
  return out;
}

RepairModel model_of(const std::vector<std::pair<const Component*, const Choice*>>& parts) {
  RepairModel m;
  for (const auto& [component, choice] : parts) {
    for (auto i : choice->picked) {
      const RepairAtom& a = component->atoms[i]->atom;
      (a.action == Action::add ? m.additions : m.deletions).insert(a.triple);
    }
    m.cost.weight += choice->weight;
  }
  m.cost.changes = m.additions.size() + m.deletions.size();
  return m;
}

}  // namespace

long long model_weight(const rdf::Graph& g, const CandidateUniverse& universe, const RepairModel& model) {
  View after(g, model.additions, model.deletions);
  long long w = 0;
  for (const auto& a : model.atoms()) {
    if (const Candidate* c = universe.find(a)) w += c->weight();
    if (a.action == Action::del) w += function_cost(universe, a.triple, after);
  }
  return w;
}

std::vector<RepairModel> solve(const rdf::Graph& g, const std::vector<shacl::NodeShape>& shapes,
                               const CandidateUniverse& universe, const SolveOptions& options,
                               SolveStats* stats) {
  std::vector<const Candidate*> active;
  for (const auto& c : universe.atoms)
    if (!c.forbidden) active.push_back(&c);

  std::set<Instance> blocked;
  auto components = decompose(g, shapes, active, blocked);
  auto blocking_list = [&](const std::set<Instance>& xs) {
    std::vector<std::string> out;
    for (const auto& i : xs) out.push_back(describe(i, shapes));
    return out;
  };
  if (!blocked.empty()) {
    auto list = blocking_list(blocked);
    throw UnrepairableError("no permitted repair candidate for " + list.front(), list);
  }

  std::vector<ComponentResult> results(components.size());
  auto run = [&](std::size_t i) {
    results[i] = ComponentSearch(g, shapes, universe, components[i], options.budget).run();
  };
  if (options.threads > 1 && components.size() > 1) {
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    for (unsigned t = 0; t < std::min<std::size_t>(options.threads, components.size()); ++t)
      workers.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i; (i = next++) < components.size();) run(i);
      }));
    for (auto& w : workers) w.get();
  } else {
    for (std::size_t i = 0; i < components.size(); ++i) run(i);
  }

  SolveStats local;
  local.components = components.size();
  bool exhausted = false;
  std::set<Instance> infeasible;
  for (std::size_t i = 0; i < components.size(); ++i) {
    local.evaluations += results[i].evaluations;
    exhausted |= results[i].exhausted;
    if (results[i].infeasible) {
      shacl::Evaluator<rdf::Graph> eval(g);
      for (const auto& inst : components[i].instances)
        if (!eval.holds(inst.focus, shapes[inst.shape].body)) infeasible.insert(inst);
    }
  }
  if (stats) *stats = local;
  if (!infeasible.empty()) {
    auto list = blocking_list(infeasible);
    throw UnrepairableError("no candidate subset repairs " + list.front(), list);
  }
  if (exhausted || local.evaluations > options.budget) {
    std::optional<RepairModel> incumbent;
    std::vector<std::pair<const Component*, const Choice*>> parts;
    bool complete = true;
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (results[i].optima.empty()) complete = false;
      else parts.emplace_back(&components[i], &results[i].optima.front());
    }
    if (complete) incumbent = model_of(parts);
    throw BudgetError("search budget of " + std::to_string(options.budget) + " subsets exhausted",
                      std::move(incumbent));
  }

  // Cartesian product of per-component optima.
  std::vector<RepairModel> models;
  std::vector<std::size_t> cursor(components.size(), 0);
  for (;;) {
    std::vector<std::pair<const Component*, const Choice*>> parts;
    for (std::size_t i = 0; i < components.size(); ++i)
      parts.emplace_back(&components[i], &results[i].optima[cursor[i]]);
    models.push_back(model_of(parts));
    if (models.size() >= options.max_models) {
      local.truncated = true;
      break;
    }
    std::size_t i = 0;
    for (; i < components.size(); ++i) {
      if (++cursor[i] < results[i].optima.size()) break;
      cursor[i] = 0;
    }
    if (i == components.size()) break;
  }
  if (stats) *stats = local;
  std::sort(models.begin(), models.end(),
            [](const RepairModel& a, const RepairModel& b) { return a.atoms() < b.atoms(); });
  return models;
}

}  // namespace ccv::repair
