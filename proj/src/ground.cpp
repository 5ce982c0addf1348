#include <algorithm>

#include "ccv/rdf/turtle.hpp"
#include "ccv/rdf/view.hpp"
#include "ccv/repair/universe.hpp"

namespace ccv::repair {
namespace {

using shacl::Constraint;
using shacl::Path;
using shacl::PropertyShape;
using shacl::ShapeBody;
using View = rdf::PatchedView;

const Term rdf_type = Term::iri(vocab::rdf_type);

class Grounder {
public:
  Grounder(const rdf::Graph& g, const std::vector<shacl::NodeShape>& shapes, const GroundOptions& options)
      : g_(g), shapes_(shapes), options_(options) {}

  std::set<RepairAtom> atoms;
  std::set<Triple> additions;

  void instance(const Instance& inst) {
    View view(g_, additions, none_);
    body(view, inst.focus, shapes_[inst.shape].body, true);
  }

private:
  const rdf::Graph& g_;
  const std::vector<shacl::NodeShape>& shapes_;
  const GroundOptions& options_;
  const std::set<Triple> none_;

  void add(const Triple& t) {
    if (t.predicate == rdf_type || g_.contains(t) || t.subject.is_literal()) return;
    atoms.insert({t, Action::add});
    additions.insert(t);
  }

  void del(const Triple& t) {
    if (t.predicate == rdf_type || !g_.contains(t)) return;
    atoms.insert({t, Action::del});
  }

  void del_all(const std::set<Triple>& edges) {
    for (const auto& t : edges) del(t);
  }

  // Adds `value` as a value node of `path` at `focus` through its last edge.
  void add_value(const View& view, const Path& path, const Term& focus, const Term& value) {
    switch (path.kind()) {
      case Path::Kind::predicate: add({focus, path.iri(), value}); return;
      case Path::Kind::inverse: {
        const Path& inner = path.steps().front();
        if (inner.kind() == Path::Kind::predicate && !value.is_literal()) add({value, inner.iri(), focus});
        return;
      }
      case Path::Kind::sequence: break;
    }
    const auto& steps = path.steps();
    std::vector<Path> prefix(steps.begin(), steps.end() - 1);
    std::set<Term> nodes = prefix.size() == 1 ? shacl::reach(view, prefix.front(), focus)
                                              : shacl::reach(view, Path::sequence(prefix), focus);
    for (const auto& node : nodes) {
      if (node.is_literal()) continue;
      add_value(view, steps.back(), node, value);
    }
  }

  std::set<Term> add_candidates(const View& view, const PropertyShape& ps, const ShapeBody& owner,
                                const Term& focus) {
    std::set<Term> values;
    for (const auto& c : ps.constraints) {
      if (const auto* in = std::get_if<shacl::In>(&c)) values.insert(in->values.begin(), in->values.end());
      if (const auto* hv = std::get_if<shacl::HasValue>(&c)) values.insert(hv->value);
    }
    const Path* last = &ps.path;
    while (last->kind() == Path::Kind::sequence) last = &last->steps().back();
    if (last->kind() == Path::Kind::predicate) {
      if (auto it = options_.add_values.find(last->iri()); it != options_.add_values.end())
        values.insert(it->second.begin(), it->second.end());
    }
    // A value compared against this property elsewhere in the body is a
    // bound the new value can copy.
    if (ps.path.kind() == Path::Kind::predicate) {
      for (const auto& other : owner.properties)
        for (const auto& c : other.constraints)
          if (const auto* lte = std::get_if<shacl::LessThanOrEquals>(&c); lte && lte->property == ps.path.iri())
            for (const auto& v : shacl::eval_path(view, focus, other.path)) values.insert(v);
    }
    return values;
  }

  void body(const View& view, const Term& focus, const ShapeBody& b, bool make_true) {
    for (const auto& ps : b.properties) {
      auto witnesses = shacl::walk(view, ps.path, focus);
      auto edges_of = [&](const Term& v) -> std::set<Triple> {
        auto it = witnesses.find(v);
        return it == witnesses.end() ? std::set<Triple>{} : it->second;
      };
      auto delete_values = [&](auto&& keep) {
        for (const auto& [v, edges] : witnesses)
          if (!keep(v)) del_all(edges);
      };
      auto add_values = [&] {
        for (const auto& v : add_candidates(view, ps, b, focus)) add_value(view, ps.path, focus, v);
      };
      for (const auto& c : ps.constraints) {
        if (std::holds_alternative<shacl::MinCount>(c)) {
          make_true ? add_values() : delete_values([](const Term&) { return false; });
        } else if (std::holds_alternative<shacl::MaxCount>(c)) {
          make_true ? delete_values([](const Term&) { return false; }) : add_values();
        } else if (const auto* in = std::get_if<shacl::In>(&c)) {
          if (make_true)
            delete_values([&](const Term& v) {
              return std::find(in->values.begin(), in->values.end(), v) != in->values.end();
            });
        } else if (const auto* hv = std::get_if<shacl::HasValue>(&c)) {
          make_true ? add_value(view, ps.path, focus, hv->value) : del_all(edges_of(hv->value));
        } else if (const auto* lte = std::get_if<shacl::LessThanOrEquals>(&c)) {
          if (!make_true) continue;
          for (const auto& w : view.objects(focus, lte->property)) {
            for (const auto& [v, edges] : witnesses) {
              if (rdf::literal_less_or_equal(w, v)) continue;
              del({focus, lte->property, w});
              del_all(edges);
            }
          }
          for (const auto& [v, edges] : witnesses) add({focus, lte->property, v});
        } else {
          node(view, focus, c, b, make_true);
        }
      }
    }
    for (const auto& c : b.node_constraints) node(view, focus, c, b, make_true);
  }

  void node(const View& view, const Term& focus, const Constraint& c, const ShapeBody&, bool make_true) {
    if (const auto* n = std::get_if<shacl::Not>(&c)) {
      body(view, focus, *n->body, !make_true);
    } else if (const auto* o = std::get_if<shacl::Or>(&c)) {
      for (const auto& b : o->bodies) body(view, focus, b, make_true);
    }
    // Node-level sh:in / sh:hasValue constrain the focus itself; no triple fixes them.
  }
};

std::set<Triple> reads(const View& view, const shacl::NodeShape& shape, const Term& focus) {
  std::set<Triple> out;
  shacl::Evaluator<View>(view).reads(focus, shape.body, out);
  return out;
}

}  // namespace

const Candidate* CandidateUniverse::find(const RepairAtom& a) const {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), a,
                             [](const Candidate& c, const RepairAtom& x) { return c.atom < x; });
  return it != atoms.end() && it->atom == a ? &*it : nullptr;
}

std::vector<Instance> all_instances(const rdf::Graph& g, const std::vector<shacl::NodeShape>& shapes) {
  std::vector<Instance> out;
  for (std::size_t i = 0; i < shapes.size(); ++i)
    for (const auto& focus : shacl::targets(shapes[i], g)) out.push_back({i, focus});
  return out;
}

std::string describe(const Instance& i, const std::vector<shacl::NodeShape>& shapes) {
  const auto& prefixes = rdf::default_prefixes();
  return rdf::format_term(shapes[i.shape].id, prefixes) + " @ " + rdf::format_term(i.focus, prefixes);
}

CandidateUniverse ground(const rdf::Graph& g, const std::vector<shacl::NodeShape>& shapes,
                         const shacl::ValidationReport& report, const GroundOptions& options) {
  std::set<Instance> violated;
  for (const auto& v : report.violations)
    for (std::size_t i = 0; i < shapes.size(); ++i)
      if (shapes[i].id == v.shape) violated.insert({i, v.focus});

  Grounder grounder(g, shapes, options);
  std::set<Instance> grounded = violated;
  auto everything = all_instances(g, shapes);
  const std::set<Triple> none;
  for (;;) {
    std::size_t atoms_before = grounder.atoms.size(), grounded_before = grounded.size();
    for (const auto& inst : grounded) grounder.instance(inst);

    std::set<Triple> touched;
    for (const auto& a : grounder.atoms) touched.insert(a.triple);
    View view(g, grounder.additions, none);
    for (const auto& inst : everything) {
      if (grounded.contains(inst)) continue;
      auto r = reads(view, shapes[inst.shape], inst.focus);
      if (std::any_of(r.begin(), r.end(), [&](const Triple& t) { return touched.contains(t); }))
        grounded.insert(inst);
    }
    if (grounder.atoms.size() == atoms_before && grounded.size() == grounded_before) break;
  }

  std::set<Triple> touched;
  for (const auto& a : grounder.atoms) touched.insert(a.triple);
  View view(g, grounder.additions, none);
  std::vector<std::string> blocking;
  for (const auto& inst : violated) {
    auto r = reads(view, shapes[inst.shape], inst.focus);
    if (std::none_of(r.begin(), r.end(), [&](const Triple& t) { return touched.contains(t); }))
      blocking.push_back(describe(inst, shapes));
  }
  if (!blocking.empty()) {
    std::string message = "no repair candidate for " + blocking.front();
    throw UnrepairableError(message, std::move(blocking));
  }

  CandidateUniverse u;
  for (const auto& a : grounder.atoms) u.atoms.push_back(Candidate{a});
  return u;
}

}  // namespace ccv::repair
