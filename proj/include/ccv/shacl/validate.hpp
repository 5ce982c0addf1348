#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ccv/rdf/graph.hpp"
#include "ccv/rdf/literal.hpp"
#include "ccv/rdf/vocab.hpp"
#include "ccv/shacl/shapes.hpp"

namespace ccv::shacl {

using rdf::Triple;

/// Observed count against the violated bound (MinCount, MaxCount).
struct CountDetail {
  std::size_t count = 0;
  std::size_t bound = 0;
  friend bool operator==(const CountDetail&, const CountDetail&) = default;
};

/// A focus value that is not <= the compared path value (LessThanOrEquals).
struct PairDetail {
  Term value;
  Term bound;
  friend bool operator==(const PairDetail&, const PairDetail&) = default;
};

using ViolationDetail = std::variant<std::monostate, CountDetail, PairDetail>;

struct Violation {
  Term shape;
  Term focus;
  std::optional<Path> path;  // none for node-level components
  Component component = Component::min_count;
  std::vector<Term> values;
  ViolationDetail detail;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  bool conforms = true;
  std::vector<Violation> violations;
  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Value nodes reached from `start`, each mapped to every triple lying on
/// some walk that reaches it. `forward = false` walks the path backwards.
using Witnesses = std::map<Term, std::set<Triple>>;

template <class View>
Witnesses walk(const View& g, const Path& path, const Term& start, bool forward = true) {
  Witnesses out;
  switch (path.kind()) {
    case Path::Kind::predicate:
      if (forward) {
        for (const auto& o : g.objects(start, path.iri()))
          out[o].insert(Triple{start, path.iri(), o});
      } else {
        for (const auto& s : g.subjects(path.iri(), start))
          out[s].insert(Triple{s, path.iri(), start});
      }
      return out;
    case Path::Kind::inverse:
      return walk(g, path.steps().front(), start, !forward);
    case Path::Kind::sequence:
      break;
  }
  Witnesses frontier{{start, {}}};
  auto step_through = [&](const Path& step) {
    Witnesses next;
    for (const auto& [node, edges] : frontier) {
      for (auto& [reached, step_edges] : walk(g, step, node, forward)) {
        auto& slot = next[reached];
        slot.insert(edges.begin(), edges.end());
        slot.insert(step_edges.begin(), step_edges.end());
      }
    }
    frontier = std::move(next);
  };
  const auto& steps = path.steps();
  if (forward) {
    for (const auto& step : steps) step_through(step);
  } else {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) step_through(*it);
  }
  return frontier;
}

template <class View>
std::set<Term> reach(const View& g, const Path& path, const Term& start, bool forward = true) {
  std::set<Term> out;
  switch (path.kind()) {
    case Path::Kind::predicate: {
      auto nodes = forward ? g.objects(start, path.iri()) : g.subjects(path.iri(), start);
      out.insert(nodes.begin(), nodes.end());
      return out;
    }
    case Path::Kind::inverse:
      return reach(g, path.steps().front(), start, !forward);
    case Path::Kind::sequence:
      break;
  }
  std::set<Term> frontier{start};
  auto step_through = [&](const Path& step) {
    std::set<Term> next;
    for (const auto& node : frontier) {
      auto reached = reach(g, step, node, forward);
      next.insert(reached.begin(), reached.end());
    }
    frontier = std::move(next);
  };
  const auto& steps = path.steps();
  if (forward) {
    for (const auto& step : steps) step_through(step);
  } else {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) step_through(*it);
  }
  return frontier;
}

/// Value nodes of `path` at `focus` (a set, as SHACL value nodes are).
template <class View>
std::set<Term> eval_path(const View& g, const Term& focus, const Path& path) {
  return reach(g, path, focus, true);
}

/// Subjects of rdf:type <target class>; no inference.
template <class View>
std::set<Term> targets(const NodeShape& shape, const View& g) {
  auto subjects = g.subjects(Term::iri(vocab::rdf_type), shape.target_class);
  return {subjects.begin(), subjects.end()};
}

/// Constraint evaluation at a single focus node over any graph view.
template <class View>
class Evaluator {
public:
  explicit Evaluator(const View& g) : g_(g) {}

  /// True iff every property shape and node constraint of `body` holds at `focus`.
  bool holds(const Term& focus, const ShapeBody& body) const {
    for (const auto& ps : body.properties) {
      auto values = eval_path(g_, focus, ps.path);
      for (const auto& c : ps.constraints)
        if (!check_property(focus, ps, values, c, nullptr)) return false;
    }
    for (const auto& c : body.node_constraints)
      if (!check_node(focus, c, nullptr)) return false;
    return true;
  }

  /// Appends the top-level violations of `shape` at `focus`.
  void violations(const NodeShape& shape, const Term& focus, std::vector<Violation>& out) const {
    Sink sink{&shape.id, &focus, &out};
    for (const auto& ps : shape.body.properties) {
      auto values = eval_path(g_, focus, ps.path);
      for (const auto& c : ps.constraints) check_property(focus, ps, values, c, &sink);
    }
    for (const auto& c : shape.body.node_constraints) check_node(focus, c, &sink);
  }

  /// Every triple of the view that evaluating `body` at `focus` inspects.
  void reads(const Term& focus, const ShapeBody& body, std::set<Triple>& out) const {
    for (const auto& ps : body.properties) {
      for (const auto& [value, edges] : walk(g_, ps.path, focus)) out.insert(edges.begin(), edges.end());
      for (const auto& c : ps.constraints) {
        if (const auto* lte = std::get_if<LessThanOrEquals>(&c))
          for (const auto& w : g_.objects(focus, lte->property))
            out.insert(Triple{focus, lte->property, w});
      }
    }
    for (const auto& c : body.node_constraints) {
      if (const auto* n = std::get_if<Not>(&c)) reads(focus, *n->body, out);
      if (const auto* o = std::get_if<Or>(&c))
        for (const auto& b : o->bodies) reads(focus, b, out);
    }
  }

private:
  struct Sink {
    const Term* shape;
    const Term* focus;
    std::vector<Violation>* out;

    void emit(std::optional<Path> path, Component component, std::vector<Term> values,
              ViolationDetail detail = {}) const {
      out->push_back(Violation{*shape, *focus, std::move(path), component, std::move(values),
                               std::move(detail)});
    }
  };

  const View& g_;

  bool check_property(const Term& focus, const PropertyShape& ps, const std::set<Term>& values,
                      const Constraint& c, const Sink* sink) const {
    auto all = [&] { return std::vector<Term>(values.begin(), values.end()); };
    if (const auto* min = std::get_if<MinCount>(&c)) {
      if (values.size() >= min->count) return true;
      if (sink) sink->emit(ps.path, Component::min_count, all(), CountDetail{values.size(), min->count});
      return false;
    }
    if (const auto* max = std::get_if<MaxCount>(&c)) {
      if (values.size() <= max->count) return true;
      if (sink) sink->emit(ps.path, Component::max_count, all(), CountDetail{values.size(), max->count});
      return false;
    }
    if (const auto* in = std::get_if<In>(&c)) {
      bool ok = true;
      for (const auto& v : values) {
        if (std::find(in->values.begin(), in->values.end(), v) != in->values.end()) continue;
        ok = false;
        if (!sink) return false;
        sink->emit(ps.path, Component::in, {v});
      }
      return ok;
    }
    if (const auto* hv = std::get_if<HasValue>(&c)) {
      if (values.contains(hv->value)) return true;
      if (sink) sink->emit(ps.path, Component::has_value, {hv->value});
      return false;
    }
    if (const auto* lte = std::get_if<LessThanOrEquals>(&c)) {
      // Focus values of the compared property must not exceed any path value.
      bool ok = true;
      for (const auto& w : g_.objects(focus, lte->property)) {
        for (const auto& v : values) {
          if (rdf::literal_less_or_equal(w, v)) continue;
          ok = false;
          if (!sink) return false;
          sink->emit(ps.path, Component::less_than_or_equals, {w}, PairDetail{w, v});
        }
      }
      return ok;
    }
    return check_node(focus, c, sink);
  }

  bool check_node(const Term& focus, const Constraint& c, const Sink* sink) const {
    bool ok = true;
    if (const auto* n = std::get_if<Not>(&c)) {
      ok = !holds(focus, *n->body);
    } else if (const auto* o = std::get_if<Or>(&c)) {
      ok = std::any_of(o->bodies.begin(), o->bodies.end(),
                       [&](const ShapeBody& b) { return holds(focus, b); });
    } else if (const auto* in = std::get_if<In>(&c)) {
      ok = std::find(in->values.begin(), in->values.end(), focus) != in->values.end();
    } else if (const auto* hv = std::get_if<HasValue>(&c)) {
      ok = focus == hv->value;
    }
    if (!ok && sink) sink->emit(std::nullopt, component_of(c), {focus});
    return ok;
  }
};

template <class View>
ValidationReport validate_view(const View& g, const std::vector<NodeShape>& shapes) {
  ValidationReport report;
  Evaluator<View> eval(g);
  for (const auto& shape : shapes)
    for (const auto& focus : targets(shape, g)) eval.violations(shape, focus, report.violations);
  report.conforms = report.violations.empty();
  return report;
}

/// Validates a data graph. Violations are ordered by shape, then focus node,
/// then property shape and constraint position.
ValidationReport validate(const rdf::Graph& g, const std::vector<NodeShape>& shapes);

/// Key-value text rendering used by the CLI.
std::string format_report(const ValidationReport& report, const rdf::PrefixMap& prefixes);

/// Human-readable detail payload, e.g. "count 2 > maxCount 1".
std::string format_detail(const Violation& v, const rdf::PrefixMap& prefixes);

}  // namespace ccv::shacl
