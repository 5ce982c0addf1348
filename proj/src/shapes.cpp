#include "ccv/shacl/shapes.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "ccv/error.hpp"
#include "ccv/rdf/turtle.hpp"
#include "ccv/rdf/vocab.hpp"

namespace ccv::shacl {
namespace {

Term iri_of(std::string_view local) { return Term::iri(vocab::sh(local)); }

const Term rdf_type = Term::iri(vocab::rdf_type);
const Term rdf_first = Term::iri(vocab::rdf_first);
const Term rdf_rest = Term::iri(vocab::rdf_rest);
const Term rdf_nil = Term::iri(vocab::rdf_nil);

// Orders blank labels like genid2 < genid10 so document order survives.
bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ei = i, ej = j;
      while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
      while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
      auto na = a.substr(i, ei - i), nb = b.substr(j, ej - j);
      na.erase(0, std::min(na.find_first_not_of('0'), na.size()));
      nb.erase(0, std::min(nb.find_first_not_of('0'), nb.size()));
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ei;
      j = ej;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

bool node_less(const Term& a, const Term& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  return natural_less(a.value(), b.value());
}

std::string describe(const Term& t) { return rdf::format_term(t, rdf::default_prefixes()); }

class ShapeReader {
public:
  explicit ShapeReader(const rdf::Graph& g) : g_(g) {}

  std::vector<NodeShape> run() {
    std::vector<NodeShape> shapes;
    for (const auto& id : g_.subjects(rdf_type, iri_of("NodeShape"))) {
      current_ = id;
      for (const char* other : {"targetNode", "targetSubjectsOf", "targetObjectsOf"})
        if (!g_.objects(id, iri_of(other)).empty()) fail(std::string("sh:") + other + " is not supported");
      auto targets = g_.objects(id, iri_of("targetClass"));
      if (targets.empty()) continue;
      if (targets.size() > 1 || !targets.front().is_iri())
        fail("a node shape needs exactly one IRI sh:targetClass");
      shapes.push_back(NodeShape{id, targets.front(), body(id, true)});
    }
    std::sort(shapes.begin(), shapes.end(),
              [](const NodeShape& a, const NodeShape& b) { return node_less(a.id, b.id); });
    return shapes;
  }

  Path path(const Term& node) {
    if (node.is_iri() && node != rdf_nil && g_.objects(node, rdf_first).empty())
      return Path::predicate(node);
    if (!g_.objects(node, rdf_first).empty()) {
      std::vector<Path> steps;
      for (const auto& item : read_list(g_, node)) steps.push_back(path(item));
      if (steps.size() < 2) fail("a sequence path needs at least two steps");
      return Path::sequence(std::move(steps));
    }
    auto inverse = g_.objects(node, iri_of("inversePath"));
    for (const auto& t : g_.about(node)) {
      if (t.predicate != iri_of("inversePath") && t.predicate != rdf_type)
        fail("unsupported path construct " + describe(t.predicate));
    }
    if (inverse.size() != 1) fail("malformed property path at " + describe(node));
    return Path::inverse(path(inverse.front()));
  }

private:
  const rdf::Graph& g_;
  Term current_;

  [[noreturn]] void fail(const std::string& message) const {
    throw UnsupportedShapeError("shape " + describe(current_) + ": " + message);
  }

  std::size_t count_value(const Term& t) const {
    if (!t.is_literal() || t.datatype() != vocab::xsd_integer || t.value().empty() ||
        !std::all_of(t.value().begin(), t.value().end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail("cardinality must be a non-negative integer, got " + describe(t));
    return static_cast<std::size_t>(std::stoull(t.value()));
  }

  static bool ignorable(const Term& predicate) {
    return predicate == rdf_type || predicate == iri_of("name") ||
           predicate == iri_of("description") || !predicate.value().starts_with(vocab::sh_ns);
  }

  // Constraints valid both at node level and inside property shapes.
  bool value_constraint(const rdf::Triple& t, std::vector<Constraint>& out) {
    const Term& p = t.predicate;
    if (p == iri_of("in")) {
      auto values = read_list(g_, t.object);
      if (values.empty()) fail("sh:in needs a non-empty list");
      out.push_back(In{std::move(values)});
    } else if (p == iri_of("hasValue")) {
      out.push_back(HasValue{t.object});
    } else {
      return false;
    }
    return true;
  }

  ShapeBody body(const Term& node, bool top_level) {
    ShapeBody out;
    std::vector<std::pair<Term, PropertyShape>> properties;
    for (const auto& t : g_.about(node)) {
      const Term& p = t.predicate;
      if (p == iri_of("targetClass")) {
        if (!top_level) fail("sh:targetClass on a nested shape");
        continue;
      }
      if (p == iri_of("property")) {
        properties.emplace_back(t.object, property_shape(t.object));
      } else if (p == iri_of("not")) {
        out.node_constraints.push_back(Not{std::make_shared<const ShapeBody>(body(t.object, false))});
      } else if (p == iri_of("or")) {
        Or disjunction;
        for (const auto& item : read_list(g_, t.object)) disjunction.bodies.push_back(body(item, false));
        if (disjunction.bodies.size() < 2) fail("sh:or needs at least two shapes");
        out.node_constraints.push_back(std::move(disjunction));
      } else if (value_constraint(t, out.node_constraints)) {
      } else if (ignorable(p)) {
      } else {
        fail("unsupported constraint component " + describe(p));
      }
    }
    std::sort(properties.begin(), properties.end(),
              [](const auto& a, const auto& b) { return node_less(a.first, b.first); });
    for (auto& [id, shape] : properties) out.properties.push_back(std::move(shape));
    std::stable_sort(out.node_constraints.begin(), out.node_constraints.end(),
                     [](const Constraint& a, const Constraint& b) {
                       return component_of(a) < component_of(b);
                     });
    if (out.properties.empty() && out.node_constraints.empty())
      fail("empty shape body at " + describe(node));
    return out;
  }

  PropertyShape property_shape(const Term& node) {
    auto paths = g_.objects(node, iri_of("path"));
    if (paths.size() != 1) fail("a property shape needs exactly one sh:path");
    PropertyShape out{path(paths.front()), {}};
    for (const auto& t : g_.about(node)) {
      const Term& p = t.predicate;
      if (p == iri_of("path")) continue;
      if (p == iri_of("minCount")) {
        out.constraints.push_back(MinCount{count_value(t.object)});
      } else if (p == iri_of("maxCount")) {
        out.constraints.push_back(MaxCount{count_value(t.object)});
      } else if (p == iri_of("lessThanOrEquals")) {
        if (!t.object.is_iri()) fail("sh:lessThanOrEquals needs an IRI");
        out.constraints.push_back(LessThanOrEquals{t.object});
      } else if (value_constraint(t, out.constraints)) {
      } else if (p == iri_of("not") || p == iri_of("or")) {
        fail(describe(p) + " inside a property shape is not supported");
      } else if (ignorable(p)) {
      } else {
        fail("unsupported constraint component " + describe(p));
      }
    }
    if (out.constraints.empty()) fail("property shape without constraints");
    std::stable_sort(out.constraints.begin(), out.constraints.end(),
                     [](const Constraint& a, const Constraint& b) {
                       return component_of(a) < component_of(b);
                     });
    return out;
  }
};

class ShapeWriter {
public:
  rdf::Graph run(const std::vector<NodeShape>& shapes) {
    for (const auto& shape : shapes) {
      g_.insert(shape.id, rdf_type, iri_of("NodeShape"));
      g_.insert(shape.id, iri_of("targetClass"), shape.target_class);
      body(shape.id, shape.body);
    }
    return std::move(g_);
  }

private:
  rdf::Graph g_;
  std::size_t counter_ = 0;

  Term fresh() { return Term::blank("genid" + std::to_string(counter_++)); }

  Term list(const std::vector<Term>& items) {
    if (items.empty()) return rdf_nil;
    std::vector<Term> cells;
    for (std::size_t i = 0; i < items.size(); ++i) cells.push_back(fresh());
    for (std::size_t i = 0; i < items.size(); ++i) {
      g_.insert(cells[i], rdf_first, items[i]);
      g_.insert(cells[i], rdf_rest, i + 1 < items.size() ? cells[i + 1] : rdf_nil);
    }
    return cells.front();
  }

  Term path(const Path& p) {
    switch (p.kind()) {
      case Path::Kind::predicate: return p.iri();
      case Path::Kind::inverse: {
        Term node = fresh();
        g_.insert(node, iri_of("inversePath"), path(p.steps().front()));
        return node;
      }
      case Path::Kind::sequence: {
        std::vector<Term> steps;
        for (const auto& s : p.steps()) steps.push_back(path(s));
        return list(steps);
      }
    }
    return p.iri();
  }

  void constraint(const Term& node, const Constraint& c) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, MinCount>) {
            g_.insert(node, iri_of("minCount"), Term::integer(static_cast<long long>(v.count)));
          } else if constexpr (std::is_same_v<T, MaxCount>) {
            g_.insert(node, iri_of("maxCount"), Term::integer(static_cast<long long>(v.count)));
          } else if constexpr (std::is_same_v<T, In>) {
            g_.insert(node, iri_of("in"), list(v.values));
          } else if constexpr (std::is_same_v<T, HasValue>) {
            g_.insert(node, iri_of("hasValue"), v.value);
          } else if constexpr (std::is_same_v<T, LessThanOrEquals>) {
            g_.insert(node, iri_of("lessThanOrEquals"), v.property);
          } else if constexpr (std::is_same_v<T, Not>) {
            Term inner = fresh();
            body(inner, *v.body);
            g_.insert(node, iri_of("not"), inner);
          } else {
            std::vector<Term> items;
            for (const auto& b : v.bodies) {
              items.push_back(fresh());
              body(items.back(), b);
            }
            g_.insert(node, iri_of("or"), list(items));
          }
        },
        c);
  }

  void body(const Term& node, const ShapeBody& b) {
    for (const auto& ps : b.properties) {
      Term prop = fresh();
      g_.insert(node, iri_of("property"), prop);
      g_.insert(prop, iri_of("path"), path(ps.path));
      for (const auto& c : ps.constraints) constraint(prop, c);
    }
    for (const auto& c : b.node_constraints) constraint(node, c);
  }
};

void collect_constants(const std::vector<Constraint>& constraints, std::set<Term>& out);

void collect_constants(const ShapeBody& body, std::set<Term>& out) {
  for (const auto& ps : body.properties) collect_constants(ps.constraints, out);
  collect_constants(body.node_constraints, out);
}

void collect_constants(const std::vector<Constraint>& constraints, std::set<Term>& out) {
  for (const auto& c : constraints) {
    if (const auto* in = std::get_if<In>(&c)) out.insert(in->values.begin(), in->values.end());
    if (const auto* hv = std::get_if<HasValue>(&c)) out.insert(hv->value);
    if (const auto* n = std::get_if<Not>(&c)) collect_constants(*n->body, out);
    if (const auto* o = std::get_if<Or>(&c))
      for (const auto& b : o->bodies) collect_constants(b, out);
  }
}

}  // namespace

Path Path::predicate(Term iri) {
  Path p;
  p.kind_ = Kind::predicate;
  p.iri_ = std::move(iri);
  return p;
}

Path Path::inverse(Path inner) {
  Path p;
  p.kind_ = Kind::inverse;
  p.steps_.push_back(std::move(inner));
  return p;
}

Path Path::sequence(std::vector<Path> steps) {
  if (steps.size() < 2) throw UnsupportedShapeError("a sequence path needs at least two steps");
  Path p;
  p.kind_ = Kind::sequence;
  p.steps_ = std::move(steps);
  return p;
}

std::string Path::to_string(const rdf::PrefixMap& prefixes) const {
  switch (kind_) {
    case Kind::predicate: return rdf::format_term(iri_, prefixes);
    case Kind::inverse: {
      const Path& inner = steps_.front();
      auto text = inner.to_string(prefixes);
      return inner.kind() == Kind::sequence ? "^(" + text + ")" : "^" + text;
    }
    case Kind::sequence: break;
  }
  std::string out;
  for (const auto& step : steps_) {
    if (!out.empty()) out += "/";
    auto text = step.to_string(prefixes);
    out += step.kind() == Kind::sequence ? "(" + text + ")" : text;
  }
  return out;
}

bool operator==(const Not& a, const Not& b) {
  if (a.body == b.body) return true;
  return a.body && b.body && *a.body == *b.body;
}

bool operator==(const Or& a, const Or& b) { return a.bodies == b.bodies; }

Component component_of(const Constraint& c) { return static_cast<Component>(c.index()); }

std::string_view component_name(Component c) {
  switch (c) {
    case Component::min_count: return "MinCountConstraintComponent";
    case Component::max_count: return "MaxCountConstraintComponent";
    case Component::in: return "InConstraintComponent";
    case Component::has_value: return "HasValueConstraintComponent";
    case Component::less_than_or_equals: return "LessThanOrEqualsConstraintComponent";
    case Component::not_: return "NotConstraintComponent";
    case Component::or_: return "OrConstraintComponent";
  }
  return "";
}

std::vector<Term> read_list(const rdf::Graph& g, const Term& head) {
  std::vector<Term> items;
  std::set<Term> seen;
  Term node = head;
  while (node != rdf_nil) {
    if (!seen.insert(node).second) throw UnsupportedShapeError("cyclic RDF list at " + describe(head));
    auto first = g.objects(node, rdf_first);
    auto rest = g.objects(node, rdf_rest);
    if (first.size() != 1 || rest.size() != 1)
      throw UnsupportedShapeError("malformed RDF list at " + describe(node));
    items.push_back(first.front());
    node = rest.front();
  }
  return items;
}

std::vector<NodeShape> parse_shapes(const rdf::Graph& shapes_graph) {
  return ShapeReader(shapes_graph).run();
}

std::set<Term> shape_constants(const std::vector<NodeShape>& shapes) {
  std::set<Term> out;
  for (const auto& s : shapes) collect_constants(s.body, out);
  return out;
}

rdf::Graph shapes_to_graph(const std::vector<NodeShape>& shapes) { return ShapeWriter().run(shapes); }

}  // namespace ccv::shacl
