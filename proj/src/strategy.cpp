#include "ccv/strategy/strategy.hpp"

#include <algorithm>
#include <sstream>

#include "ccv/rdf/turtle.hpp"
#include "ccv/shacl/shapes.hpp"

namespace ccv::strategy {
namespace {

Term shr(std::string_view local) { return Term::iri(vocab::shr(local)); }
Term sh(std::string_view local) { return Term::iri(vocab::sh(local)); }

std::string describe(const Term& t) { return rdf::format_term(t, rdf::default_prefixes()); }

// Accepted spellings, normalized to the shr: form.
Term normalize(const Term& p) {
  if (p == sh("values") || p == shr("orderedValues")) return shr("values");
  if (p == sh("action")) return shr("action");
  if (p == shr("preference")) return shr("hasPreference");
  if (p == shr("read-only")) return shr("hasConstraint");
  return p;
}

Term normalize_value(const Term& v) {
  if (v == sh("add")) return shr("add");
  if (v == sh("delete")) return shr("delete");
  return v;
}

class Reader {
public:
  explicit Reader(const rdf::Graph& g) : g_(g) {}

  std::vector<RepairStrategy> run() {
    std::vector<RepairStrategy> out;
    for (const auto& id : g_.subjects(Term::iri(vocab::rdf_type), shr("RepairStrategy"))) {
      current_ = id;
      RepairStrategy s{id, {}, {}};
      for (const auto& t : g_.about(id)) {
        Term p = normalize(t.predicate);
        if (p == shr("hasPreference")) s.preferences.push_back(preference(t.object));
        else if (p == shr("hasConstraint")) s.constraints.push_back(constraint(t.object));
        else check_unknown(p);
      }
      if (s.preferences.empty() && s.constraints.empty()) fail("strategy without preferences or constraints");
      out.push_back(std::move(s));
    }
    return out;
  }

private:
  const rdf::Graph& g_;
  Term current_;

  [[noreturn]] void fail(const std::string& message) const {
    throw StrategyError("strategy " + describe(current_) + ": " + message);
  }

  void check_unknown(const Term& p) const {
    if (p.value().starts_with(vocab::shr_ns)) fail("unknown property " + describe(p));
  }

  struct Fields {
    std::optional<Term> path, action, type, function;
    std::optional<std::vector<Term>> values;
  };

  Fields fields(const Term& node) {
    Fields f;
    auto once = [&](std::optional<Term>& slot, const rdf::Triple& t) {
      if (slot && *slot != normalize_value(t.object)) fail("conflicting " + describe(t.predicate));
      slot = normalize_value(t.object);
    };
    for (const auto& t : g_.about(node)) {
      Term p = normalize(t.predicate);
      if (p == sh("path")) once(f.path, t);
      else if (p == shr("action")) once(f.action, t);
      else if (p == shr("preferenceType")) once(f.type, t);
      else if (p == shr("function")) once(f.function, t);
      else if (p == shr("values")) {
        try {
          f.values = shacl::read_list(g_, t.object);
        } catch (const Error& e) {
          fail(e.what());
        }
      } else if (p != Term::iri(vocab::rdf_type)) check_unknown(p);
    }
    if (!f.path) fail("missing sh:path");
    if (!f.path->is_iri()) fail("only predicate paths are supported in strategies");
    if (!f.action) fail("missing shr:action on " + describe(*f.path));
    return f;
  }

  Action action(const Term& t) const {
    if (t == shr("add")) return Action::add;
    if (t == shr("delete")) return Action::del;
    fail("unknown action " + describe(t));
  }

  Preference preference(const Term& node) {
    Fields f = fields(node);
    Preference p;
    p.path = *f.path;
    p.action = action(*f.action);
    if (!f.type) p.type = p.action == Action::del ? PreferenceType::read_only : PreferenceType::change;
    else if (*f.type == shr("read-only")) p.type = PreferenceType::read_only;
    else if (*f.type == shr("change")) p.type = PreferenceType::change;
    else fail("unknown preference type " + describe(*f.type));
    if (f.values && f.function) fail("preference on " + describe(p.path) + " has both values and a function");
    if (f.values) {
      if (f.values->empty()) fail("empty shr:values on " + describe(p.path));
      p.source = *f.values;
    } else if (f.function) {
      if (p.action != Action::del) fail("functions are supported on shr:delete preferences only");
      if (*f.function == shr("maxValue")) p.source = ValueFunction::max_value;
      else if (*f.function == shr("minValue")) p.source = ValueFunction::min_value;
      else fail("unknown function " + describe(*f.function));
    } else {
      fail("preference on " + describe(p.path) + " needs shr:values or shr:function");
    }
    return p;
  }

  ReadOnlyConstraint constraint(const Term& node) {
    Fields f = fields(node);
    if (f.type || f.function) fail("constraints take no preference type or function");
    return ReadOnlyConstraint{*f.path, action(*f.action), f.values};
  }
};

}  // namespace

std::vector<RepairStrategy> parse_strategy(const rdf::Graph& g) {
  auto out = Reader(g).run();
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

std::vector<RepairStrategy> read_strategy_file(const std::string& path) {
  rdf::TurtleOptions options;
  options.lenient_collections = true;
  return parse_strategy(rdf::read_turtle_file(path, options));
}

repair::CandidateUniverse compile(const std::vector<RepairStrategy>& strategies,
                                  repair::CandidateUniverse u, const rdf::Graph&) {
  auto matches = [](const repair::Candidate& c, const Term& path, Action action) {
    return c.atom.action == action && c.atom.triple.predicate == path;
  };
  for (const auto& s : strategies) {
    for (const auto& pref : s.preferences) {
      bool used = false;
      if (const auto* values = std::get_if<std::vector<Term>>(&pref.source)) {
        for (auto& c : u.atoms) {
          if (!matches(c, pref.path, pref.action)) continue;
          auto it = std::find(values->begin(), values->end(), c.atom.triple.object);
          if (it == values->end()) continue;
          long long position = it - values->begin() + 1;
          (pref.type == PreferenceType::read_only ? c.minimize : c.maximize) += position;
          used = true;
        }
      } else {
        repair::FunctionPreference f{pref.path, std::get<ValueFunction>(pref.source)};
        if (std::find(u.functions.begin(), u.functions.end(), f) == u.functions.end()) u.functions.push_back(f);
        used = std::any_of(u.atoms.begin(), u.atoms.end(),
                           [&](const auto& c) { return matches(c, pref.path, pref.action); });
      }
      if (!used)
        u.notes.push_back(describe(s.id) + ": preference on " + describe(pref.path) + " matches no candidate");
    }
    for (const auto& con : s.constraints) {
      bool used = false;
      for (auto& c : u.atoms) {
        if (!matches(c, con.path, con.action)) continue;
        if (con.values &&
            std::find(con.values->begin(), con.values->end(), c.atom.triple.object) == con.values->end())
          continue;
        c.forbidden = true;
        used = true;
      }
      if (!used)
        u.notes.push_back(describe(s.id) + ": constraint on " + describe(con.path) + " matches no candidate");
    }
  }
  return u;
}

repair::GroundOptions ground_options(const std::vector<RepairStrategy>& strategies) {
  repair::GroundOptions out;
  for (const auto& s : strategies)
    for (const auto& p : s.preferences)
      if (const auto* values = std::get_if<std::vector<Term>>(&p.source); values && p.action == Action::add) {
        auto& slot = out.add_values[p.path];
        for (const auto& v : *values)
          if (std::find(slot.begin(), slot.end(), v) == slot.end()) slot.push_back(v);
      }
  return out;
}

std::string format_directives(const repair::CandidateUniverse& u, const rdf::PrefixMap& prefixes) {
  std::ostringstream out;
  for (const auto& c : u.atoms) {
    const auto& t = c.atom.triple;
    const char* sense = c.minimize && c.maximize ? "mixed"
                        : c.minimize             ? "minimize"
                        : c.maximize             ? "maximize"
                                                 : "neutral";
    out << repair::action_name(c.atom.action) << ' ' << rdf::format_term(t.subject, prefixes) << ' '
        << rdf::format_term(t.predicate, prefixes) << ' ' << rdf::format_term(t.object, prefixes)
        << " weight=" << c.weight() << " sense=" << sense << " forbidden=" << (c.forbidden ? "yes" : "no");
    for (const auto& f : u.functions)
      if (c.atom.action == Action::del && f.predicate == t.predicate)
        out << " function=" << (f.function == ValueFunction::max_value ? "maxValue" : "minValue");
    out << '\n';
  }
  for (const auto& note : u.notes) out << "# " << note << '\n';
  return out.str();
}

}  // namespace ccv::strategy
