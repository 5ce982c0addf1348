#include "ccv/shacl/validate.hpp"

#include <sstream>

#include "ccv/rdf/turtle.hpp"

namespace ccv::shacl {

ValidationReport validate(const rdf::Graph& g, const std::vector<NodeShape>& shapes) {
  return validate_view(g, shapes);
}

std::string format_detail(const Violation& v, const rdf::PrefixMap& prefixes) {
  if (const auto* count = std::get_if<CountDetail>(&v.detail)) {
    const char* op = v.component == Component::min_count ? " < minCount " : " > maxCount ";
    return "count " + std::to_string(count->count) + op + std::to_string(count->bound);
  }
  if (const auto* pair = std::get_if<PairDetail>(&v.detail))
    return rdf::format_term(pair->value, prefixes) + " > " + rdf::format_term(pair->bound, prefixes);
  switch (v.component) {
    case Component::in: return "value not in list";
    case Component::has_value: return "required value missing";
    case Component::not_: return "negated shape is satisfied";
    case Component::or_: return "no disjunct is satisfied";
    default: return "";
  }
}

std::string format_report(const ValidationReport& report, const rdf::PrefixMap& prefixes) {
  std::ostringstream out;
  out << "conforms: " << (report.conforms ? "true" : "false") << '\n';
  out << "violations: " << report.violations.size() << '\n';
  std::size_t index = 0;
  for (const auto& v : report.violations) {
    out << "\n[violation " << ++index << "]\n";
    out << "shape: " << rdf::format_term(v.shape, prefixes) << '\n';
    out << "focus: " << rdf::format_term(v.focus, prefixes) << '\n';
    out << "component: sh:" << component_name(v.component) << '\n';
    if (v.path) out << "path: " << v.path->to_string(prefixes) << '\n';
    out << "values:";
    for (const auto& value : v.values) out << ' ' << rdf::format_term(value, prefixes);
    out << '\n';
    out << "detail: " << format_detail(v, prefixes) << '\n';
  }
  return out.str();
}

}  // namespace ccv::shacl
