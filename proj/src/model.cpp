#include "ccv/repair/model.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "ccv/error.hpp"
#include "ccv/rdf/turtle.hpp"

namespace ccv::repair {
namespace {

constexpr std::string_view additions_marker = "# additions\n";
constexpr std::string_view deletions_marker = "# deletions\n";

rdf::Graph graph_of(const std::set<Triple>& triples) {
  rdf::Graph g;
  for (const auto& t : triples) g.insert(t);
  return g;
}

}  // namespace

std::string_view action_name(Action a) { return a == Action::add ? "add" : "delete"; }

std::vector<RepairAtom> RepairModel::atoms() const {
  std::vector<RepairAtom> out;
  for (const auto& t : additions) out.push_back({t, Action::add});
  for (const auto& t : deletions) out.push_back({t, Action::del});
  std::sort(out.begin(), out.end());
  return out;
}

std::string serialize_patch(const RepairModel& m) {
  std::ostringstream out;
  out << "# cost changes=" << m.cost.changes << " weight=" << m.cost.weight << '\n';
  out << additions_marker << rdf::serialize_turtle(graph_of(m.additions));
  out << deletions_marker << rdf::serialize_turtle(graph_of(m.deletions));
  return out.str();
}

RepairModel parse_patch(std::string_view text) {
  RepairModel m;
  unsigned long long changes = 0;
  long long weight = 0;
  auto header_end = text.find('\n');
  std::string header(text.substr(0, header_end));
  if (std::sscanf(header.c_str(), "# cost changes=%llu weight=%lld", &changes, &weight) != 2)
    throw ParseError("patch document must start with a cost header", 1, 1);
  auto add_at = text.find(additions_marker);
  auto del_at = text.find(deletions_marker);
  if (add_at == std::string_view::npos || del_at == std::string_view::npos || del_at < add_at)
    throw ParseError("patch document needs additions and deletions sections", 2, 1);
  auto add_text = text.substr(add_at + additions_marker.size(), del_at - add_at - additions_marker.size());
  auto del_text = text.substr(del_at + deletions_marker.size());
  for (const auto& t : rdf::parse_turtle(add_text)) m.additions.insert(t);
  for (const auto& t : rdf::parse_turtle(del_text)) m.deletions.insert(t);
  m.cost = Cost{static_cast<std::size_t>(changes), weight};
  return m;
}

std::string model_id(const RepairModel& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_patch(m)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RepairModel compose(const rdf::Graph& g, const RepairModel& first, const RepairModel& second) {
  rdf::Graph after = rdf::apply_patch(rdf::apply_patch(g, first.additions, first.deletions),
                                      second.additions, second.deletions);
  RepairModel out;
  std::set<Triple> touched(first.additions);
  touched.insert(first.deletions.begin(), first.deletions.end());
  touched.insert(second.additions.begin(), second.additions.end());
  touched.insert(second.deletions.begin(), second.deletions.end());
  for (const auto& t : touched) {
    bool before = g.contains(t), now = after.contains(t);
    if (!before && now) out.additions.insert(t);
    if (before && !now) out.deletions.insert(t);
  }
  out.cost = Cost{out.additions.size() + out.deletions.size(), first.cost.weight + second.cost.weight};
  return out;
}

}  // namespace ccv::repair
