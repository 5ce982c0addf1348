#include "ccv/service/service.hpp"

#include <filesystem>

#include "ccv/profile.hpp"
#include "ccv/rdf/turtle.hpp"

namespace ccv::service {
namespace {

Response error(int status, std::string kind, std::string message) {
  return {status, json{{"error", std::move(kind)}, {"message", std::move(message)}}, {}};
}

Response unknown_graph(const std::string& name) { return error(404, "not-found", "no graph named " + name); }

json triples_json(const std::set<rdf::Triple>& triples, const rdf::PrefixMap& prefixes) {
  json out = json::array();
  for (const auto& t : triples)
    out.push_back({{"subject", rdf::format_term(t.subject, prefixes)},
                   {"predicate", rdf::format_term(t.predicate, prefixes)},
                   {"object", rdf::format_term(t.object, prefixes)}});
  return out;
}

}  // namespace

bool valid_name(std::string_view name) {
  if (name.empty() || name.size() > 128 || name == "." || name == "..") return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '_' && c != '-') return false;
  return true;
}

json report_json(const shacl::ValidationReport& report, const rdf::PrefixMap& prefixes) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    json values = json::array();
    for (const auto& value : v.values) values.push_back(rdf::format_term(value, prefixes));
    violations.push_back({{"shape", rdf::format_term(v.shape, prefixes)},
                          {"focusNode", rdf::format_term(v.focus, prefixes)},
                          {"component", "sh:" + std::string(shacl::component_name(v.component))},
                          {"path", v.path ? json(v.path->to_string(prefixes)) : json(nullptr)},
                          {"values", std::move(values)},
                          {"detail", shacl::format_detail(v, prefixes)}});
  }
  return {{"conforms", report.conforms}, {"violations", std::move(violations)}};
}

json model_json(const repair::RepairModel& m, const rdf::PrefixMap& prefixes) {
  return {{"id", repair::model_id(m)},
          {"additions", triples_json(m.additions, prefixes)},
          {"deletions", triples_json(m.deletions, prefixes)},
          {"cost", {{"changes", m.cost.changes}, {"weight", m.cost.weight}}}};
}

CcvService::CcvService(ServiceOptions options) : options_(std::move(options)) {
  if (options_.shapes.empty()) options_.shapes = profile::shapes();
  if (options_.strategies.empty() && options_.profile_strategies)
    options_.strategies = strategy::parse_strategy(profile::strategies_graph());
}

shacl::ValidationReport CcvService::report(const std::string& name, const Snapshot& s) {
  {
    std::lock_guard lock(cache_mutex_);
    auto it = reports_.find(name);
    if (it != reports_.end() && it->second.first == s.version) return it->second.second;
  }
  auto r = shacl::validate(*s.graph, options_.shapes);
  std::lock_guard lock(cache_mutex_);
  auto& slot = reports_[name];
  if (slot.first <= s.version) slot = {s.version, r};
  return r;
}

std::vector<repair::RepairModel> CcvService::compute(const Snapshot& s, bool use_strategies) {
  static const std::vector<strategy::RepairStrategy> none;
  return repair::repair(*s.graph, options_.shapes, use_strategies ? options_.strategies : none, options_.repair)
      .models;
}

void CcvService::remember(const std::string& name, std::uint64_t version,
                          const std::vector<repair::RepairModel>& models) {
  std::lock_guard lock(cache_mutex_);
  auto& c = computed_[name];
  if (c.version > version) return;
  if (c.version < version) c = {version, {}};
  for (const auto& m : models) c.models.emplace(repair::model_id(m), m);
}

std::optional<repair::RepairModel> CcvService::recall(const std::string& name, std::uint64_t version,
                                                      const std::string& id) {
  std::lock_guard lock(cache_mutex_);
  auto it = computed_.find(name);
  if (it == computed_.end() || it->second.version != version) return std::nullopt;
  auto m = it->second.models.find(id);
  if (m == it->second.models.end()) return std::nullopt;
  return m->second;
}

Response CcvService::list_graphs() {
  json graphs = json::array();
  for (const auto& name : store_.names()) {
    auto s = store_.get(name);
    if (!s || s->version == 0) continue;
    auto r = report(name, *s);
    graphs.push_back({{"name", name},
                      {"version", s->version},
                      {"conforms", r.conforms},
                      {"violationCount", r.violations.size()}});
  }
  return {200, json{{"graphs", std::move(graphs)}}, {}};
}

Response CcvService::get_graph(const std::string& name) {
  auto s = store_.get(name);
  if (!s || s->version == 0) return unknown_graph(name);
  return {200, json{{"name", name}, {"version", s->version}}, rdf::serialize_turtle(*s->graph)};
}

Response CcvService::put_graph(const std::string& name, std::string_view turtle) {
  if (!valid_name(name)) return error(400, "bad-name", "invalid graph name: " + name);
  rdf::Graph g;
  try {
    g = rdf::parse_turtle(turtle);
  } catch (const ParseError& e) {
    Response r = error(400, "parse", e.message());
    r.body["line"] = e.line();
    r.body["column"] = e.column();
    return r;
  }
  auto version = store_.put(name, std::move(g));
  return {200, json{{"name", name}, {"version", version}}, {}};
}

Response CcvService::validation(const std::string& name) {
  auto s = store_.get(name);
  if (!s || s->version == 0) return unknown_graph(name);
  json body = report_json(report(name, *s), s->graph->prefixes());
  body["name"] = name;
  body["version"] = s->version;
  return {200, std::move(body), {}};
}

Response CcvService::repairs(const std::string& name, bool use_strategies) {
  auto s = store_.get(name);
  if (!s || s->version == 0) return unknown_graph(name);
  std::vector<repair::RepairModel> models;
  try {
    models = compute(*s, use_strategies);
  } catch (const repair::UnrepairableError& e) {
    Response r = error(422, "unrepairable", e.what());
    r.body["blocking"] = e.blocking();
    r.body["version"] = s->version;
    return r;
  } catch (const repair::BudgetError& e) {
    Response r = error(422, "budget", e.what());
    r.body["version"] = s->version;
    return r;
  } catch (const repair::NonTerminatingRepairError& e) {
    Response r = error(422, "non-terminating", e.what());
    r.body["version"] = s->version;
    return r;
  }
  remember(name, s->version, models);
  json list = json::array();
  for (std::size_t i = 0; i < models.size(); ++i) {
    json m = model_json(models[i], s->graph->prefixes());
    m["optimal"] = i == 0;
    list.push_back(std::move(m));
  }
  json prefixes = json::object();
  for (const auto& [prefix, ns] : s->graph->prefixes()) prefixes[prefix] = ns;
  return {200,
          json{{"name", name},
               {"version", s->version},
               {"strategies", use_strategies},
               {"models", std::move(list)},
               {"prefixes", std::move(prefixes)}},
          {}};
}

Response CcvService::apply(const std::string& name, const std::string& id, const json& request) {
  if (!request.is_object() || !request.contains("expectedVersion") ||
      !request["expectedVersion"].is_number_unsigned())
    return error(422, "bad-request", "expectedVersion (non-negative integer) is required");
  std::uint64_t expected = request["expectedVersion"].get<std::uint64_t>();
  std::string chooser = "automatic";
  if (request.contains("chooser")) {
    if (!request["chooser"].is_string() || request["chooser"].get<std::string>().empty())
      return error(422, "bad-request", "chooser must be a non-empty string");
    chooser = request["chooser"].get<std::string>();
  }
  auto s = store_.get(name);
  if (!s || s->version == 0) return unknown_graph(name);

  auto model = recall(name, s->version, id);
  if (!model) {
    // Ids are content hashes, so a model never listed for this version can
    // still be matched after recomputation.
    try {
      for (bool use : {true, false}) remember(name, s->version, compute(*s, use));
    } catch (const Error&) {
    }
    model = recall(name, s->version, id);
  }
  if (!model) {
    Response r = error(410, "gone", "model " + id + " is not a repair of version " + std::to_string(s->version));
    r.body["version"] = s->version;
    return r;
  }
  auto commit = store_.apply(name, expected, *model, chooser);
  if (commit.status == GraphStore::Status::missing) return unknown_graph(name);
  if (commit.status == GraphStore::Status::conflict) {
    Response r = error(409, "conflict",
                       "expected version " + std::to_string(expected) + ", current is " +
                           std::to_string(commit.version));
    r.body["version"] = commit.version;
    return r;
  }
  auto next = store_.at(name, commit.version);
  json body{{"name", name}, {"fromVersion", commit.version - 1}, {"version", commit.version}, {"model", id},
            {"chooser", chooser}};
  body["validation"] = report_json(report(name, *next), next->graph->prefixes());
  return {200, std::move(body), {}};
}

Response CcvService::audit(const std::string& name) {
  auto s = store_.get(name);
  if (!s || s->version == 0) return unknown_graph(name);
  json entries = json::array();
  for (const auto& e : store_.audit(name))
    entries.push_back({{"timestamp", e.timestamp},
                       {"fromVersion", e.from_version},
                       {"toVersion", e.to_version},
                       {"chooser", e.chooser},
                       {"patch", repair::serialize_patch(e.patch)},
                       {"additions", triples_json(e.patch.additions, s->graph->prefixes())},
                       {"deletions", triples_json(e.patch.deletions, s->graph->prefixes())}});
  return {200, json{{"name", name}, {"version", s->version}, {"entries", std::move(entries)}}, {}};
}

std::vector<std::string> CcvService::import_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".ttl") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<std::string> names;
  for (const auto& f : files) {
    std::string name = f.stem().string();
    if (!valid_name(name)) continue;
    store_.put(name, rdf::read_turtle_file(f.string()));
    names.push_back(name);
  }
  return names;
}

}  // namespace ccv::service
