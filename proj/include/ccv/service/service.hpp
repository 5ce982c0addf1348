#pragma once

#include <map>
#include <mutex>
#include <string>

#include <json.hpp>

#include "ccv/repair/repair.hpp"
#include "ccv/service/store.hpp"

namespace ccv::service {

using json = nlohmann::json;

struct Response {
  int status = 200;
  json body;
  std::string text;  // non-JSON body (Turtle)
};

struct ServiceOptions {
  std::vector<shacl::NodeShape> shapes;  // empty: CCV profile
  std::vector<strategy::RepairStrategy> strategies;
  bool profile_strategies = true;  // use the CCV strategies when none are given
  repair::RepairOptions repair;
};

/// Transport-independent request handlers behind the HTTP API.
class CcvService {
public:
  explicit CcvService(ServiceOptions options = {});

  GraphStore& store() noexcept { return store_; }

  Response list_graphs();
  Response get_graph(const std::string& name);
  Response put_graph(const std::string& name, std::string_view turtle);
  Response validation(const std::string& name);
  Response repairs(const std::string& name, bool use_strategies = true);
  Response apply(const std::string& name, const std::string& model, const json& request);
  Response audit(const std::string& name);

  /// Loads every *.ttl file of `dir` under its stem. Returns the names.
  std::vector<std::string> import_directory(const std::string& dir);

private:
  struct Computed {
    std::uint64_t version = 0;
    std::map<std::string, repair::RepairModel> models;  // by id, both strategy modes
  };

  shacl::ValidationReport report(const std::string& name, const Snapshot& s);
  std::vector<repair::RepairModel> compute(const Snapshot& s, bool use_strategies);
  void remember(const std::string& name, std::uint64_t version, const std::vector<repair::RepairModel>& models);
  std::optional<repair::RepairModel> recall(const std::string& name, std::uint64_t version, const std::string& id);

  ServiceOptions options_;
  GraphStore store_;
  std::mutex cache_mutex_;
  std::map<std::string, Computed> computed_;
  std::map<std::string, std::pair<std::uint64_t, shacl::ValidationReport>> reports_;  // latest only
};

json report_json(const shacl::ValidationReport& report, const rdf::PrefixMap& prefixes);
json model_json(const repair::RepairModel& m, const rdf::PrefixMap& prefixes);

/// Graph names are path segments: letters, digits, '.', '_' and '-'.
bool valid_name(std::string_view name);

}  // namespace ccv::service
