#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ccv/repair/model.hpp"

namespace ccv::service {

struct AuditEntry {
  std::string timestamp;  // UTC, ISO 8601
  std::string graph;
  std::uint64_t from_version = 0;
  std::uint64_t to_version = 0;
  repair::RepairModel patch;
  std::string chooser;  // "automatic", a user id, or "load" for uploads
};

struct Snapshot {
  std::shared_ptr<const rdf::Graph> graph;
  std::uint64_t version = 0;
};

/// Named graph snapshots with full history. Version 0 is the empty graph;
/// every write, uploads included, appends a version and an audit entry, so
/// folding the audit patches over the empty graph yields the latest snapshot.
class GraphStore {
public:
  enum class Status { applied, missing, conflict };
  struct Commit {
    Status status = Status::missing;
    std::uint64_t version = 0;  // current version after the call
  };

  /// Stores g as the next version of `name`.
  std::uint64_t put(const std::string& name, rdf::Graph g, const std::string& chooser = "load");

  /// Applies `patch` iff the current version of `name` is `expected`.
  Commit apply(const std::string& name, std::uint64_t expected, const repair::RepairModel& patch,
               const std::string& chooser);

  std::optional<Snapshot> get(const std::string& name) const;
  std::optional<Snapshot> at(const std::string& name, std::uint64_t version) const;
  std::vector<std::string> names() const;
  std::vector<AuditEntry> audit(const std::string& name) const;

private:
  struct Slot {
    std::mutex writer;           // serializes writes to this name
    mutable std::mutex data;     // guards history and log
    std::vector<std::shared_ptr<const rdf::Graph>> history;
    std::vector<AuditEntry> log;
  };

  Slot* find(const std::string& name) const;
  Slot& slot(const std::string& name);
  static void publish(Slot& s, const std::string& name, std::shared_ptr<const rdf::Graph> next,
                      repair::RepairModel patch, const std::string& chooser);

  mutable std::shared_mutex slots_mutex_;
  std::map<std::string, std::unique_ptr<Slot>> slots_;
};

/// Folds the audit patches of `log` over the empty graph.
rdf::Graph replay(const std::vector<AuditEntry>& log);

}  // namespace ccv::service
