#include "ccv/service/store.hpp"

#include <chrono>
#include <ctime>

namespace ccv::service {
namespace {

std::string now_utc() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

repair::RepairModel diff(const rdf::Graph& from, const rdf::Graph& to) {
  repair::RepairModel m;
  for (const auto& t : to)
    if (!from.contains(t)) m.additions.insert(t);
  for (const auto& t : from)
    if (!to.contains(t)) m.deletions.insert(t);
  m.cost.changes = m.additions.size() + m.deletions.size();
  return m;
}

}  // namespace

GraphStore::Slot* GraphStore::find(const std::string& name) const {
  std::shared_lock lock(slots_mutex_);
  auto it = slots_.find(name);
  return it == slots_.end() ? nullptr : it->second.get();
}

GraphStore::Slot& GraphStore::slot(const std::string& name) {
  if (Slot* s = find(name)) return *s;
  std::unique_lock lock(slots_mutex_);
  auto& s = slots_[name];
  if (!s) {
    s = std::make_unique<Slot>();
    s->history.push_back(std::make_shared<const rdf::Graph>());
  }
  return *s;
}

void GraphStore::publish(Slot& s, const std::string& name, std::shared_ptr<const rdf::Graph> next,
                         repair::RepairModel patch, const std::string& chooser) {
  std::lock_guard lock(s.data);
  AuditEntry e{now_utc(), name, s.history.size() - 1, s.history.size(), std::move(patch), chooser};
  s.history.push_back(std::move(next));
  s.log.push_back(std::move(e));
}

std::uint64_t GraphStore::put(const std::string& name, rdf::Graph g, const std::string& chooser) {
  Slot& s = slot(name);
  std::lock_guard writing(s.writer);
  std::shared_ptr<const rdf::Graph> current;
  {
    std::lock_guard lock(s.data);
    current = s.history.back();
  }
  auto patch = diff(*current, g);
  publish(s, name, std::make_shared<const rdf::Graph>(std::move(g)), std::move(patch), chooser);
  std::lock_guard lock(s.data);
  return s.history.size() - 1;
}

GraphStore::Commit GraphStore::apply(const std::string& name, std::uint64_t expected,
                                     const repair::RepairModel& patch, const std::string& chooser) {
  Slot* s = find(name);
  if (!s) return {Status::missing, 0};
  std::lock_guard writing(s->writer);
  std::shared_ptr<const rdf::Graph> current;
  std::uint64_t version;
  {
    std::lock_guard lock(s->data);
    current = s->history.back();
    version = s->history.size() - 1;
  }
  if (version != expected) return {Status::conflict, version};
  auto next = std::make_shared<const rdf::Graph>(rdf::apply_patch(*current, patch.additions, patch.deletions));
  publish(*s, name, std::move(next), patch, chooser);
  return {Status::applied, version + 1};
}

std::optional<Snapshot> GraphStore::get(const std::string& name) const {
  Slot* s = find(name);
  if (!s) return std::nullopt;
  std::lock_guard lock(s->data);
  return Snapshot{s->history.back(), s->history.size() - 1};
}

std::optional<Snapshot> GraphStore::at(const std::string& name, std::uint64_t version) const {
  Slot* s = find(name);
  if (!s) return std::nullopt;
  std::lock_guard lock(s->data);
  if (version >= s->history.size()) return std::nullopt;
  return Snapshot{s->history[version], version};
}

std::vector<std::string> GraphStore::names() const {
  std::shared_lock lock(slots_mutex_);
  std::vector<std::string> out;
  for (const auto& [name, s] : slots_) out.push_back(name);
  return out;
}

std::vector<AuditEntry> GraphStore::audit(const std::string& name) const {
  Slot* s = find(name);
  if (!s) return {};
  std::lock_guard lock(s->data);
  return s->log;
}

rdf::Graph replay(const std::vector<AuditEntry>& log) {
  rdf::Graph g;
  for (const auto& e : log) g = rdf::apply_patch(g, e.patch.additions, e.patch.deletions);
  return g;
}

}  // namespace ccv::service
