#include "ccv/bulk/bulk.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <set>
#include <atomic>
#include <future>
#include <sstream>

#include "ccv/profile.hpp"
#include "ccv/rdf/turtle.hpp"

namespace ccv::bulk {
namespace {

using rdf::Graph;
using rdf::Term;
using Rng = std::mt19937_64;

// Engine output is portable; library distributions are not.
std::uint64_t draw(Rng& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

template <class T>
void shuffle(std::vector<T>& xs, Rng& rng) {
  for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[draw(rng, i)]);
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

std::string two_digits(std::size_t i) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02zu", i);
  return buf;
}

Term contract(std::size_t i) { return Term::iri(vocab::ex("contract" + two_digits(i))); }
Term obligation(std::size_t i) { return Term::iri(vocab::ex("obligation" + two_digits(i))); }
Term core(const char* local) { return Term::iri(vocab::core(local)); }

Term day(long offset) {
  using namespace std::chrono;
  year_month_day d{sys_days{year{2023} / January / 1} + days{offset}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT00:00:00", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return Term::date_time(buf);
}

// Contract i (1-based) owns obligation i; contracts 18 and 19 also own 20 and 21.
std::vector<std::size_t> obligations_of(std::size_t c) {
  std::vector<std::size_t> out{c};
  if (c == 18) out.push_back(20);
  if (c == 19) out.push_back(21);
  return out;
}

std::size_t contract_of(std::size_t o) { return o == 20 ? 18 : o == 21 ? 19 : o; }

const Term type = Term::iri(vocab::rdf_type);
const Term has_status = Term::iri(vocab::has_contract_status);
const Term has_obligations = Term::iri(vocab::has_obligations);
const Term has_state = Term::iri(vocab::has_state);
const Term has_end_date = Term::iri(vocab::has_end_date);

struct Injection {
  rdf::Triple triple;
};

std::vector<Injection> injections(const Graph& base, std::uint64_t seed) {
  Rng rng = make_rng(seed, 2);
  std::vector<Injection> out;
  const std::vector<Term> statuses{core("statusPending"), core("statusFulfilled"), core("statusViolated"),
                                   core("statusTerminated"), core("statusSuspended"), core("statusUnknown")};
  for (std::size_t c = 1; c <= contract_count; ++c) {
    std::vector<Term> pool;
    for (const auto& s : statuses)
      if (!base.contains({contract(c), has_status, s})) pool.push_back(s);
    shuffle(pool, rng);
    std::size_t extra = 1 + draw(rng, 4);
    for (std::size_t k = 0; k < extra && k < pool.size(); ++k) out.push_back({{contract(c), has_status, pool[k]}});
  }
  for (std::size_t o = 1; o <= obligation_count; ++o) {
    auto bound = base.objects(contract(contract_of(o)), has_end_date).front();
    long bound_day = 0;
    while (day(bound_day) != bound) ++bound_day;
    std::set<Term> used{base.objects(obligation(o), has_end_date).front()};
    std::size_t extra = 1 + draw(rng, 4);
    while (extra > 0) {
      Term d = day(bound_day - 700 + static_cast<long>(draw(rng, 1000)));
      if (!used.insert(d).second) continue;
      out.push_back({{obligation(o), has_end_date, d}});
      --extra;
    }
    if (!base.contains({obligation(o), has_state, core("ViolatedState")}) && draw(rng, 2) == 0)
      out.push_back({{obligation(o), has_state, core("ViolatedState")}});
  }
  shuffle(out, rng);
  return out;
}

}  // namespace

Graph generate_base(std::uint64_t seed) {
  Rng rng = make_rng(seed, 1);
  Graph g;
  const Term states[] = {core("PendingState"), core("FulfilledState"), core("ViolatedState")};
  for (std::size_t c = 1; c <= contract_count; ++c) {
    long end = static_cast<long>(draw(rng, 1460));
    g.insert(contract(c), type, Term::iri(vocab::contract_class));
    g.insert(contract(c), has_end_date, day(end));
    bool any_violated = false, all_fulfilled = true;
    for (auto o : obligations_of(c)) {
      const Term& state = states[draw(rng, 3)];
      any_violated |= state == states[2];
      all_fulfilled &= state == states[1];
      g.insert(contract(c), has_obligations, obligation(o));
      g.insert(obligation(o), type, Term::iri(vocab::obligation_class));
      g.insert(obligation(o), has_state, state);
      g.insert(obligation(o), has_end_date, day(end - static_cast<long>(draw(rng, 365))));
    }
    g.insert(contract(c), has_status,
             core(any_violated ? "statusViolated" : all_fulfilled ? "statusFulfilled" : "statusPending"));
  }
  // Descriptive triples no shape reads.
  const char* fields[] = {"title", "clause", "party", "jurisdiction", "note"};
  for (std::size_t k = 0; g.size() < base_triple_count; ++k) {
    std::size_t node = k % (contract_count + obligation_count);
    Term subject = node < contract_count ? contract(node + 1) : obligation(node - contract_count + 1);
    Term predicate = Term::iri(vocab::ex(fields[(k / 40) % 5]));
    g.insert(subject, predicate, Term::string_literal("value " + std::to_string(k) + "-" + std::to_string(draw(rng, 1000))));
  }
  return g;
}

BulkCase inject(const Graph& base, std::uint64_t seed, std::size_t target) {
  BulkCase out;
  out.seed = seed;
  out.target = target;
  out.graph = base;
  const auto& shapes = profile::shapes();
  std::size_t count = shacl::validate(out.graph, shapes).violations.size();
  for (const auto& inj : injections(base, seed)) {
    if (count >= target) break;
    out.graph.insert(inj.triple);
    count = shacl::validate(out.graph, shapes).violations.size();
  }
  out.inconsistencies = count;
  return out;
}

std::size_t saturation(const Graph& base, std::uint64_t seed) {
  Graph g = base;
  for (const auto& inj : injections(base, seed)) g.insert(inj.triple);
  return shacl::validate(g, profile::shapes()).violations.size();
}

std::vector<BulkCase> generate_cases(const SuiteOptions& options) {
  std::vector<BulkCase> out;
  Rng rng = make_rng(options.seed, 0);
  for (std::size_t i = 0; i < options.cases; ++i) {
    std::uint64_t seed = rng();
    Graph base = generate_base(seed);
    std::size_t ceiling = std::min(options.max_inconsistencies, saturation(base, seed));
    std::size_t target = i == 0 ? 0 : draw(rng, ceiling + 1);
    BulkCase c = inject(base, seed, target);
    char id[16];
    std::snprintf(id, sizeof id, "case-%03zu", i);
    c.id = id;
    out.push_back(std::move(c));
  }
  return out;
}

BulkResult run_case(const BulkCase& c, const repair::RepairOptions& options) {
  static const auto strategies = strategy::parse_strategy(profile::strategies_graph());
  BulkResult r;
  r.id = c.id;
  r.seed = c.seed;
  r.inconsistencies = c.inconsistencies;
  try {
    auto result = repair::repair(c.graph, profile::shapes(), strategies, options);
    r.seconds = result.solve_time.count();
    repair::RepairModel chosen;
    if (result.report.conforms) {
      r.models = 1;
    } else {
      r.models = result.models.size();
      if (!result.models.empty()) chosen = result.models.front();
    }
    r.changes = chosen.cost.changes;
    Graph after = rdf::apply_patch(c.graph, chosen.additions, chosen.deletions);
    r.conforms_after = shacl::validate(after, profile::shapes()).conforms;
    if (r.models != 1) r.error = "expected one model, got " + std::to_string(r.models);
    else if (!r.conforms_after) r.error = "repaired graph does not conform";
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<BulkResult> run_suite(const std::vector<BulkCase>& cases, const SuiteOptions& options,
                                  const std::function<void(const BulkResult&)>& progress) {
  std::vector<BulkResult> results(cases.size());
  if (options.threads <= 1) {
    for (std::size_t i = 0; i < cases.size(); ++i) {
      results[i] = run_case(cases[i], options.repair);
      if (progress) progress(results[i]);
    }
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::mutex report;
  std::vector<std::future<void>> workers;
  for (unsigned t = 0; t < options.threads; ++t)
    workers.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i; (i = next++) < cases.size();) {
        results[i] = run_case(cases[i], options.repair);
        std::lock_guard lock(report);
        if (progress) progress(results[i]);
      }
    }));
  for (auto& w : workers) w.get();
  return results;
}

std::string results_csv(const std::vector<BulkResult>& results) {
  std::ostringstream out;
  out << "case,seed,inconsistencies,models,changes,conforms,seconds\n";
  for (const auto& r : results) {
    char seconds[32];
    std::snprintf(seconds, sizeof seconds, "%.6f", r.seconds);
    out << r.id << ',' << r.seed << ',' << r.inconsistencies << ',' << r.models << ',' << r.changes << ','
        << (r.conforms_after ? "true" : "false") << ',' << seconds << '\n';
  }
  return out.str();
}

void write_cases(const std::vector<BulkCase>& cases, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream manifest(fs::path(dir) / "manifest.csv");
  manifest << "case,seed,target,inconsistencies\n";
  for (const auto& c : cases) {
    std::ofstream(fs::path(dir) / (c.id + ".ttl")) << rdf::serialize_turtle(c.graph);
    manifest << c.id << ',' << c.seed << ',' << c.target << ',' << c.inconsistencies << '\n';
  }
  if (!manifest) throw Error("cannot write " + (fs::path(dir) / "manifest.csv").string());
}

std::vector<BulkCase> read_cases(const std::string& dir) {
  namespace fs = std::filesystem;
  std::ifstream manifest(fs::path(dir) / "manifest.csv");
  if (!manifest) throw Error("cannot read " + (fs::path(dir) / "manifest.csv").string());
  std::vector<BulkCase> out;
  std::string line;
  std::getline(manifest, line);
  while (std::getline(manifest, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string id, seed, target, count;
    std::getline(fields, id, ',');
    std::getline(fields, seed, ',');
    std::getline(fields, target, ',');
    std::getline(fields, count, ',');
    BulkCase c;
    c.id = id;
    c.seed = std::stoull(seed);
    c.target = std::stoull(target);
    c.inconsistencies = std::stoull(count);
    c.graph = rdf::read_turtle_file((fs::path(dir) / (id + ".ttl")).string());
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace ccv::bulk
