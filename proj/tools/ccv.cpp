// ccv: contract compliance validation and repair from the command line.

#include <csignal>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>

#include "ccv/bulk/bulk.hpp"
#include "ccv/profile.hpp"
#include "ccv/rdf/turtle.hpp"
#include "ccv/service/http.hpp"

namespace {

using namespace ccv;
using service::json;

enum Exit { ok = 0, violations = 1, parse_failure = 2, unsupported = 3, unrepairable = 4, budget = 5 };

struct Inputs {
  std::string data;
  std::string shapes;  // empty: CCV profile
  std::string strategies;
  bool json = false;
};

std::vector<shacl::NodeShape> load_shapes(const std::string& path) {
  if (path.empty()) return profile::shapes();
  return shacl::parse_shapes(rdf::read_turtle_file(path));
}

std::vector<strategy::RepairStrategy> load_strategies(const std::string& path) {
  if (path.empty()) return {};
  if (path == "profile") return strategy::parse_strategy(profile::strategies_graph());
  return strategy::read_strategy_file(path);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error("cannot write " + path);
}

int run_validate(const Inputs& in) {
  auto g = rdf::read_turtle_file(in.data);
  auto report = shacl::validate(g, load_shapes(in.shapes));
  if (in.json) std::cout << service::report_json(report, g.prefixes()).dump(2) << '\n';
  else std::cout << shacl::format_report(report, g.prefixes());
  return report.conforms ? ok : violations;
}

struct RepairFlags {
  bool apply = false;
  bool all_models = false;
  std::string out;
  std::size_t budget = 1'000'000;
  unsigned threads = 1;
};

int run_repair(const Inputs& in, const RepairFlags& flags) {
  auto g = rdf::read_turtle_file(in.data);
  repair::RepairOptions options;
  options.solve.budget = flags.budget;
  options.solve.threads = flags.threads;
  auto result = repair::repair(g, load_shapes(in.shapes), load_strategies(in.strategies), options);

  std::vector<repair::RepairModel> shown = result.models;
  if (!flags.all_models && shown.size() > 1) shown.resize(1);
  repair::RepairModel chosen = shown.empty() ? repair::RepairModel{} : shown.front();

  std::string output;
  if (flags.apply) {
    rdf::Graph fixed = rdf::apply_patch(g, chosen.additions, chosen.deletions);
    fixed.prefixes() = g.prefixes();
    output = rdf::serialize_turtle(fixed);
  }
  if (in.json) {
    json models = json::array();
    for (std::size_t i = 0; i < shown.size(); ++i) {
      json m = service::model_json(shown[i], g.prefixes());
      m["optimal"] = i == 0;
      m["patch"] = repair::serialize_patch(shown[i]);
      models.push_back(std::move(m));
    }
    json body{{"conforms", result.report.conforms},
              {"violations", result.report.violations.size()},
              {"modelCount", result.models.size()},
              {"models", std::move(models)}};
    if (flags.apply) body["graph"] = output;
    output = body.dump(2) + "\n";
  } else if (!flags.apply) {
    if (result.report.conforms) std::cerr << "graph conforms; nothing to repair\n";
    for (const auto& m : shown) {
      if (flags.all_models) output += "# model " + repair::model_id(m) + "\n";
      output += repair::serialize_patch(m);
    }
  }
  if (flags.out.empty()) std::cout << output;
  else write_file(flags.out, output);
  return ok;
}

int run_directives(const Inputs& in) {
  auto g = rdf::read_turtle_file(in.data);
  auto shapes = load_shapes(in.shapes);
  auto strategies = load_strategies(in.strategies);
  auto report = shacl::validate(g, shapes);
  auto u = strategy::compile(strategies, repair::ground(g, shapes, report, strategy::ground_options(strategies)), g);
  std::cout << strategy::format_directives(u, g.prefixes());
  return ok;
}

struct ServeFlags {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::string data;
  std::string ui;
  std::string shapes;
  std::string strategies = "profile";
  std::size_t budget = 1'000'000;
  unsigned fixpoint_bound = 8;
  unsigned threads = 1;
};

httplib::Server* running = nullptr;

int run_serve(const ServeFlags& flags) {
  service::ServiceOptions options;
  options.shapes = load_shapes(flags.shapes);
  options.strategies = load_strategies(flags.strategies);
  options.profile_strategies = false;
  options.repair.solve.budget = flags.budget;
  options.repair.solve.threads = flags.threads;
  options.repair.fixpoint_bound = flags.fixpoint_bound;
  service::CcvService svc(std::move(options));
  if (!flags.data.empty())
    for (const auto& name : svc.import_directory(flags.data)) std::cerr << "loaded " << name << '\n';

  httplib::Server server;
  service::install_routes(server, svc, flags.ui);
  running = &server;
  std::signal(SIGINT, [](int) { if (running) running->stop(); });
  std::signal(SIGTERM, [](int) { if (running) running->stop(); });
  std::cerr << "listening on " << flags.host << ':' << flags.port << '\n';
  if (!server.listen(flags.host, flags.port)) {
    std::cerr << "cannot listen on " << flags.host << ':' << flags.port << '\n';
    return 1;
  }
  return ok;
}

int run_bulkgen(const bulk::SuiteOptions& options, const std::string& out) {
  auto cases = bulk::generate_cases(options);
  bulk::write_cases(cases, out);
  std::size_t most = 0;
  for (const auto& c : cases) most = std::max(most, c.inconsistencies);
  std::cerr << "wrote " << cases.size() << " cases to " << out << " (max inconsistencies " << most << ")\n";
  return ok;
}

int run_bulkrun(const std::string& dir, const std::string& csv, const bulk::SuiteOptions& options) {
  auto cases = bulk::read_cases(dir);
  std::size_t done = 0;
  auto results = bulk::run_suite(cases, options, [&](const bulk::BulkResult& r) {
    std::cerr << '[' << ++done << '/' << cases.size() << "] " << r.id << " inconsistencies=" << r.inconsistencies
              << " models=" << r.models << " seconds=" << r.seconds << (r.passed() ? "" : " FAILED") << '\n';
  });
  if (csv.empty()) std::cout << bulk::results_csv(results);
  else write_file(csv, bulk::results_csv(results));
  std::size_t passed = 0;
  for (const auto& r : results) {
    if (r.passed()) ++passed;
    else std::cerr << "case " << r.id << " (seed " << r.seed << ") failed: " << r.error << '\n';
  }
  std::cerr << passed << '/' << results.size() << " cases passed\n";
  return passed == results.size() ? ok : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contract compliance validation and repair over SHACL shapes"};
  app.require_subcommand(1);

  Inputs in;
  auto add_inputs = [&](CLI::App* cmd, bool strategies) {
    cmd->add_option("data", in.data, "Data graph (Turtle)")->required()->check(CLI::ExistingFile);
    cmd->add_option("shapes", in.shapes, "Shapes graph (Turtle); default: bundled CCV profile")
        ->check(CLI::ExistingFile);
    if (strategies)
      cmd->add_option("--strategies", in.strategies, "Repair strategies (Turtle), or 'profile' for the bundled set");
    cmd->add_flag("--json", in.json, "Machine-readable output");
  };

  auto* validate = app.add_subcommand("validate", "Validate a data graph; exit 1 on violations");
  add_inputs(validate, false);

  RepairFlags rf;
  auto* repair = app.add_subcommand("repair", "Compute minimal repairs");
  add_inputs(repair, true);
  repair->add_flag("--apply", rf.apply, "Print the graph repaired with the optimal model");
  repair->add_flag("--all-models", rf.all_models, "Print every optimal model");
  repair->add_option("--out", rf.out, "Write output to a file");
  repair->add_option("--budget", rf.budget, "Solver evaluation budget")->check(CLI::PositiveNumber);
  repair->add_option("--threads", rf.threads, "Solver threads")->check(CLI::Range(1u, 256u));

  auto* directives = app.add_subcommand("dump-directives", "Print the compiled repair directives");
  add_inputs(directives, true);

  ServeFlags sf;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", sf.host, "Bind address")->envname("CCV_HOST")->capture_default_str();
  serve->add_option("--port", sf.port, "Port")->envname("CCV_PORT")->check(CLI::Range(1, 65535))->capture_default_str();
  serve->add_option("--data", sf.data, "Directory of *.ttl graphs to load")->envname("CCV_DATA")->check(CLI::ExistingDirectory);
  serve->add_option("--ui", sf.ui, "Directory of the UI bundle")->envname("CCV_UI");
  serve->add_option("--shapes", sf.shapes, "Shapes graph; default: bundled CCV profile")->envname("CCV_SHAPES");
  serve->add_option("--strategies", sf.strategies, "Strategies file, 'profile', or '' for none")
      ->envname("CCV_STRATEGIES")->capture_default_str();
  serve->add_option("--budget", sf.budget, "Solver evaluation budget")->envname("CCV_BUDGET")->capture_default_str();
  serve->add_option("--fixpoint-bound", sf.fixpoint_bound, "Repair iteration bound")
      ->envname("CCV_FIXPOINT_BOUND")->capture_default_str();
  serve->add_option("--threads", sf.threads, "Solver threads")->envname("CCV_THREADS")->capture_default_str();

  bulk::SuiteOptions so;
  std::string bulk_out, bulk_dir, bulk_csv;
  auto* bulkgen = app.add_subcommand("bulkgen", "Generate bulk evaluation cases");
  bulkgen->add_option("--seed", so.seed, "Suite seed")->capture_default_str();
  bulkgen->add_option("--cases", so.cases, "Number of cases")->capture_default_str();
  bulkgen->add_option("--max-inconsistencies", so.max_inconsistencies, "Upper bound on injected violations")
      ->capture_default_str();
  bulkgen->add_option("--out", bulk_out, "Output directory")->required();

  auto* bulkrun = app.add_subcommand("bulkrun", "Repair generated cases and emit a CSV");
  bulkrun->add_option("dir", bulk_dir, "Directory written by bulkgen")->required()->check(CLI::ExistingDirectory);
  bulkrun->add_option("--csv", bulk_csv, "CSV output file; default stdout");
  bulkrun->add_option("--threads", so.threads, "Cases repaired in parallel")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return run_validate(in);
    if (*repair) return run_repair(in, rf);
    if (*directives) return run_directives(in);
    if (*serve) return run_serve(sf);
    if (*bulkgen) return run_bulkgen(so, bulk_out);
    if (*bulkrun) return run_bulkrun(bulk_dir, bulk_csv, so);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return parse_failure;
  } catch (const UnsupportedShapeError& e) {
    std::cerr << "unsupported shape: " << e.what() << '\n';
    return unsupported;
  } catch (const StrategyError& e) {
    std::cerr << "unsupported strategy: " << e.what() << '\n';
    return unsupported;
  } catch (const repair::UnrepairableError& e) {
    std::cerr << "unrepairable: " << e.what() << '\n';
    for (const auto& b : e.blocking()) std::cerr << "  blocked by " << b << '\n';
    return unrepairable;
  } catch (const repair::BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    if (e.incumbent()) std::cerr << "best model found so far:\n" << repair::serialize_patch(*e.incumbent());
    return budget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
