// Command-line front end: compute, verify, catalog, export.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "w11/json_io.hpp"
#include "w11/suites.hpp"

using namespace w11;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;

struct InvalidInput : Error {
  using Error::Error;
};

struct RunConfig {
  std::optional<int> g;
  std::optional<int> n;
  bool full = false;
  std::string basis = "complete";
  std::string json_path;
  int threads = 0;
  std::vector<std::string> suites;
  bool nonessential = false;
  std::uint64_t seed = 20240611;
  int trials = 200;
};

BasisMode parse_mode(const std::string& s) {
  if (s == "essential") return BasisMode::Essential;
  if (s == "full") return BasisMode::Full;
  if (s == "complete") return BasisMode::Complete;
  throw InvalidInput("unknown basis mode '" + s + "'");
}

std::pair<int, int> checked_case(const RunConfig& cfg) {
  if (!cfg.g || !cfg.n) throw InvalidInput("both -g/--genus and -n/--legs are required");
  const int g = *cfg.g, n = *cfg.n;
  if (g < 1 || n < 0) throw InvalidInput("need g >= 1 and n >= 0");
  const int e = excess_complex(g, n);
  if (e != 0 && e != 2 && e != 4)
    throw InvalidInput("unsupported excess E(" + std::to_string(g) + "," + std::to_string(n) +
                       ") = 3g + 2n - 25 = " + std::to_string(e) + "; only E in {0, 2, 4} is supported");
  return {g, n};
}

void write_json(const std::string& path, const Json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << j.dump(2) << "\n";
}

ComputeOptions compute_options(const RunConfig& cfg) {
  ComputeOptions o;
  o.mode = parse_mode(cfg.basis);
  o.keep_k = cfg.full;
  o.threads = resolve_threads(cfg.threads);
  return o;
}

int cmd_compute(const RunConfig& cfg) {
  const auto [g, n] = checked_case(cfg);
  const ComputeOptions o = compute_options(cfg);
  const CohomologyResult r = compute_cohomology(g, n, o);
  std::cout << "B_{" << g << "," << n << "}  excess " << excess_complex(g, n) << "  basis " << to_string(o.mode)
            << (o.keep_k ? "" : ", modulo K") << "\n";
  bool any = false;
  for (const auto& [k, d] : r.H) {
    if (d.empty()) continue;
    std::cout << "k=" << k << ": " << format_decomposition(d) << "\n";
    any = true;
  }
  std::cout << (any ? "all other degrees: 0" : "all degrees: 0") << "\n";
  std::cout << "note: gr_11 H_c^k(M_{" << g << "," << n << "}) is this result tensored with the "
            << "2-dimensional H^11(Mbar_{1,11}) (not computed)\n";
  write_json(cfg.json_path, to_json(r));
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  for (const auto& s : cfg.suites)
    if (!is_suite(s)) throw InvalidInput("unknown suite '" + s + "'");
  SuiteOptions o;
  if (cfg.g || cfg.n) o.cases.push_back(checked_case(cfg));
  o.compute = compute_options(cfg);
  o.seed = cfg.seed;
  o.trials = cfg.trials;
  const std::vector<std::string> names = cfg.suites.empty() ? suite_names() : cfg.suites;
  bool all = true;
  Json report = Json::array();
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name, o);
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "\n";
    for (const auto& line : r.details) std::cout << "  " << line << "\n";
    report.push_back({{"suite", r.name}, {"passed", r.passed}, {"details", r.details}});
    all = all && r.passed;
  }
  write_json(cfg.json_path, report);
  return all ? 0 : kExitFailure;
}

int cmd_catalog(const RunConfig& cfg) {
  const auto templates = component_catalog(4, cfg.nonessential);
  Json j = Json::array();
  for (const auto& t : templates) {
    std::cout << describe(t) << "\n";
    j.push_back(to_json(t));
  }
  write_json(cfg.json_path, j);
  return 0;
}

int cmd_export(const RunConfig& cfg) {
  const auto [g, n] = checked_case(cfg);
  const GradedBasis b = enumerate_basis(g, n, parse_mode(cfg.basis));
  for (const auto& [k, gens] : b.by_degree) std::cout << "C^" << k << ": " << gens.size() << "\n";
  write_json(cfg.json_path, to_json(b));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weight-11 graph complexes B_{g,n} of excess at most 4"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_case = [&cfg](CLI::App* sub) {
    sub->add_option("-g,--genus", cfg.g, "Genus g");
    sub->add_option("-n,--legs", cfg.n, "Number of legs n");
  };
  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--basis", cfg.basis, "Generators: essential, full or complete")
        ->check(CLI::IsMember({"essential", "full", "complete"}));
    sub->add_option("--threads", cfg.threads, "Worker threads (falls back to W11_THREADS)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--json", cfg.json_path, "Write JSON output to this path");
  };

  auto* compute = app.add_subcommand("compute", "S_n-equivariant cohomology of B_{g,n}");
  add_case(compute);
  add_common(compute);
  compute->add_flag("--full", cfg.full, "Keep the acyclic subcomplex K");

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  add_case(verify);
  add_common(verify);
  verify->add_option("--suite", cfg.suites, "Suite name (repeatable; default all)");
  verify->add_option("--seed", cfg.seed, "Seed for randomized suites");
  verify->add_option("--trials", cfg.trials, "Trials per randomized suite")->check(CLI::PositiveNumber);

  auto* catalog = app.add_subcommand("catalog", "List component templates");
  catalog->add_flag("--nonessential", cfg.nonessential, "Also list the set S");
  catalog->add_option("--json", cfg.json_path, "Write JSON output to this path");

  auto* exporter = app.add_subcommand("export", "Export the graded basis");
  add_case(exporter);
  add_common(exporter);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*compute) return cmd_compute(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*catalog) return cmd_catalog(cfg);
    if (*exporter) return cmd_export(cfg);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInvalid;
}
