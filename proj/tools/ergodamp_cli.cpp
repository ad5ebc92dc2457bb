// Command-line front end: one subcommand per experiment kind plus the
// acceptance suite.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ergodamp/acceptance.hpp"
#include "ergodamp/config.hpp"
#include "ergodamp/parallel.hpp"
#include "ergodamp/run.hpp"

namespace {

int run_kind(ergodamp::ExperimentKind kind, const std::string& config_path, std::string out_dir) {
  using namespace ergodamp;
  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const ValidationError& e) {
    std::cerr << "invalid config '" << config_path << "':\n";
    for (const auto& p : e.problems()) std::cerr << "  " << p << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  cfg.kind = kind;
  if (out_dir.empty()) out_dir = cfg.out.empty() ? "out" : cfg.out;

  const RunSummary s = run_experiment(cfg, out_dir);
  for (const auto& c : s.checks)
    std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << '\n';
  std::cout << "results written to " << out_dir << '\n';
  return s.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Damped transport on the flat torus: flows, Birkhoff averages, inviscid and viscous solvers"};
  app.set_version_flag("--version", ergodamp::version_string());
  app.require_subcommand(1);

  int threads = 1;
  app.add_option("--threads", threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  struct KindCommand {
    const char* name;
    const char* help;
    ergodamp::ExperimentKind kind;
    std::string config;
    std::string out;
  };
  std::vector<KindCommand> kinds{
      {"flow", "trace orbits of the flow", ergodamp::ExperimentKind::Flow, {}, {}},
      {"birkhoff", "estimate Birkhoff averages of the damping on a probe grid", ergodamp::ExperimentKind::Birkhoff, {}, {}},
      {"inviscid", "solve the inviscid problem by characteristics", ergodamp::ExperimentKind::Inviscid, {}, {}},
      {"viscous", "solve the viscous problem pseudo-spectrally", ergodamp::ExperimentKind::Viscous, {}, {}},
      {"sweep", "sweep viscosities over their logarithmic windows", ergodamp::ExperimentKind::Sweep, {}, {}},
  };
  std::vector<CLI::App*> subs;
  for (auto& k : kinds) {
    auto* sub = app.add_subcommand(k.name, k.help);
    sub->add_option("--config", k.config, "experiment config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", k.out, "output directory (default: config 'out' or ./out)");
    sub->add_option("--threads", threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    subs.push_back(sub);
  }

  std::vector<int> criteria;
  auto* accept = app.add_subcommand("accept", "run the acceptance suite");
  accept->add_option("criteria", criteria, "criterion numbers to run (default: all)")->check(CLI::Range(1, 7));
  accept->add_option("--threads", threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);
  ergodamp::set_thread_count(threads);

  for (size_t i = 0; i < subs.size(); ++i)
    if (*subs[i]) return run_kind(kinds[i].kind, kinds[i].config, kinds[i].out);

  const auto results = ergodamp::run_acceptance(std::cout, criteria);
  for (const auto& r : results)
    if (!r.passed) return 1;
  return 0;
}
