// kmax: command-line harness for the k-MAX bandit library.
//
//   kmax run --instance D1 --policy alg2 --policy set-ucb --horizon 5000 --out out/
//   kmax inspect --instance D3
//   kmax decompose --instance arms.json

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "kmax/errors.hpp"
#include "kmax/harness.hpp"
#include "kmax/instance_io.hpp"

namespace {

int run_command(const std::string& config_path, const std::vector<std::pair<CLI::Option*, std::function<void(kmax::ExperimentConfig&)>>>& overrides) {
  kmax::ExperimentConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw kmax::IoError("cannot open config file " + config_path);
    kmax::json j;
    try {
      in >> j;
    } catch (const kmax::json::exception& e) {
      throw kmax::ConfigError(config_path + ": " + e.what());
    }
    cfg = kmax::config_from_json(j, cfg);
  }
  for (const auto& [opt, apply] : overrides)
    if (opt->count() > 0) apply(cfg);

  const auto result = kmax::run_experiment(cfg);
  kmax::emit_outputs(result, cfg);
  for (const auto& curve : result.curves)
    std::cout << curve.policy << ": final mean cumulative regret " << curve.mean.back() << " (stderr "
              << curve.std_error.back() << ")\n";
  std::cout << "wrote " << cfg.out_dir << "/regret.csv, regret.svg, config.resolved.json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-MAX combinatorial bandit under max value-index feedback"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "simulate learners and write regret curves");
  std::string config_path;
  std::string instance;
  std::vector<std::string> policies;
  std::string oracle;
  std::size_t horizon = 0, repeats = 0, threads = 0;
  std::uint64_t seed = 0;
  double alpha = 1.0, beta = 1.0;
  std::string out_dir, value_order;
  run->add_option("--config", config_path, "JSON config file; flags override its fields");
  auto* o_instance = run->add_option("--instance", instance, "D1|D2|D3 or instance JSON file");
  auto* o_policy = run->add_option("--policy", policies, "alg1|alg2|alg3|set-ucb|semi-cucb (repeatable)");
  auto* o_oracle = run->add_option("--oracle", oracle, "greedy|exhaustive");
  auto* o_horizon = run->add_option("--horizon", horizon, "rounds per run");
  auto* o_repeats = run->add_option("--repeats", repeats, "independent runs per policy");
  auto* o_seed = run->add_option("--seed", seed, "base seed; repeat r uses seed + r");
  auto* o_alpha = run->add_option("--alpha", alpha, "approximation ratio used in the regret target");
  auto* o_beta = run->add_option("--beta", beta, "success probability used in the regret target");
  auto* o_out = run->add_option("--out", out_dir, "output directory");
  auto* o_order = run->add_option("--value-order", value_order,
                                  "alg1 value order: 'true' or arm labels high to low, e.g. 9,8,7,...");
  auto* o_threads = run->add_option("--threads", threads, "worker threads (0 = all cores)");

  // inspect
  auto* inspect = app.add_subcommand("inspect", "print OPT, the optimal action and gaps as JSON");
  std::string inspect_instance;
  inspect->add_option("--instance", inspect_instance, "D1|D2|D3 or instance JSON file")->required();

  // decompose
  auto* decompose = app.add_subcommand("decompose", "print the binary decomposition of every arm as JSON");
  std::string decompose_instance;
  decompose->add_option("--instance", decompose_instance, "D1|D2|D3 or instance JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      using Cfg = kmax::ExperimentConfig;
      return run_command(
          config_path,
          {{o_instance, [&](Cfg& c) { c.instance = instance; }},
           {o_policy,
            [&](Cfg& c) {
              c.policies.clear();
              for (const auto& p : policies) c.policies.push_back(kmax::parse_policy_kind(p));
            }},
           {o_oracle, [&](Cfg& c) { c.oracle = kmax::parse_oracle_kind(oracle); }},
           {o_horizon, [&](Cfg& c) { c.horizon = horizon; }},
           {o_repeats, [&](Cfg& c) { c.repeats = repeats; }},
           {o_seed, [&](Cfg& c) { c.base_seed = seed; }},
           {o_alpha, [&](Cfg& c) { c.alpha = alpha; }},
           {o_beta, [&](Cfg& c) { c.beta = beta; }},
           {o_out, [&](Cfg& c) { c.out_dir = out_dir; }},
           {o_order, [&](Cfg& c) { c.value_order = value_order; }},
           {o_threads, [&](Cfg& c) { c.threads = threads; }}});
    }
    if (inspect->parsed()) {
      const auto inst = kmax::resolve_instance(inspect_instance);
      std::cout << kmax::gap_report_to_json(kmax::opt_and_gaps(inst)).dump(2) << '\n';
      return 0;
    }
    if (decompose->parsed()) {
      const auto inst = kmax::resolve_instance(decompose_instance);
      std::cout << kmax::decomposition_to_json(inst).dump(2) << '\n';
      return 0;
    }
  } catch (const kmax::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
