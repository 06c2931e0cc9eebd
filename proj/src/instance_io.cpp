#include "kmax/instance_io.hpp"

#include <cmath>
#include <fstream>

#include "kmax/errors.hpp"

namespace kmax {

Instance instance_from_json(const json& j) {
  Instance inst;
  try {
    inst.k = j.at("k").get<std::size_t>();
    for (const auto& a : j.at("arms")) {
      DiscreteArm arm;
      arm.values = a.at("values").get<std::vector<double>>();
      arm.probs = a.at("probs").get<std::vector<double>>();
      inst.arms.push_back(std::move(arm));
    }
  } catch (const json::exception& e) {
    throw InvalidInstance(std::string("malformed instance JSON: ") + e.what());
  }
  validate_instance(inst);
  return inst;
}

json instance_to_json(const Instance& inst) {
  json arms = json::array();
  for (const auto& a : inst.arms) arms.push_back({{"values", a.values}, {"probs", a.probs}});
  return {{"k", inst.k}, {"arms", arms}};
}

Instance load_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidInstance(path.string() + ": " + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const InvalidInstance& e) {
    throw InvalidInstance(path.string() + ": " + e.what());
  }
}

ExperimentConfig config_from_json(const json& j, ExperimentConfig cfg) {
  try {
    if (j.contains("instance")) cfg.instance = j.at("instance").get<std::string>();
    if (j.contains("policies")) {
      cfg.policies.clear();
      for (const auto& p : j.at("policies")) cfg.policies.push_back(parse_policy_kind(p.get<std::string>()));
    }
    if (j.contains("oracle")) cfg.oracle = parse_oracle_kind(j.at("oracle").get<std::string>());
    if (j.contains("horizon")) cfg.horizon = j.at("horizon").get<std::size_t>();
    if (j.contains("repeats")) cfg.repeats = j.at("repeats").get<std::size_t>();
    if (j.contains("seed")) cfg.base_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
    if (j.contains("beta")) cfg.beta = j.at("beta").get<double>();
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("value_order")) cfg.value_order = j.at("value_order").get<std::string>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<std::size_t>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json policies = json::array();
  for (PolicyKind p : cfg.policies) policies.push_back(to_string(p));
  // `threads` is left out: it never affects the output.
  return {{"instance", cfg.instance}, {"policies", policies},       {"oracle", to_string(cfg.oracle)},
          {"horizon", cfg.horizon},   {"repeats", cfg.repeats},     {"seed", cfg.base_seed},
          {"alpha", cfg.alpha},       {"beta", cfg.beta},           {"out", cfg.out_dir},
          {"value_order", cfg.value_order}};
}

json action_to_json(const Action& action) {
  json labels = json::array();
  for (ArmIndex i : action) labels.push_back(i + 1);
  return labels;
}

namespace {

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json gap_report_to_json(const GapReport& report) {
  json per_arm_min = json::array();
  json per_arm_max = json::array();
  for (double g : report.delta_min_per_arm) per_arm_min.push_back(finite_or_null(g));
  for (double g : report.delta_max_per_arm) per_arm_max.push_back(g);
  return {{"opt", report.opt},
          {"opt_action", action_to_json(report.opt_action)},
          {"delta_min", finite_or_null(report.delta_min)},
          {"delta_max", report.delta_max},
          {"delta_min_per_arm", per_arm_min},
          {"delta_max_per_arm", per_arm_max},
          {"num_actions", report.num_actions},
          {"num_bad_actions", report.num_bad_actions}};
}

json decomposition_to_json(const Instance& inst) {
  json arms = json::array();
  for (std::size_t i = 0; i < inst.n(); ++i) {
    json binaries = json::array();
    for (const BinaryArm& b : binary_decomposition(inst.arms[i]))
      binaries.push_back({{"value", b.value}, {"prob", b.prob}});
    arms.push_back({{"arm", i + 1},
                    {"values", inst.arms[i].values},
                    {"probs", inst.arms[i].probs},
                    {"binaries", binaries}});
  }
  return {{"k", inst.k}, {"arms", arms}};
}

}  // namespace kmax
