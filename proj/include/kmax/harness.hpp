#pragma once

// Seeded simulation of learners against an instance, regret accounting and
// aggregation over repeats.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kmax/arm_model.hpp"
#include "kmax/oracles.hpp"
#include "kmax/policies.hpp"
#include "kmax/reward.hpp"

namespace kmax {

struct ExperimentConfig {
  std::string instance = "D1";  // builtin name or path to an instance JSON file
  std::vector<PolicyKind> policies;
  std::size_t horizon = 5000;
  std::size_t repeats = 20;
  std::uint64_t base_seed = 0;
  OracleKind oracle = OracleKind::kGreedy;
  double alpha = 1.0;
  double beta = 1.0;
  std::string out_dir = "out";
  /// "true" (derive from the instance) or arm labels from highest to lowest
  /// value, e.g. "9,8,7,6,5,4,3,2,1". Only used by alg1.
  std::string value_order = "true";
  /// Worker threads for repeats; 0 picks the hardware concurrency.
  std::size_t threads = 0;
};

void validate_config(const ExperimentConfig& cfg);

/// Builtin name (D1|D2|D3) or instance file; validated.
Instance resolve_instance(const std::string& name_or_path);

/// Ranks for alg1 from a value-order spec ("true" or a 1-based permutation).
std::vector<std::size_t> resolve_value_rank(const std::string& spec, const Instance& inst);

/// Per-round expected reward r_{S_t}(p, v) of the played action under the
/// true parameters.
using RewardTrace = std::vector<double>;

RewardTrace run_one(const Instance& inst, AnyPolicy& policy, std::size_t horizon, std::uint64_t seed);

RewardTrace run_one(const Instance& inst, PolicyKind kind, OracleKind oracle, std::size_t horizon, std::uint64_t seed,
                    const std::optional<std::vector<std::size_t>>& value_rank = std::nullopt);

/// Running sum of (target - reward).
std::vector<double> cumulative_regret(const RewardTrace& trace, double target);

struct RegretCurve {
  std::string policy;
  std::vector<double> mean;       // mean cumulative regret at rounds 1..T
  std::vector<double> std_error;  // standard error of the mean; 0 with one repeat
};

struct ExperimentResult {
  Instance instance;
  double opt = 0.0;
  Action opt_action;
  double target = 0.0;  // alpha * beta * OPT
  std::vector<RegretCurve> curves;
  std::vector<std::uint64_t> seeds;
};

/// Repeat r uses seed base_seed + r; aggregation is ordered by repeat index.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// c * sum_i (k / gap_min_i) * ln t for t = 1..T, skipping arms with no bad
/// action. Throws InfiniteGap when no arm has a finite gap.
std::vector<double> bound_reference(const Instance& inst, std::size_t horizon, double scale = 1.0);

/// Writes regret.csv, regret.svg and config.resolved.json into cfg.out_dir.
void emit_outputs(const ExperimentResult& result, const ExperimentConfig& cfg);

std::string regret_csv(const ExperimentResult& result);
std::string regret_svg(const ExperimentResult& result);

}  // namespace kmax
