#include "kmax/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "kmax/errors.hpp"
#include "kmax/instance_io.hpp"

namespace kmax {

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.policies.empty()) throw ConfigError("at least one policy is required");
  if (cfg.horizon < 1) throw ConfigError("horizon must be >= 1");
  if (cfg.repeats < 1) throw ConfigError("repeats must be >= 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) throw ConfigError("alpha must be in (0,1]");
  if (!(cfg.beta > 0.0 && cfg.beta <= 1.0)) throw ConfigError("beta must be in (0,1]");
}

Instance resolve_instance(const std::string& name_or_path) {
  Instance inst;
  if (name_or_path == "D1" || name_or_path == "D2" || name_or_path == "D3") {
    inst = builtin_instance(name_or_path);
  } else if (std::filesystem::exists(name_or_path)) {
    inst = load_instance_file(name_or_path);
  } else {
    throw UnknownInstance(name_or_path);
  }
  validate_instance(inst);
  return inst;
}

std::vector<std::size_t> resolve_value_rank(const std::string& spec, const Instance& inst) {
  if (spec == "true") return true_value_rank(inst);
  std::vector<std::size_t> rank(inst.n(), inst.n());
  std::stringstream ss(spec);
  std::string item;
  std::size_t position = 0;
  while (std::getline(ss, item, ',')) {
    std::size_t label = 0;
    try {
      label = std::stoul(item);
    } catch (const std::exception&) {
      throw ConfigError("value order: '" + item + "' is not an arm label");
    }
    if (label < 1 || label > inst.n() || rank[label - 1] != inst.n())
      throw ConfigError("value order must be a permutation of 1.." + std::to_string(inst.n()));
    rank[label - 1] = position++;
  }
  if (position != inst.n()) throw ConfigError("value order must list all " + std::to_string(inst.n()) + " arms");
  return rank;
}

RewardTrace run_one(const Instance& inst, AnyPolicy& policy, std::size_t horizon, std::uint64_t seed) {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  Rng rng(seed);
  RewardTrace trace(horizon);
  std::map<Action, double> reward_cache;
  for (std::size_t t = 1; t <= horizon; ++t) {
    const Action action = std::visit([t](auto& p) { return p->select(t); }, policy);
    validate_action(action, inst);
    const OutcomeVector out = sample_outcomes(inst, rng);
    std::visit(
        [&](auto& p) {
          using P = std::decay_t<decltype(*p)>;
          if constexpr (std::is_base_of_v<SemiBanditPolicy, P>)
            p->update(action, restrict_outcomes(out, action));
          else
            p->update(action, observe(out, action));
        },
        policy);
    auto [it, fresh] = reward_cache.try_emplace(action, 0.0);
    if (fresh) it->second = expected_reward_discrete(action, inst.arms);
    trace[t - 1] = it->second;
  }
  return trace;
}

RewardTrace run_one(const Instance& inst, PolicyKind kind, OracleKind oracle, std::size_t horizon, std::uint64_t seed,
                    const std::optional<std::vector<std::size_t>>& value_rank) {
  auto policy = make_policy(kind, inst.n(), inst.k, oracle, value_rank);
  return run_one(inst, policy, horizon, seed);
}

std::vector<double> cumulative_regret(const RewardTrace& trace, double target) {
  std::vector<double> cum(trace.size());
  double total = 0.0;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    total += target - trace[t];
    cum[t] = total;
  }
  return cum;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  ExperimentResult result;
  result.instance = resolve_instance(cfg.instance);
  const Instance& inst = result.instance;
  result.opt_action = exhaustive_oracle(inst.arms, inst.k);
  result.opt = expected_reward_discrete(result.opt_action, inst.arms);
  result.target = cfg.alpha * cfg.beta * result.opt;
  for (std::size_t r = 0; r < cfg.repeats; ++r) result.seeds.push_back(cfg.base_seed + r);

  std::optional<std::vector<std::size_t>> rank;
  if (std::find(cfg.policies.begin(), cfg.policies.end(), PolicyKind::kAlg1) != cfg.policies.end())
    rank = resolve_value_rank(cfg.value_order, inst);

  const std::size_t T = cfg.horizon;
  const std::size_t R = cfg.repeats;
  for (PolicyKind kind : cfg.policies) {
    std::vector<std::vector<double>> runs(R);
    parallel_for(R, cfg.threads, [&](std::size_t r) {
      runs[r] = cumulative_regret(run_one(inst, kind, cfg.oracle, T, result.seeds[r], rank), result.target);
    });

    RegretCurve curve;
    curve.policy = to_string(kind);
    curve.mean.assign(T, 0.0);
    curve.std_error.assign(T, 0.0);
    for (std::size_t t = 0; t < T; ++t) {
      double sum = 0.0;
      for (std::size_t r = 0; r < R; ++r) sum += runs[r][t];
      const double mean = sum / static_cast<double>(R);
      curve.mean[t] = mean;
      if (R > 1) {
        double ss = 0.0;
        for (std::size_t r = 0; r < R; ++r) ss += (runs[r][t] - mean) * (runs[r][t] - mean);
        curve.std_error[t] = std::sqrt(ss / static_cast<double>(R - 1)) / std::sqrt(static_cast<double>(R));
      }
    }
    result.curves.push_back(std::move(curve));
  }
  return result;
}

std::vector<double> bound_reference(const Instance& inst, std::size_t horizon, double scale) {
  const GapReport gaps = opt_and_gaps(inst);
  double weight = 0.0;
  bool any_finite = false;
  for (double gap : gaps.delta_min_per_arm) {
    if (!std::isfinite(gap)) continue;
    any_finite = true;
    weight += static_cast<double>(inst.k) / gap;
  }
  if (!any_finite) throw InfiniteGap("no arm belongs to a suboptimal action; the envelope is undefined");
  std::vector<double> curve(horizon);
  for (std::size_t t = 1; t <= horizon; ++t) curve[t - 1] = scale * weight * std::log(static_cast<double>(t));
  return curve;
}

}  // namespace kmax
