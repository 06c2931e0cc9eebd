#include "kmax/reward.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <string>

#include "kmax/errors.hpp"

namespace kmax {

namespace {

// Gaps below this are treated as ties with OPT.
constexpr double kGapTolerance = 1e-12;

// P[X < u].
double prob_below(const DiscreteArm& arm, double u) {
  double at_or_above = 0.0;
  for (std::size_t j = arm.values.size(); j-- > 0;) {
    if (arm.values[j] < u) break;
    at_or_above += arm.probs[j];
  }
  return 1.0 - at_or_above;
}

}  // namespace

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t result = 1;
  for (std::size_t j = 1; j <= k; ++j) {
    const std::size_t num = n - k + j;
    if (result > kMax / num) return kMax;
    // result * num is divisible by j at every step.
    result = result * num / j;
  }
  return result;
}

std::vector<ArmIndex> value_order(const Action& action, std::span<const BinaryArm> arms) {
  std::vector<ArmIndex> order(action.begin(), action.end());
  std::stable_sort(order.begin(), order.end(),
                   [&](ArmIndex a, ArmIndex b) { return arms[a].value > arms[b].value; });
  return order;
}

double expected_reward_binary(const Action& action, std::span<const BinaryArm> arms) {
  double reward = 0.0;
  double none_above = 1.0;
  for (ArmIndex i : value_order(action, arms)) {
    reward += arms[i].value * arms[i].prob * none_above;
    none_above *= 1.0 - arms[i].prob;
  }
  return reward;
}

double expected_max(std::span<const DiscreteArm* const> arms) {
  std::vector<double> support;
  for (const DiscreteArm* a : arms) support.insert(support.end(), a->values.begin(), a->values.end());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  // Running CDF per arm, advanced through its own support in step with `support`.
  std::vector<double> cdf(arms.size());
  std::vector<std::size_t> cursor(arms.size(), 0);
  double joint_prev = 1.0;
  for (std::size_t a = 0; a < arms.size(); ++a) {
    cdf[a] = 1.0 - arms[a]->total_mass();
    joint_prev *= cdf[a];
  }

  double expectation = 0.0;
  for (double u : support) {
    double joint = 1.0;
    for (std::size_t a = 0; a < arms.size(); ++a) {
      const DiscreteArm& arm = *arms[a];
      while (cursor[a] < arm.values.size() && arm.values[cursor[a]] <= u) cdf[a] += arm.probs[cursor[a]++];
      joint *= cdf[a];
    }
    expectation += u * (joint - joint_prev);
    joint_prev = joint;
  }
  return expectation;
}

double expected_reward_discrete(const Action& action, std::span<const DiscreteArm> arms) {
  std::vector<const DiscreteArm*> selected;
  selected.reserve(action.size());
  for (ArmIndex i : action) selected.push_back(&arms[i]);
  return expected_max(selected);
}

TriggerProbs triggering_probs(const Action& action, std::span<const BinaryArm> arms) {
  TriggerProbs tp;
  tp.q.assign(arms.size(), 0.0);
  tp.q_tilde.assign(arms.size(), 0.0);
  double none_above = 1.0;
  for (ArmIndex i : value_order(action, arms)) {
    tp.q[i] = none_above;
    tp.q_tilde[i] = none_above * arms[i].prob;
    none_above *= 1.0 - arms[i].prob;
  }
  return tp;
}

std::vector<double> winner_probs(const Action& action, std::span<const DiscreteArm> arms) {
  std::vector<double> win(arms.size(), 0.0);
  for (ArmIndex i : action) {
    const DiscreteArm& arm = arms[i];
    for (std::size_t j = 0; j < arm.values.size(); ++j) {
      const double u = arm.values[j];
      double pr = arm.probs[j];
      for (ArmIndex other : action) {
        if (other == i) continue;
        // Smaller indices win ties, so they must be strictly below u.
        pr *= other < i ? prob_below(arms[other], u) : arms[other].cdf(u);
      }
      win[i] += pr;
    }
  }
  return win;
}

BinaryArm equivalent_arm(const BinaryArm& arm) { return {arm.prob * arm.value, 1.0}; }

std::vector<BinaryArm> binary_decomposition(const DiscreteArm& arm) {
  const std::size_t s = arm.values.size();
  std::vector<BinaryArm> out;
  out.reserve(s);
  double tail = 0.0;  // mass strictly above the current point
  std::vector<BinaryArm> reversed;
  for (std::size_t j = s; j-- > 0;) {
    const double p = arm.probs[j];
    if (j + 1 == s) {
      reversed.push_back({p, arm.values[j]});
    } else {
      const double denom = 1.0 - tail;
      if (denom <= 1e-12) {
        if (p > 1e-12)
          throw DegenerateMass("support point " + std::to_string(arm.values[j]) +
                               " has positive probability but the mass above it is 1");
        std::clog << "warning: dropping unreachable support point " << arm.values[j] << '\n';
      } else {
        reversed.push_back({p / denom, arm.values[j]});
      }
    }
    tail += p;
  }
  out.assign(reversed.rbegin(), reversed.rend());
  return out;
}

DiscreteArm recompose(std::span<const BinaryArm> binaries) {
  std::vector<BinaryArm> sorted(binaries.begin(), binaries.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const BinaryArm& a, const BinaryArm& b) { return a.value > b.value; });

  std::vector<double> values;
  std::vector<double> probs;
  double none_above = 1.0;
  for (std::size_t g = 0; g < sorted.size();) {
    std::size_t end = g + 1;
    double none_here = 1.0 - sorted[g].prob;
    while (end < sorted.size() && sorted[end].value == sorted[g].value) none_here *= 1.0 - sorted[end++].prob;
    // A single point keeps its probability bit-exact.
    const double fires = end == g + 1 ? sorted[g].prob : 1.0 - none_here;
    const double p = fires * none_above;
    if (p > 0.0 && sorted[g].value > 0.0) {
      values.push_back(sorted[g].value);
      probs.push_back(p);
    }
    none_above *= none_here;
    g = end;
  }
  std::reverse(values.begin(), values.end());
  std::reverse(probs.begin(), probs.end());
  return {std::move(values), std::move(probs)};
}

GapReport opt_and_gaps(const Instance& inst) {
  const std::size_t n = inst.n();
  const std::size_t count = binomial(n, inst.k);
  if (count > kMaxEnumeratedActions)
    throw TooLarge("C(" + std::to_string(n) + "," + std::to_string(inst.k) + ") exceeds the enumeration limit");

  std::vector<Action> actions;
  std::vector<double> rewards;
  actions.reserve(count);
  rewards.reserve(count);
  for_each_subset(n, inst.k, [&](const Action& a) {
    actions.push_back(a);
    rewards.push_back(expected_reward_discrete(a, inst.arms));
  });

  GapReport rep;
  rep.num_actions = actions.size();
  std::size_t best = 0;
  for (std::size_t a = 1; a < rewards.size(); ++a)
    if (rewards[a] > rewards[best]) best = a;
  rep.opt = rewards[best];
  rep.opt_action = actions[best];
  rep.delta_min_per_arm.assign(n, kInfinity);
  rep.delta_max_per_arm.assign(n, 0.0);

  for (std::size_t a = 0; a < actions.size(); ++a) {
    const double gap = std::max(rep.opt - rewards[a], 0.0);
    if (gap <= kGapTolerance) continue;
    ++rep.num_bad_actions;
    const auto win = winner_probs(actions[a], inst.arms);
    for (ArmIndex i : actions[a]) {
      if (!(win[i] > 0.0)) continue;
      rep.delta_min_per_arm[i] = std::min(rep.delta_min_per_arm[i], gap);
      rep.delta_max_per_arm[i] = std::max(rep.delta_max_per_arm[i], gap);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    rep.delta_min = std::min(rep.delta_min, rep.delta_min_per_arm[i]);
    rep.delta_max = std::max(rep.delta_max, rep.delta_max_per_arm[i]);
  }
  return rep;
}

RtpmTerms rtpm_bound(const Action& action, std::span<const BinaryArm> from, std::span<const BinaryArm> to) {
  const auto tp = triggering_probs(action, from);
  bool dominates = true;
  for (ArmIndex i : action) dominates = dominates && from[i].prob >= to[i].prob;
  const double factor = dominates ? 1.0 : 2.0;

  double prob_term = 0.0;
  double value_term = 0.0;
  for (ArmIndex i : action) {
    prob_term += tp.q[i] * to[i].value * std::abs(from[i].prob - to[i].prob);
    value_term += tp.q_tilde[i] * std::abs(from[i].value - to[i].value);
  }
  return {std::abs(expected_reward_binary(action, from) - expected_reward_binary(action, to)),
          factor * prob_term + value_term};
}

}  // namespace kmax
