#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kmax/errors.hpp"
#include "kmax/policies.hpp"
#include "kmax/reward.hpp"

namespace kmax {

// --- UCB over k-subsets ----------------------------------------------------

SetUcb::SetUcb(std::size_t n, std::size_t k) {
  const std::size_t count = binomial(n, k);
  if (count > kMaxEnumeratedActions)
    throw TooLarge("set-ucb: C(" + std::to_string(n) + "," + std::to_string(k) + ") meta-arms is too many");
  actions_.reserve(count);
  for_each_subset(n, k, [&](const Action& a) { actions_.push_back(a); });
  pulls_.assign(actions_.size(), 0);
  mean_.assign(actions_.size(), 0.0);
}

Action SetUcb::select(std::size_t t) {
  std::size_t best = 0;
  double best_index = -1.0;
  for (std::size_t m = 0; m < actions_.size(); ++m) {
    if (pulls_[m] == 0) return actions_[m];
    const double index = mean_[m] + confidence_radius(t, pulls_[m]);
    if (index > best_index) {
      best_index = index;
      best = m;
    }
  }
  return actions_[best];
}

void SetUcb::update(const Action& action, const Feedback& fb) {
  const auto it = std::lower_bound(actions_.begin(), actions_.end(), action);
  if (it == actions_.end() || *it != action) throw InvalidInstance("set-ucb: update for an unknown action");
  const auto m = static_cast<std::size_t>(it - actions_.begin());
  ++pulls_[m];
  mean_[m] += (fb.max_value - mean_[m]) / static_cast<double>(pulls_[m]);
}

// --- semi-bandit CUCB ------------------------------------------------------

SemiBanditCucb::SemiBanditCucb(std::size_t n, std::size_t k, OracleKind oracle)
    : k_(k), oracle_(oracle), observations_(n, 0), value_counts_(n) {}

std::vector<DiscreteArm> SemiBanditCucb::optimistic_arms(std::size_t t) const {
  const std::size_t n = observations_.size();
  std::vector<DiscreteArm> arms;
  arms.reserve(n);
  std::vector<BinaryArm> binaries;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t total = observations_[i];
    binaries.clear();
    // Placeholder for unseen values: never observed, so its estimate is 0.
    binaries.push_back({upper_bound(0.0, t, total), 1.0});
    // Conditional probability of each observed value given X <= value,
    // walking down from the largest value.
    std::size_t at_or_below = total;
    for (auto it = value_counts_[i].rbegin(); it != value_counts_[i].rend(); ++it) {
      const auto [value, count] = *it;
      const double estimate = static_cast<double>(count) / static_cast<double>(at_or_below);
      binaries.push_back({upper_bound(estimate, t, at_or_below), value});
      at_or_below -= count;
    }
    arms.push_back(recompose(binaries));
  }
  return arms;
}

Action SemiBanditCucb::select(std::size_t t) { return solve(oracle_, optimistic_arms(t), k_); }

void SemiBanditCucb::update(const Action&, const RestrictedOutcomes& outcomes) {
  for (const auto& [i, x] : outcomes.observed) {
    ++observations_[i];
    if (x > 0.0) ++value_counts_[i][x];
  }
}

// ---------------------------------------------------------------------------

PolicyKind parse_policy_kind(std::string_view name) {
  if (name == "alg1") return PolicyKind::kAlg1;
  if (name == "alg2") return PolicyKind::kAlg2;
  if (name == "alg3") return PolicyKind::kAlg3;
  if (name == "set-ucb") return PolicyKind::kSetUcb;
  if (name == "semi-cucb") return PolicyKind::kSemiCucb;
  throw ConfigError("unknown policy '" + std::string(name) + "' (expected alg1|alg2|alg3|set-ucb|semi-cucb)");
}

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kAlg1: return "alg1";
    case PolicyKind::kAlg2: return "alg2";
    case PolicyKind::kAlg3: return "alg3";
    case PolicyKind::kSetUcb: return "set-ucb";
    case PolicyKind::kSemiCucb: return "semi-cucb";
  }
  return "?";
}

AnyPolicy make_policy(PolicyKind kind, std::size_t n, std::size_t k, OracleKind oracle,
                      const std::optional<std::vector<std::size_t>>& value_rank) {
  switch (kind) {
    case PolicyKind::kAlg1:
      if (!value_rank) throw ConfigError("alg1 requires a value order");
      return std::make_unique<KnownOrderCucb>(n, k, oracle, *value_rank);
    case PolicyKind::kAlg2: return std::make_unique<UnknownOrderCucb>(n, k, oracle);
    case PolicyKind::kAlg3: return std::make_unique<FiniteSupportCucb>(n, k, oracle);
    case PolicyKind::kSetUcb: return std::make_unique<SetUcb>(n, k);
    case PolicyKind::kSemiCucb: return std::make_unique<SemiBanditCucb>(n, k, oracle);
  }
  throw ConfigError("unhandled policy kind");
}

std::vector<std::size_t> true_value_rank(const Instance& inst) {
  const auto arms = inst.binary_arms();
  std::vector<std::size_t> order(arms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return arms[a].value > arms[b].value; });
  std::vector<std::size_t> rank(arms.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

}  // namespace kmax
