#include "kmax/oracles.hpp"

#include <cmath>
#include <vector>

#include "kmax/errors.hpp"
#include "kmax/reward.hpp"

namespace kmax {

OracleSpec OracleSpec::of(OracleKind kind) {
  if (kind == OracleKind::kExhaustive) return {kind, 1.0, 1.0};
  return {kind, 1.0 - std::exp(-1.0), 1.0};
}

OracleKind parse_oracle_kind(std::string_view name) {
  if (name == "greedy") return OracleKind::kGreedy;
  if (name == "exhaustive") return OracleKind::kExhaustive;
  throw ConfigError("unknown oracle '" + std::string(name) + "' (expected greedy or exhaustive)");
}

std::string to_string(OracleKind kind) { return kind == OracleKind::kGreedy ? "greedy" : "exhaustive"; }

Action greedy_oracle(std::span<const DiscreteArm> arms, std::size_t k) {
  const std::size_t n = arms.size();
  std::vector<const DiscreteArm*> chosen;
  std::vector<bool> taken(n, false);
  std::vector<ArmIndex> picked;
  chosen.reserve(k + 1);
  for (std::size_t pass = 0; pass < k && pass < n; ++pass) {
    ArmIndex best = n;
    double best_value = -1.0;
    for (ArmIndex i = 0; i < n; ++i) {
      if (taken[i]) continue;
      chosen.push_back(&arms[i]);
      // Comparing totals is the same as comparing marginal gains.
      const double value = expected_max(chosen);
      chosen.pop_back();
      if (value > best_value) {
        best_value = value;
        best = i;
      }
    }
    taken[best] = true;
    chosen.push_back(&arms[best]);
    picked.push_back(best);
  }
  return Action(std::move(picked));
}

Action exhaustive_oracle(std::span<const DiscreteArm> arms, std::size_t k) {
  if (binomial(arms.size(), k) > kMaxEnumeratedActions)
    throw TooLarge("exhaustive oracle: C(" + std::to_string(arms.size()) + "," + std::to_string(k) +
                   ") exceeds the enumeration limit");
  Action best;
  double best_value = -1.0;
  for_each_subset(arms.size(), k, [&](const Action& a) {
    const double value = expected_reward_discrete(a, arms);
    if (value > best_value) {
      best_value = value;
      best = a;
    }
  });
  return best;
}

Action solve(OracleKind kind, std::span<const DiscreteArm> arms, std::size_t k) {
  return kind == OracleKind::kGreedy ? greedy_oracle(arms, k) : exhaustive_oracle(arms, k);
}

}  // namespace kmax
