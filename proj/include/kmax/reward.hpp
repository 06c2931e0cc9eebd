#pragma once

// Exact expected reward of the max operator and the quantities derived from
// it: triggering probabilities, gaps, arm equivalence and the decomposition of
// a finite-support arm into independent single-point arms.

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "kmax/arm_model.hpp"

namespace kmax {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Triggering probabilities of the value-index feedback, indexed by arm.
/// Entries of arms outside the action are zero.
struct TriggerProbs {
  std::vector<double> q;        // probability that arm i's Bernoulli part is revealed
  std::vector<double> q_tilde;  // probability that arm i wins
};

struct GapReport {
  double opt = 0.0;
  Action opt_action;
  std::vector<double> delta_min_per_arm;  // +inf when the arm is in no bad action
  std::vector<double> delta_max_per_arm;  // 0 when the arm is in no bad action
  double delta_min = kInfinity;
  double delta_max = 0.0;
  std::size_t num_actions = 0;
  std::size_t num_bad_actions = 0;
};

/// Arms of `action` ordered by decreasing value, smaller index first on ties.
std::vector<ArmIndex> value_order(const Action& action, std::span<const BinaryArm> arms);

/// sum_i v_i p_i prod_{j ranked above i} (1 - p_j).
double expected_reward_binary(const Action& action, std::span<const BinaryArm> arms);

/// E[max_{i in S} X_i] via the product of per-arm CDFs over the merged support.
double expected_reward_discrete(const Action& action, std::span<const DiscreteArm> arms);

/// Same, over an explicit list of arms.
double expected_max(std::span<const DiscreteArm* const> arms);

TriggerProbs triggering_probs(const Action& action, std::span<const BinaryArm> arms);

/// P[winner = i] under smallest-index tie-breaking, for general discrete arms.
/// Entries of arms outside the action are zero.
std::vector<double> winner_probs(const Action& action, std::span<const DiscreteArm> arms);

/// (p, v) -> (p v, 1): same expected outcome, never lowers a set's reward.
BinaryArm equivalent_arm(const BinaryArm& arm);

/// Independent single-point arms whose maximum has the distribution of `arm`.
/// Support points that can never be the maximum (the tail above them has mass
/// one) are dropped with a warning on stderr; DegenerateMass is thrown if such
/// a point carries positive probability.
std::vector<BinaryArm> binary_decomposition(const DiscreteArm& arm);

/// Distribution of the max of independent single-point arms, ascending.
/// Points with zero probability are omitted. Equal values are merged.
DiscreteArm recompose(std::span<const BinaryArm> binaries);

/// Enumerates every k-subset of the instance (guarded at 1e6 subsets).
GapReport opt_and_gaps(const Instance& inst);

struct RtpmTerms {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Both sides of the triggering-probability-modulated smoothness bound for a
/// move from (p, v) to (p', v'). Triggering probabilities are taken at (p, v).
RtpmTerms rtpm_bound(const Action& action, std::span<const BinaryArm> from, std::span<const BinaryArm> to);

/// Number of k-subsets of n items, saturating at max size_t.
std::size_t binomial(std::size_t n, std::size_t k);

/// Calls `fn(const Action&)` for each k-subset of [0, n) in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<ArmIndex> idx(k);
  for (std::size_t j = 0; j < k; ++j) idx[j] = j;
  while (true) {
    fn(Action(idx));
    std::size_t j = k;
    while (j > 0 && idx[j - 1] == n - k + j - 1) --j;
    if (j == 0) return;
    ++idx[j - 1];
    for (std::size_t l = j; l < k; ++l) idx[l] = idx[l - 1] + 1;
  }
}

inline constexpr std::size_t kMaxEnumeratedActions = 1'000'000;

}  // namespace kmax
