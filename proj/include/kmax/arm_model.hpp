#pragma once

// Problem instances of the k-MAX bandit: arms with finite-support outcome
// distributions, actions, hidden outcome vectors and value-index feedback.
//
// Arms are addressed by zero-based index internally. User-facing output
// (CLI, JSON reports) labels arms 1..n.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kmax {

using ArmIndex = std::size_t;

/// Single-point arm: outputs `value` with probability `prob`, else 0.
struct BinaryArm {
  double prob = 0.0;
  double value = 0.0;

  friend bool operator==(const BinaryArm&, const BinaryArm&) = default;
};

/// Finite-support arm. `values` is strictly increasing in (0, 1] and
/// `probs[j]` is the probability of `values[j]`. Mass 1 - sum(probs) sits at
/// the implicit value 0.
///
/// The struct itself does not enforce the invariants; `validate_arm` does.
/// Estimated arms built by the learners may carry an empty support (all mass
/// at zero), which the reward engine accepts.
struct DiscreteArm {
  std::vector<double> values;
  std::vector<double> probs;

  static DiscreteArm binary(double prob, double value) { return {{value}, {prob}}; }

  std::size_t support_size() const { return values.size(); }
  double total_mass() const;
  double mean() const;
  /// P[X <= u].
  double cdf(double u) const;

  friend bool operator==(const DiscreteArm&, const DiscreteArm&) = default;
};

struct Instance {
  std::vector<DiscreteArm> arms;
  std::size_t k = 1;

  std::size_t n() const { return arms.size(); }
  /// True when every arm has a single support point.
  bool is_binary() const;
  /// The binary view; throws InvalidInstance when some arm has s_i > 1.
  std::vector<BinaryArm> binary_arms() const;
};

/// A set of distinct arm indices, kept sorted ascending.
class Action {
 public:
  Action() = default;
  explicit Action(std::vector<ArmIndex> indices);

  std::span<const ArmIndex> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool contains(ArmIndex i) const;
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  /// Copy with `i` added.
  Action with(ArmIndex i) const;

  friend bool operator==(const Action&, const Action&) = default;
  friend auto operator<=>(const Action&, const Action&) = default;

 private:
  std::vector<ArmIndex> indices_;
};

/// Hidden realisation X_1..X_n of one round.
struct OutcomeVector {
  std::vector<double> x;
};

/// What a value-index learner sees after playing an action.
struct Feedback {
  double max_value = 0.0;
  std::optional<ArmIndex> winner;  // absent iff max_value == 0
};

/// Outcomes of the played arms only; the semi-bandit channel.
struct RestrictedOutcomes {
  std::vector<std::pair<ArmIndex, double>> observed;
};

void validate_arm(const DiscreteArm& arm, std::size_t index = 0);
void validate_instance(const Instance& inst);
/// Throws InvalidInstance unless the action is a k-subset of [0, n).
void validate_action(const Action& action, const Instance& inst);

/// Random source used by simulations. 64-bit Mersenne twister with an
/// explicit 53-bit mantissa mapping so draws do not depend on the standard
/// library's distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// One uniform draw per arm, arms in index order.
OutcomeVector sample_outcomes(const Instance& inst, Rng& rng);

/// Max over the action with smallest-index-wins tie-breaking.
Feedback observe(const OutcomeVector& out, const Action& action);

RestrictedOutcomes restrict_outcomes(const OutcomeVector& out, const Action& action);

/// D1, D2 or D3 from the experiments: n = 9, k = 3, values 0.1..0.9.
Instance builtin_instance(std::string_view name);

/// Appendix-style perturbation: arm values get eps * (n - rank) added so
/// that ties are broken in favour of smaller indices. Binary arms only.
std::vector<BinaryArm> perturb_ties(std::span<const BinaryArm> arms, double eps0 = 1e-9);

}  // namespace kmax
