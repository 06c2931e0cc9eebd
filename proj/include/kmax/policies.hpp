#pragma once

// Online learners. Value-index learners implement `Policy` and only ever see
// `Feedback`; the semi-bandit baseline implements `SemiBanditPolicy` and sees
// the outcomes of the arms it played. Neither interface carries the hidden
// instance parameters.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kmax/arm_model.hpp"
#include "kmax/oracles.hpp"

namespace kmax {

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  /// Action for round t (1-based).
  virtual Action select(std::size_t t) = 0;
  virtual void update(const Action& action, const Feedback& fb) = 0;
};

class SemiBanditPolicy {
 public:
  virtual ~SemiBanditPolicy() = default;
  virtual std::string name() const = 0;
  virtual Action select(std::size_t t) = 0;
  virtual void update(const Action& action, const RestrictedOutcomes& outcomes) = 0;
};

/// sqrt(3 ln t / (2 count)); +inf when count is 0.
double confidence_radius(std::size_t t, std::size_t count);

/// min(estimate + radius, 1), with an untriggered estimate pinned at 1.
double upper_bound(double estimate, std::size_t t, std::size_t count);

// Running-mean updates of a Bernoulli estimate.
inline void zero_update(double& estimate, std::size_t& count) {
  ++count;
  estimate = (1.0 - 1.0 / static_cast<double>(count)) * estimate;
}
inline void one_update(double& estimate, std::size_t& count) {
  ++count;
  const double w = 1.0 / static_cast<double>(count);
  estimate = (1.0 - w) * estimate + w;
}

// ---------------------------------------------------------------------------
// CUCB with the value ordering known in advance.

struct KnownOrderState {
  std::vector<std::size_t> trigger_count;
  std::vector<double> p_hat;
  std::vector<double> v_hat;
  std::size_t round = 0;
};

class KnownOrderCucb : public Policy {
 public:
  /// `value_rank[i]` is arm i's position in decreasing value order (0 = highest).
  KnownOrderCucb(std::size_t n, std::size_t k, OracleKind oracle, std::vector<std::size_t> value_rank);

  std::string name() const override { return "alg1"; }
  Action select(std::size_t t) override;
  void update(const Action& action, const Feedback& fb) override;

  /// Optimistic (p, v) fed to the oracle at round t.
  std::vector<BinaryArm> optimistic_arms(std::size_t t) const;
  const KnownOrderState& state() const { return state_; }

 private:
  std::size_t k_;
  OracleKind oracle_;
  std::vector<std::size_t> rank_;
  KnownOrderState state_;
};

// ---------------------------------------------------------------------------
// CUCB without knowledge of the value ordering.

struct UnknownOrderState {
  std::vector<std::size_t> trigger_count;
  std::vector<bool> value_seen;
  std::vector<double> p_hat;
  std::vector<double> v_hat;
  std::size_t round = 0;
};

class UnknownOrderCucb : public Policy {
 public:
  UnknownOrderCucb(std::size_t n, std::size_t k, OracleKind oracle);

  std::string name() const override { return "alg2"; }
  Action select(std::size_t t) override;
  void update(const Action& action, const Feedback& fb) override;

  std::vector<BinaryArm> optimistic_arms(std::size_t t) const;
  const UnknownOrderState& state() const { return state_; }

 private:
  std::size_t k_;
  OracleKind oracle_;
  UnknownOrderState state_;
};

// ---------------------------------------------------------------------------
// CUCB for finite-support arms of unknown support.

/// One binary component of an arm. Slot 0 of every arm is the placeholder
/// at value 1 standing in for values not yet observed.
struct ValueSlot {
  std::size_t trigger_count = 0;
  bool value_seen = false;
  double p_hat = 1.0;
  double v_hat = 1.0;
};

struct FiniteSupportState {
  std::vector<std::vector<ValueSlot>> slots;
  std::size_t round = 0;

  /// Number of discovered values of arm i.
  std::size_t discovered(ArmIndex i) const { return slots[i].size() - 1; }
};

class FiniteSupportCucb : public Policy {
 public:
  FiniteSupportCucb(std::size_t n, std::size_t k, OracleKind oracle);

  std::string name() const override { return "alg3"; }
  Action select(std::size_t t) override;
  void update(const Action& action, const Feedback& fb) override;

  /// Per-arm optimistic distributions handed to the oracle at round t.
  std::vector<DiscreteArm> optimistic_arms(std::size_t t) const;
  const FiniteSupportState& state() const { return state_; }

 private:
  std::size_t k_;
  OracleKind oracle_;
  FiniteSupportState state_;
};

// ---------------------------------------------------------------------------
// Baselines.

/// UCB1 over all k-subsets, each treated as an independent arm rewarded with
/// the observed max value.
class SetUcb : public Policy {
 public:
  SetUcb(std::size_t n, std::size_t k);

  std::string name() const override { return "set-ucb"; }
  Action select(std::size_t t) override;
  void update(const Action& action, const Feedback& fb) override;

  std::size_t num_meta_arms() const { return actions_.size(); }
  std::size_t pulls(std::size_t meta_arm) const { return pulls_[meta_arm]; }

 private:
  std::vector<Action> actions_;
  std::vector<std::size_t> pulls_;
  std::vector<double> mean_;
};

/// CUCB with semi-bandit feedback: keeps each arm's empirical outcome
/// distribution and inflates the conditional probability of every observed
/// value, plus a placeholder at value 1 for unseen support points.
class SemiBanditCucb : public SemiBanditPolicy {
 public:
  SemiBanditCucb(std::size_t n, std::size_t k, OracleKind oracle);

  std::string name() const override { return "semi-cucb"; }
  Action select(std::size_t t) override;
  void update(const Action& action, const RestrictedOutcomes& outcomes) override;

  std::vector<DiscreteArm> optimistic_arms(std::size_t t) const;
  std::size_t observations(ArmIndex i) const { return observations_[i]; }

 private:
  std::size_t k_;
  OracleKind oracle_;
  std::vector<std::size_t> observations_;
  std::vector<std::map<double, std::size_t>> value_counts_;
};

// ---------------------------------------------------------------------------

enum class PolicyKind { kAlg1, kAlg2, kAlg3, kSetUcb, kSemiCucb };

PolicyKind parse_policy_kind(std::string_view name);
std::string to_string(PolicyKind kind);

using AnyPolicy = std::variant<std::unique_ptr<Policy>, std::unique_ptr<SemiBanditPolicy>>;

/// Only alg1 takes `value_rank`; it is required for it.
AnyPolicy make_policy(PolicyKind kind, std::size_t n, std::size_t k, OracleKind oracle,
                      const std::optional<std::vector<std::size_t>>& value_rank = std::nullopt);

/// Ranks implied by the true values of a binary instance (ties: smaller index first).
std::vector<std::size_t> true_value_rank(const Instance& inst);

}  // namespace kmax
