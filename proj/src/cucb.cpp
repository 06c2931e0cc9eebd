#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kmax/errors.hpp"
#include "kmax/policies.hpp"
#include "kmax/reward.hpp"

namespace kmax {

double confidence_radius(std::size_t t, std::size_t count) {
  if (count == 0) return kInfinity;
  return std::sqrt(3.0 * std::log(static_cast<double>(t)) / (2.0 * static_cast<double>(count)));
}

double upper_bound(double estimate, std::size_t t, std::size_t count) {
  if (count == 0) return 1.0;
  return std::min(estimate + confidence_radius(t, count), 1.0);
}

namespace {

std::vector<DiscreteArm> as_discrete(const std::vector<BinaryArm>& arms) {
  std::vector<DiscreteArm> out;
  out.reserve(arms.size());
  for (const auto& a : arms) out.push_back(DiscreteArm::binary(a.prob, a.value));
  return out;
}

// How a tied, non-winning arm j is treated when the winner is w: a smaller
// index would have won the tie, so it must have realised zero.
bool tied_loser_is_zero(ArmIndex j, ArmIndex w) { return j < w; }

}  // namespace

// --- known ordering --------------------------------------------------------

KnownOrderCucb::KnownOrderCucb(std::size_t n, std::size_t k, OracleKind oracle, std::vector<std::size_t> value_rank)
    : k_(k), oracle_(oracle), rank_(std::move(value_rank)) {
  if (rank_.size() != n) throw ConfigError("value order must rank all " + std::to_string(n) + " arms");
  std::vector<std::size_t> sorted = rank_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t r = 0; r < n; ++r)
    if (sorted[r] != r) throw ConfigError("value order is not a permutation");
  state_.trigger_count.assign(n, 0);
  state_.p_hat.assign(n, 1.0);
  state_.v_hat.assign(n, 1.0);
}

std::vector<BinaryArm> KnownOrderCucb::optimistic_arms(std::size_t t) const {
  const std::size_t n = state_.p_hat.size();
  std::vector<BinaryArm> arms(n);
  for (std::size_t i = 0; i < n; ++i)
    arms[i] = {upper_bound(state_.p_hat[i], t, state_.trigger_count[i]), state_.v_hat[i]};
  return arms;
}

Action KnownOrderCucb::select(std::size_t t) {
  state_.round = t;
  return solve(oracle_, as_discrete(optimistic_arms(t)), k_);
}

void KnownOrderCucb::update(const Action& action, const Feedback& fb) {
  auto& s = state_;
  if (!fb.winner) {
    for (ArmIndex i : action) zero_update(s.p_hat[i], s.trigger_count[i]);
    return;
  }
  const ArmIndex w = *fb.winner;
  s.v_hat[w] = fb.max_value;
  for (ArmIndex i : action) {
    if (rank_[i] < rank_[w]) zero_update(s.p_hat[i], s.trigger_count[i]);
  }
  one_update(s.p_hat[w], s.trigger_count[w]);
}

// --- unknown ordering ------------------------------------------------------

UnknownOrderCucb::UnknownOrderCucb(std::size_t n, std::size_t k, OracleKind oracle) : k_(k), oracle_(oracle) {
  state_.trigger_count.assign(n, 0);
  state_.value_seen.assign(n, false);
  state_.p_hat.assign(n, 1.0);
  state_.v_hat.assign(n, 1.0);
}

std::vector<BinaryArm> UnknownOrderCucb::optimistic_arms(std::size_t t) const {
  const std::size_t n = state_.p_hat.size();
  std::vector<BinaryArm> arms(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double value_bonus = state_.value_seen[i] ? 0.0 : 1.0;
    arms[i] = {upper_bound(state_.p_hat[i], t, state_.trigger_count[i]), std::min(state_.v_hat[i] + value_bonus, 1.0)};
  }
  return arms;
}

Action UnknownOrderCucb::select(std::size_t t) {
  state_.round = t;
  return solve(oracle_, as_discrete(optimistic_arms(t)), k_);
}

void UnknownOrderCucb::update(const Action& action, const Feedback& fb) {
  auto& s = state_;
  if (!fb.winner) {
    for (ArmIndex i : action) zero_update(s.p_hat[i], s.trigger_count[i]);
    return;
  }
  const ArmIndex w = *fb.winner;
  const double v = fb.max_value;
  if (!s.value_seen[w]) {
    s.trigger_count[w] = 0;
    s.value_seen[w] = true;
    s.v_hat[w] = v;
  }
  for (ArmIndex i : action) {
    if (i == w) {
      one_update(s.p_hat[i], s.trigger_count[i]);
    } else if (s.v_hat[i] > v || (s.v_hat[i] == v && tied_loser_is_zero(i, w))) {
      zero_update(s.p_hat[i], s.trigger_count[i]);
    }
  }
}

// --- finite supports -------------------------------------------------------

FiniteSupportCucb::FiniteSupportCucb(std::size_t n, std::size_t k, OracleKind oracle) : k_(k), oracle_(oracle) {
  state_.slots.assign(n, std::vector<ValueSlot>{ValueSlot{}});
}

std::vector<DiscreteArm> FiniteSupportCucb::optimistic_arms(std::size_t t) const {
  std::vector<DiscreteArm> arms;
  arms.reserve(state_.slots.size());
  std::vector<BinaryArm> binaries;
  for (const auto& slots : state_.slots) {
    binaries.clear();
    for (const ValueSlot& slot : slots) {
      const double value_bonus = slot.value_seen ? 0.0 : 1.0;
      binaries.push_back({upper_bound(slot.p_hat, t, slot.trigger_count), std::min(slot.v_hat + value_bonus, 1.0)});
    }
    arms.push_back(recompose(binaries));
  }
  return arms;
}

Action FiniteSupportCucb::select(std::size_t t) {
  state_.round = t;
  return solve(oracle_, optimistic_arms(t), k_);
}

void FiniteSupportCucb::update(const Action& action, const Feedback& fb) {
  auto& all = state_.slots;
  if (!fb.winner) {
    for (ArmIndex i : action)
      for (ValueSlot& slot : all[i]) zero_update(slot.p_hat, slot.trigger_count);
    return;
  }
  const ArmIndex w = *fb.winner;
  const double v = fb.max_value;

  auto& winner_slots = all[w];
  std::size_t winner_slot = 0;
  for (std::size_t j = 1; j < winner_slots.size(); ++j)
    if (winner_slots[j].v_hat == v) winner_slot = j;
  if (winner_slot == 0) {
    winner_slots.push_back(ValueSlot{0, true, 1.0, v});
    winner_slot = winner_slots.size() - 1;
  }

  for (ArmIndex i : action) {
    for (std::size_t j = 0; j < all[i].size(); ++j) {
      ValueSlot& slot = all[i][j];
      if (i == w && j == winner_slot) {
        one_update(slot.p_hat, slot.trigger_count);
      } else if (slot.v_hat > v || (slot.v_hat == v && (i == w || tied_loser_is_zero(i, w)))) {
        zero_update(slot.p_hat, slot.trigger_count);
      }
    }
  }
}

}  // namespace kmax
