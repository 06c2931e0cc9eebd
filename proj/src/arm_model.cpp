#include "kmax/arm_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kmax/errors.hpp"

namespace kmax {

namespace {

std::string arm_label(std::size_t index) { return "arm " + std::to_string(index + 1); }

}  // namespace

double DiscreteArm::total_mass() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

double DiscreteArm::mean() const {
  double m = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) m += values[j] * probs[j];
  return m;
}

double DiscreteArm::cdf(double u) const {
  if (u < 0.0) return 0.0;
  double above = 0.0;
  for (std::size_t j = values.size(); j-- > 0;) {
    if (values[j] <= u) break;
    above += probs[j];
  }
  return 1.0 - above;
}

bool Instance::is_binary() const {
  return std::all_of(arms.begin(), arms.end(), [](const DiscreteArm& a) { return a.support_size() == 1; });
}

std::vector<BinaryArm> Instance::binary_arms() const {
  std::vector<BinaryArm> out;
  out.reserve(arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (arms[i].support_size() != 1)
      throw InvalidInstance(arm_label(i) + " is not binary (support size " +
                            std::to_string(arms[i].support_size()) + ")");
    out.push_back({arms[i].probs[0], arms[i].values[0]});
  }
  return out;
}

Action::Action(std::vector<ArmIndex> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
}

bool Action::contains(ArmIndex i) const { return std::binary_search(indices_.begin(), indices_.end(), i); }

Action Action::with(ArmIndex i) const {
  std::vector<ArmIndex> idx = indices_;
  idx.insert(std::upper_bound(idx.begin(), idx.end(), i), i);
  Action a;
  a.indices_ = std::move(idx);
  return a;
}

void validate_arm(const DiscreteArm& arm, std::size_t index) {
  const auto label = arm_label(index);
  if (arm.values.empty()) throw InvalidInstance(label + ": empty support");
  if (arm.values.size() != arm.probs.size())
    throw InvalidInstance(label + ": values and probs differ in length");
  for (std::size_t j = 0; j < arm.values.size(); ++j) {
    const double v = arm.values[j];
    if (!(v > 0.0 && v <= 1.0)) throw InvalidInstance(label + ": value " + std::to_string(v) + " outside (0,1]");
    if (j > 0 && !(arm.values[j - 1] < v)) throw InvalidInstance(label + ": values not strictly increasing");
    if (!(arm.probs[j] > 0.0)) throw InvalidInstance(label + ": probability must be > 0");
  }
  const double mass = arm.total_mass();
  if (!(mass > 0.0 && mass <= 1.0 + 1e-12))
    throw InvalidInstance(label + ": probability mass " + std::to_string(mass) + " outside (0,1]");
}

void validate_instance(const Instance& inst) {
  if (inst.arms.empty()) throw InvalidInstance("instance has no arms");
  if (inst.k < 1 || inst.k > inst.n())
    throw InvalidInstance("k = " + std::to_string(inst.k) + " must satisfy 1 <= k <= n = " + std::to_string(inst.n()));
  for (std::size_t i = 0; i < inst.arms.size(); ++i) validate_arm(inst.arms[i], i);
}

void validate_action(const Action& action, const Instance& inst) {
  if (action.size() != inst.k)
    throw InvalidInstance("action has " + std::to_string(action.size()) + " arms, expected k = " + std::to_string(inst.k));
  const auto idx = action.indices();
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (idx[j] >= inst.n()) throw InvalidInstance("action index out of range");
    if (j > 0 && idx[j] == idx[j - 1]) throw InvalidInstance("action has duplicate arms");
  }
}

OutcomeVector sample_outcomes(const Instance& inst, Rng& rng) {
  OutcomeVector out;
  out.x.resize(inst.n(), 0.0);
  for (std::size_t i = 0; i < inst.n(); ++i) {
    const auto& arm = inst.arms[i];
    const double u = rng.uniform();
    double cum = 0.0;
    for (std::size_t j = 0; j < arm.values.size(); ++j) {
      cum += arm.probs[j];
      if (u < cum) {
        out.x[i] = arm.values[j];
        break;
      }
    }
  }
  return out;
}

Feedback observe(const OutcomeVector& out, const Action& action) {
  Feedback fb;
  // Indices are ascending, so a strict comparison keeps the smallest index on ties.
  for (ArmIndex i : action) {
    if (out.x[i] > fb.max_value) {
      fb.max_value = out.x[i];
      fb.winner = i;
    }
  }
  return fb;
}

RestrictedOutcomes restrict_outcomes(const OutcomeVector& out, const Action& action) {
  RestrictedOutcomes r;
  r.observed.reserve(action.size());
  for (ArmIndex i : action) r.observed.emplace_back(i, out.x[i]);
  return r;
}

Instance builtin_instance(std::string_view name) {
  Instance inst;
  inst.k = 3;
  for (int i = 1; i <= 9; ++i) {
    const double p = i <= 6 ? 0.3 : 0.5;
    inst.arms.push_back(DiscreteArm::binary(p, i / 10.0));
  }
  if (name == "D1") return inst;
  if (name == "D2") {
    inst.arms[0].probs[0] = 0.9;
    return inst;
  }
  if (name == "D3") {
    inst.arms[8].probs[0] = 0.2;
    return inst;
  }
  throw UnknownInstance(std::string(name));
}

std::vector<BinaryArm> perturb_ties(std::span<const BinaryArm> arms, double eps0) {
  const std::size_t n = arms.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return arms[a].value > arms[b].value; });
  const double eps = eps0 / static_cast<double>(n);
  std::vector<BinaryArm> out(arms.begin(), arms.end());
  for (std::size_t rank = 0; rank < n; ++rank)
    out[order[rank]].value += static_cast<double>(n - 1 - rank) * eps;
  return out;
}

}  // namespace kmax
