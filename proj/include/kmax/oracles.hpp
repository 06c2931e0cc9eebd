#pragma once

#include <span>
#include <string>
#include <string_view>

#include "kmax/arm_model.hpp"

namespace kmax {

enum class OracleKind { kGreedy, kExhaustive };

/// Kind plus its (alpha, beta) approximation guarantee.
struct OracleSpec {
  OracleKind kind = OracleKind::kGreedy;
  double alpha = 1.0;
  double beta = 1.0;

  static OracleSpec of(OracleKind kind);
};

OracleKind parse_oracle_kind(std::string_view name);
std::string to_string(OracleKind kind);

/// k passes, each adding the arm with the largest marginal gain in expected
/// max; smallest index wins ties. Achieves at least (1 - 1/e) OPT.
Action greedy_oracle(std::span<const DiscreteArm> arms, std::size_t k);

/// Exact argmax over all k-subsets; lexicographically smallest on ties.
/// Throws TooLarge above 1e6 subsets.
Action exhaustive_oracle(std::span<const DiscreteArm> arms, std::size_t k);

Action solve(OracleKind kind, std::span<const DiscreteArm> arms, std::size_t k);

}  // namespace kmax
