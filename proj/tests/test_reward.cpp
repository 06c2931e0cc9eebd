#include <cmath>
#include <random>

#include "brute_force.hpp"
#include "doctest.h"
#include "kmax/errors.hpp"
#include "kmax/reward.hpp"

using namespace kmax;
using kmax::testing::enumerate;

namespace {

std::vector<BinaryArm> d1_binary() { return builtin_instance("D1").binary_arms(); }

const Action kTop3({6, 7, 8});  // labels {7, 8, 9}

}  // namespace

TEST_CASE("expected_reward_binary") {
  SUBCASE("singleton is p v") {
    const std::vector<BinaryArm> arms{{0.35, 0.6}};
    CHECK(expected_reward_binary(Action({0}), arms) == doctest::Approx(0.21).epsilon(1e-15));
  }
  SUBCASE("D1 top three, checked against enumeration") {
    CHECK(expected_reward_binary(kTop3, d1_binary()) == doctest::Approx(0.7375).epsilon(1e-14));
  }
  SUBCASE("all p = 1 gives the max value") {
    const std::vector<BinaryArm> arms{{1, 0.2}, {1, 0.9}, {1, 0.4}};
    CHECK(expected_reward_binary(Action({0, 1, 2}), arms) == 0.9);
    CHECK(expected_reward_binary(Action({0, 2}), arms) == 0.4);
  }
  SUBCASE("brute-force equivalence, k <= 4") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 2000; ++trial) {
      const std::size_t n = 6;
      const std::size_t k = 1 + trial % 4;
      std::vector<BinaryArm> arms;
      std::vector<DiscreteArm> as_discrete;
      for (std::size_t i = 0; i < n; ++i) {
        arms.push_back(testing::random_binary(rng));
        as_discrete.push_back(DiscreteArm::binary(arms.back().prob, arms.back().value));
      }
      const auto s = testing::random_action(rng, n, k);
      const double truth = enumerate(as_discrete, testing::as_indices(s)).expected_max;
      REQUIRE(std::abs(expected_reward_binary(s, arms) - truth) <= 1e-12);
    }
  }
}

TEST_CASE("expected_reward_discrete") {
  SUBCASE("singleton expectation") {
    const std::vector<DiscreteArm> arms{{{0.5, 1.0}, {0.3, 0.2}}};
    CHECK(expected_reward_discrete(Action({0}), arms) == doctest::Approx(0.35).epsilon(1e-15));
  }
  SUBCASE("two identical coins") {
    const std::vector<DiscreteArm> arms{DiscreteArm::binary(0.5, 1.0), DiscreteArm::binary(0.5, 1.0)};
    CHECK(expected_reward_discrete(Action({0, 1}), arms) == doctest::Approx(0.75).epsilon(1e-15));
  }
  SUBCASE("agrees with the binary formula") {
    const auto inst = builtin_instance("D3");
    for_each_subset(9, 3, [&](const Action& s) {
      CHECK(std::abs(expected_reward_discrete(s, inst.arms) - expected_reward_binary(s, inst.binary_arms())) <= 1e-12);
    });
  }
  SUBCASE("three two-point arms vs Monte Carlo") {
    const std::vector<DiscreteArm> arms{{{0.3, 0.7}, {0.2, 0.3}}, {{0.4, 0.8}, {0.25, 0.25}}, {{0.5, 0.9}, {0.3, 0.2}}};
    const Action s({0, 1, 2});
    const double exact = expected_reward_discrete(s, arms);
    Instance inst{arms, 3};
    Rng rng(2024);
    const int draws = 1'000'000;
    double sum = 0.0, sum_sq = 0.0;
    for (int r = 0; r < draws; ++r) {
      const double m = observe(sample_outcomes(inst, rng), s).max_value;
      sum += m;
      sum_sq += m * m;
    }
    const double mean = sum / draws;
    const double sigma = std::sqrt((sum_sq / draws - mean * mean) / draws);
    CHECK(std::abs(mean - exact) <= 3 * sigma);
  }
  SUBCASE("empty support contributes nothing") {
    const std::vector<DiscreteArm> arms{DiscreteArm{}, DiscreteArm::binary(0.5, 0.4)};
    CHECK(expected_reward_discrete(Action({0, 1}), arms) == doctest::Approx(0.2));
  }
}

TEST_CASE("triggering_probs") {
  const auto arms = d1_binary();
  const auto tp = triggering_probs(kTop3, arms);
  CHECK(tp.q[8] == 1.0);
  CHECK(tp.q[6] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(tp.q_tilde[6] == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(tp.q[0] == 0.0);

  SUBCASE("winner events partition, and match enumeration") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<BinaryArm> a;
      std::vector<DiscreteArm> d;
      for (int i = 0; i < 7; ++i) {
        a.push_back(testing::random_binary(rng));
        d.push_back(DiscreteArm::binary(a.back().prob, a.back().value));
      }
      const auto s = testing::random_action(rng, 7, 1 + trial % 5);
      const auto t = triggering_probs(s, a);
      const auto e = enumerate(d, testing::as_indices(s));
      double total = 0.0, none = 1.0;
      for (ArmIndex i : s) {
        total += t.q_tilde[i];
        none *= 1.0 - a[i].prob;
        REQUIRE(t.q_tilde[i] <= t.q[i]);
        REQUIRE(t.q[i] <= 1.0);
        const double w = e.winner.count(i) ? e.winner.at(i) : 0.0;
        REQUIRE(std::abs(t.q_tilde[i] - w) <= 1e-12);
      }
      REQUIRE(std::abs(total + none - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("winner_probs on discrete arms matches enumeration") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<DiscreteArm> arms;
    for (int i = 0; i < 5; ++i) arms.push_back(testing::random_arm(rng, 3));
    // Force some shared support points so ties occur.
    arms[1].values[0] = arms[0].values[0] = std::min(arms[0].values[0], arms[1].values[0]);
    for (auto& a : arms) validate_arm(a);
    const auto s = testing::random_action(rng, 5, 1 + trial % 4);
    const auto w = winner_probs(s, arms);
    const auto e = enumerate(arms, testing::as_indices(s));
    for (ArmIndex i : s) REQUIRE(std::abs(w[i] - (e.winner.count(i) ? e.winner.at(i) : 0.0)) <= 1e-12);
  }
}

TEST_CASE("equivalent_arm") {
  CHECK(equivalent_arm({0.5, 0.9}).prob == doctest::Approx(0.45));
  CHECK(equivalent_arm({0.5, 0.9}).value == 1.0);
  CHECK(equivalent_arm({0.3, 1.0}) == BinaryArm{0.3, 1.0});

  SUBCASE("replacing arms never lowers a set's reward") {
    std::mt19937_64 rng(21);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 5000; ++trial) {
      std::vector<BinaryArm> orig, mixed;
      for (int i = 0; i < 3; ++i) {
        orig.push_back(testing::random_binary(rng));
        mixed.push_back(coin(rng) ? equivalent_arm(orig.back()) : orig.back());
      }
      const Action s({0, 1, 2});
      REQUIRE(expected_reward_binary(s, mixed) >= expected_reward_binary(s, orig) - 1e-12);
    }
  }
}

TEST_CASE("binary_decomposition") {
  SUBCASE("two-point arm") {
    const auto b = binary_decomposition({{0.5, 1.0}, {0.3, 0.2}});
    REQUIRE(b.size() == 2);
    CHECK(b[0].value == 0.5);
    CHECK(b[0].prob == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(b[1] == BinaryArm{0.2, 1.0});
  }
  SUBCASE("single value is itself") {
    const auto b = binary_decomposition(DiscreteArm::binary(0.4, 0.7));
    REQUIRE(b.size() == 1);
    CHECK(b[0] == BinaryArm{0.4, 0.7});
  }
  SUBCASE("round trip by exhaustive enumeration, s <= 10") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
      const auto arm = testing::random_arm(rng, 10);
      const auto dist = testing::enumerate_binaries(binary_decomposition(arm));
      double zero = 1.0 - arm.total_mass();
      CHECK(std::abs(dist.at(0.0) - zero) <= 1e-12);
      for (std::size_t j = 0; j < arm.values.size(); ++j)
        REQUIRE(std::abs(dist.at(arm.values[j]) - arm.probs[j]) <= 1e-12);
    }
  }
  SUBCASE("unreachable point with positive mass") {
    CHECK_THROWS_AS(binary_decomposition({{0.5, 1.0}, {0.3, 1.0}}), DegenerateMass);
  }
  SUBCASE("unreachable point with zero mass is dropped") {
    const auto b = binary_decomposition({{0.5, 1.0}, {0.0, 1.0}});
    REQUIRE(b.size() == 1);
    CHECK(b[0] == BinaryArm{1.0, 1.0});
  }
}

TEST_CASE("recompose") {
  SUBCASE("singleton") {
    const std::vector<BinaryArm> one{{0.3, 0.6}};
    CHECK(recompose(one) == DiscreteArm::binary(0.3, 0.6));
  }
  SUBCASE("inverse of decomposition") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 500; ++trial) {
      const auto arm = testing::random_arm(rng, 8);
      const auto back = recompose(binary_decomposition(arm));
      REQUIRE(back.values == arm.values);
      for (std::size_t j = 0; j < arm.probs.size(); ++j) REQUIRE(std::abs(back.probs[j] - arm.probs[j]) <= 1e-12);
    }
  }
  SUBCASE("three random binaries vs 2^3 enumeration") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<BinaryArm> b{testing::random_binary(rng), testing::random_binary(rng), testing::random_binary(rng)};
      const auto arm = recompose(b);
      const auto dist = testing::enumerate_binaries(b);
      for (std::size_t j = 0; j < arm.values.size(); ++j)
        REQUIRE(std::abs(dist.at(arm.values[j]) - arm.probs[j]) <= 1e-12);
      REQUIRE(arm.values.size() == 3);
    }
  }
  SUBCASE("equal values merge as independent coins") {
    const std::vector<BinaryArm> b{{0.5, 1.0}, {0.5, 1.0}, {0.4, 0.3}};
    const auto arm = recompose(b);
    REQUIRE(arm.values == std::vector<double>{0.3, 1.0});
    CHECK(arm.probs[1] == doctest::Approx(0.75));
    CHECK(arm.probs[0] == doctest::Approx(0.25 * 0.4));
  }
  SUBCASE("a sure top value hides everything below") {
    const std::vector<BinaryArm> b{{1.0, 1.0}, {0.5, 0.4}};
    CHECK(recompose(b) == DiscreteArm::binary(1.0, 1.0));
  }
}

TEST_CASE("decomposed arm sets keep their expected max") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<DiscreteArm> arms, pieces;
    for (int i = 0; i < 3; ++i) {
      arms.push_back(testing::random_arm(rng, 4));
      for (const auto& b : binary_decomposition(arms.back())) pieces.push_back(DiscreteArm::binary(b.prob, b.value));
    }
    std::vector<ArmIndex> all(pieces.size());
    for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
    REQUIRE(std::abs(expected_reward_discrete(Action({0, 1, 2}), arms) - expected_reward_discrete(Action(all), pieces)) <=
            1e-12);
  }
}

TEST_CASE("opt_and_gaps") {
  SUBCASE("D1") {
    const auto rep = opt_and_gaps(builtin_instance("D1"));
    CHECK(rep.opt_action == kTop3);
    CHECK(rep.opt == doctest::Approx(0.7375));
    CHECK(rep.num_actions == 84);
    CHECK(rep.num_bad_actions == 83);
    // Runner-up is {6, 8, 9} with reward 0.695.
    CHECK(rep.delta_min == doctest::Approx(0.7375 - 0.695));
    CHECK(rep.delta_min <= rep.delta_max);
    CHECK(rep.delta_max <= rep.opt);
  }
  SUBCASE("D3 keeps the risky arm") {
    const auto rep = opt_and_gaps(builtin_instance("D3"));
    CHECK(rep.opt_action == kTop3);
    CHECK(rep.opt == doctest::Approx(0.64));
  }
  SUBCASE("n = k has no bad action") {
    Instance inst{{DiscreteArm::binary(0.5, 0.5), DiscreteArm::binary(0.2, 0.9)}, 2};
    const auto rep = opt_and_gaps(inst);
    CHECK(rep.num_actions == 1);
    CHECK(std::isinf(rep.delta_min));
    CHECK(rep.delta_max == 0.0);
  }
  SUBCASE("guard") {
    Instance inst;
    inst.k = 15;
    for (int i = 0; i < 40; ++i) inst.arms.push_back(DiscreteArm::binary(0.5, 0.5));
    CHECK_THROWS_AS(opt_and_gaps(inst), TooLarge);
  }
  SUBCASE("bad actions where an arm cannot win do not count for it") {
    // {1,2}: reward 0.6, arm 2 can never beat the sure arm 1.
    // {1,3}: 0.96 (optimal). {2,3}: 0.925.
    Instance inst{{DiscreteArm::binary(1.0, 0.6), DiscreteArm::binary(0.5, 0.5), DiscreteArm::binary(0.9, 1.0)}, 2};
    const auto rep = opt_and_gaps(inst);
    CHECK(rep.opt_action == Action({0, 2}));
    CHECK(rep.opt == doctest::Approx(0.96));
    CHECK(rep.delta_min_per_arm[0] == doctest::Approx(0.36));
    CHECK(rep.delta_min_per_arm[1] == doctest::Approx(0.035));
    CHECK(rep.delta_max_per_arm[1] == doctest::Approx(0.035));
    CHECK(rep.delta_min_per_arm[2] == doctest::Approx(0.035));
    CHECK(rep.delta_max == doctest::Approx(0.36));
  }
}

TEST_CASE("rtpm_bound") {
  SUBCASE("identical parameters") {
    const auto arms = d1_binary();
    const auto t = rtpm_bound(kTop3, arms, arms);
    CHECK(t.lhs == 0.0);
    CHECK(t.rhs == 0.0);
  }
  SUBCASE("single coordinate of the lowest arm") {
    const auto arms = d1_binary();
    auto moved = arms;
    const double delta = 0.1;
    moved[6].prob += delta;
    const auto t = rtpm_bound(kTop3, arms, moved);
    const double q = triggering_probs(kTop3, arms).q[6];
    CHECK(t.lhs <= 2 * q * arms[6].value * delta + 1e-12);
    // The lowest arm's reward contribution is linear in its own p.
    CHECK(t.lhs == doctest::Approx(q * arms[6].value * delta));
  }
  SUBCASE("randomised: lhs <= rhs") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 10000; ++trial) {
      const std::size_t n = 6;
      std::vector<BinaryArm> from;
      for (std::size_t i = 0; i < n; ++i) from.push_back(testing::random_binary(rng));
      const auto s = testing::random_action(rng, n, 1 + trial % 4);
      const auto to = testing::random_same_order(rng, from, s);
      const auto t = rtpm_bound(s, from, to);
      REQUIRE(t.lhs <= t.rhs + 1e-12);
    }
  }
  SUBCASE("the bound needs both value vectors in the same order") {
    // Raising arm 1's value above arm 0's reorders the action; the change is
    // then weighted by arm 1's small triggering probability under (p, v).
    const std::vector<BinaryArm> from{{0.9, 0.5}, {0.9, 0.1}};
    const std::vector<BinaryArm> to{{0.9, 0.5}, {0.9, 0.9}};
    const auto t = rtpm_bound(Action({0, 1}), from, to);
    CHECK(t.lhs == doctest::Approx(0.396));
    CHECK(t.rhs == doctest::Approx(0.072));
  }
}

TEST_CASE("monotonicity in every p and v") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<BinaryArm> arms;
    for (int i = 0; i < 5; ++i) arms.push_back(testing::random_binary(rng));
    const auto s = testing::random_action(rng, 5, 1 + trial % 4);
    const ArmIndex i = s.indices()[trial % s.size()];
    auto raised = arms;
    if (trial % 2 == 0)
      raised[i].prob += (1.0 - raised[i].prob) * unit(rng);
    else
      raised[i].value += (1.0 - raised[i].value) * unit(rng);
    REQUIRE(expected_reward_binary(s, raised) >= expected_reward_binary(s, arms) - 1e-12);
  }
}

TEST_CASE("binomial and subset enumeration") {
  CHECK(binomial(9, 3) == 84);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 4) == 0);
  std::size_t count = 0;
  Action prev;
  for_each_subset(7, 3, [&](const Action& a) {
    if (count > 0) CHECK(prev < a);
    prev = a;
    ++count;
  });
  CHECK(count == 35);
}
