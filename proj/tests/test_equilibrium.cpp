#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle_two_agent.hpp"
#include "powersim/equilibrium.hpp"
#include "test_helpers.hpp"

using namespace powersim;

namespace {

CandidateSet to_candidates(const std::vector<oracle::Col>& a0, const std::vector<oracle::Col>& a1) {
  CandidateSet c;
  c.per_agent.resize(2);
  for (const auto& v : a0) c.per_agent[0].push_back({v[0], v[1]});
  for (const auto& v : a1) c.per_agent[1].push_back({v[0], v[1]});
  return c;
}

ModelParams loose_inertia() {
  ModelParams p = test::example_params();
  p.sigma = 1e6;
  return p;
}

}  // namespace

TEST_CASE("best_response with a single candidate") {
  const State st = test::example_state();
  const std::vector<TacticVector> only{{0.0, 0.0, 1.0}};
  const auto br = best_response(2, st.tactics, only, st.tactics, st.sizes, test::example_params());
  CHECK(br.index == 0);
}

TEST_CASE("best_response ties go to the lower index") {
  const State st = test::example_state();
  const std::vector<TacticVector> dup{{0.1, 0.8, 0.1}, {0.1, 0.8, 0.1}, {0.1, 0.8, 0.1}};
  CHECK(best_response(1, st.tactics, dup, st.tactics, st.sizes, test::example_params()).index == 0);
}

TEST_CASE("best_response ties go to the nearest column before the index") {
  // a dead agent scores 0 with every candidate; the one closest to its old column wins
  const TacticMatrix prev = TacticMatrix::from_columns({{0.6, 0.4}, {0.0, 1.0}});
  const std::vector<TacticVector> cands{{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}};
  const auto br = best_response(0, prev, cands, prev, {0.0, 1.0}, test::example_params());
  CHECK(br.index == 2);
  CHECK(br.utility == 0.0);
}

TEST_CASE("best_response matches exhaustive evaluation") {
  const ModelParams p = loose_inertia();
  const std::vector<oracle::Col> cands{{1.0, 0.0}, {0.5, 0.5}, {0.5, -0.5}};
  const oracle::Prev prev{{1.0, 0.0}, {0.0, 1.0}};
  std::size_t best = 0;
  double best_u = -1;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const double u = oracle::payoff(cands[i], {0.0, 1.0}, prev, {1.0, 1.0}, p)[0];
    if (u > best_u) {
      best_u = u;
      best = i;
    }
  }
  std::vector<TacticVector> lib;
  for (const auto& c : cands) lib.push_back({c[0], c[1]});
  const TacticMatrix others = TacticMatrix::identity(2);
  const auto br = best_response(0, others, lib, TacticMatrix::identity(2), {1.0, 1.0}, p);
  CHECK(br.index == best);
  CHECK(br.index == 2);  // cutting the rival to zero beats keeping or giving
  CHECK(br.utility == doctest::Approx(best_u).epsilon(1e-12));
}

TEST_CASE("stage_nash_equilibria trivial cases") {
  const auto params = test::example_params();
  CandidateSet one;
  one.per_agent = {{{1.0}}};
  const auto eq1 = stage_nash_equilibria(one, TacticMatrix::identity(1), {1.0}, params);
  REQUIRE(eq1.size() == 1);
  CHECK(eq1[0] == TacticMatrix::identity(1));

  const State st = test::example_state();
  CandidateSet single;
  single.per_agent = {{{0.7, -0.1, 0.2}}, {{0.1, 0.8, 0.1}}, {{0.0, 0.0, 1.0}}};
  const auto eq = stage_nash_equilibria(single, st.tactics, st.sizes, params);
  REQUIRE(eq.size() == 1);
  CHECK(eq[0] == st.tactics);
}

TEST_CASE("stage analysis matches the brute-force two-agent oracle") {
  Rng rng(123);
  int with_equilibria = 0, without = 0;
  for (int trial = 0; trial < 400; ++trial) {
    ModelParams p = test::example_params();
    p.alpha = 2.0 + rng.uniform();
    p.sigma = 0.05 + 2.0 * rng.uniform();
    const std::size_t k0 = 1 + rng.below(4), k1 = 1 + rng.below(4);
    std::vector<oracle::Col> a0, a1;
    for (std::size_t i = 0; i < k0; ++i) {
      auto c = test::random_column(2, 0, rng);
      a0.push_back({c[0], c[1]});
    }
    for (std::size_t i = 0; i < k1; ++i) {
      auto c = test::random_column(2, 1, rng);
      a1.push_back({c[0], c[1]});
    }
    const auto pc0 = test::random_column(2, 0, rng), pc1 = test::random_column(2, 1, rng);
    const oracle::Prev prev{{pc0[0], pc0[1]}, {pc1[0], pc1[1]}};
    const std::array<double, 2> s{0.1 + rng.uniform(), 0.1 + rng.uniform()};

    const auto expected = oracle::solve(a0, a1, prev, s, p);
    const auto cands = to_candidates(a0, a1);
    const TacticMatrix prev_m = TacticMatrix::from_columns({pc0, pc1});
    const auto got = analyze_stage(cands, prev_m, {s[0], s[1]}, p, 1 + trial % 3);

    REQUIRE(got.equilibrium_profiles.size() == expected.equilibria.size());
    for (std::size_t e = 0; e < expected.equilibria.size(); ++e) {
      CHECK(got.equilibrium_profiles[e][0] == expected.equilibria[e][0]);
      CHECK(got.equilibrium_profiles[e][1] == expected.equilibria[e][1]);
      CHECK(validate_tactic_matrix(got.equilibria[e]).valid);
    }
    CHECK(got.security_fallback == expected.fallback);
    CHECK(got.minimax[0] == doctest::Approx(expected.minimax[0]).epsilon(1e-12));
    CHECK(got.minimax[1] == doctest::Approx(expected.minimax[1]).epsilon(1e-12));
    (expected.fallback ? without : with_equilibria)++;

    // the standalone entry points agree with the combined analysis
    const auto eqs = stage_nash_equilibria(cands, prev_m, {s[0], s[1]}, p);
    CHECK(eqs == got.equilibria);
    const auto mm = minimax_vector(eqs, cands, prev_m, {s[0], s[1]}, p);
    CHECK(mm[0] == doctest::Approx(got.minimax[0]).epsilon(1e-12));
    CHECK(mm[1] == doctest::Approx(got.minimax[1]).epsilon(1e-12));
  }
  CHECK(with_equilibria > 0);
  CHECK(without > 0);
}

TEST_CASE("minimax_vector takes the per-agent minimum over equilibria") {
  const auto params = test::example_params();
  const State st = test::example_state();
  CandidateSet cands;
  cands.per_agent = {{{0.7, -0.1, 0.2}}, {{0.1, 0.8, 0.1}}, {{0.0, 0.0, 1.0}}};
  const auto eq = stage_nash_equilibria(cands, st.tactics, st.sizes, params);
  const auto mm = minimax_vector(eq, cands, st.tactics, st.sizes, params);
  CHECK(mm == profile_utility(st.tactics, st.tactics, st.sizes, params));

  const TacticMatrix other = TacticMatrix::identity(3);
  const auto u1 = profile_utility(st.tactics, st.tactics, st.sizes, params);
  const auto u2 = profile_utility(other, st.tactics, st.sizes, params);
  const auto both = minimax_vector({st.tactics, other}, cands, st.tactics, st.sizes, params);
  for (std::size_t i = 0; i < 3; ++i) CHECK(both[i] == std::min(u1[i], u2[i]));
}

TEST_CASE("every profile flagged as equilibrium is a best response for every agent") {
  Rng rng(55);
  SamplerConfig cfg;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.below(2);
    const State st{test::random_tactics(n, rng), test::random_sizes(n, rng)};
    ModelParams p = test::example_params();
    p.sigma = 0.3 + rng.uniform();
    const CandidateSet cands = sample_candidates(n, 4, cfg, rng);
    const auto stage = analyze_stage(cands, st.tactics, st.sizes, p, 2);
    for (std::size_t e = 0; e < stage.equilibria.size(); ++e) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto br = best_response(i, stage.equilibria[e], cands.per_agent[i], st.tactics, st.sizes, p);
        CHECK(br.index == stage.equilibrium_profiles[e][i]);
        CHECK(br.utility == stage.equilibrium_utilities[e][i]);
      }
    }
    // minimax is bounded by the best positional utility over the product
    double max_u = 0.0;
    std::vector<std::size_t> digits(n, 0);
    for (std::size_t idx = 0; idx < cands.profile_count(); ++idx) {
      std::size_t rest = idx;
      for (std::size_t j = 0; j < n; ++j) {
        digits[j] = rest % 4;
        rest /= 4;
      }
      const auto u = positional_utility(step_update(State{cands.assemble(digits), st.sizes}, p), p.alpha);
      for (double x : u) max_u = std::max(max_u, x);
    }
    for (double m : stage.minimax) {
      CHECK(m >= 0.0);
      CHECK(m <= max_u);
    }
  }
}

TEST_CASE("limit_candidates enforces the profile budget") {
  SamplerConfig cfg;
  Rng rng(4);
  CandidateSet cands = sample_candidates(4, 30, cfg, rng);
  CHECK(cands.profile_count() == 810000);
  const CandidateSet before = cands;
  CHECK(limit_candidates(cands, 20000));
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(cands.per_agent[j].size() == 11);
    for (std::size_t k = 0; k < 11; ++k) CHECK(cands.per_agent[j][k] == before.per_agent[j][k]);
  }
  CHECK(cands.profile_count() <= 20000);
  CHECK_FALSE(limit_candidates(cands, 20000));

  CandidateSet exact = sample_candidates(2, 10, cfg, rng);
  CHECK_FALSE(limit_candidates(exact, 100));
  CHECK(limit_candidates(exact, 99));
  CHECK(exact.per_agent[0].size() == 9);
}

TEST_CASE("check_candidates rejects malformed sets") {
  CandidateSet empty;
  empty.per_agent = {{}, {{0.0, 1.0}}};
  CHECK_THROWS_AS(check_candidates(empty), std::invalid_argument);
  CandidateSet bad;
  bad.per_agent = {{{0.5, 0.6}}, {{0.0, 1.0}}};
  CHECK_THROWS_AS(check_candidates(bad), std::invalid_argument);
}
