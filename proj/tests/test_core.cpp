#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "powersim/core.hpp"
#include "test_helpers.hpp"

using namespace powersim;
using powersim::test::example_params;
using powersim::test::example_state;
using powersim::test::example_tactics;

TEST_CASE("validate_tactic_matrix accepts the example matrix and identities") {
  CHECK(validate_tactic_matrix(example_tactics()).valid);
  for (std::size_t n = 1; n <= 6; ++n) CHECK(validate_tactic_matrix(TacticMatrix::identity(n)).valid);
}

TEST_CASE("validate_tactic_matrix reports the offending column") {
  const auto r = validate_tactic_matrix(std::vector<TacticVector>{{0.5, 0.6}, {0.0, 1.0}});
  CHECK_FALSE(r.valid);
  REQUIRE(r.column.has_value());
  CHECK(*r.column == 0);
  CHECK(r.deviation == doctest::Approx(0.1).epsilon(1e-12));

  const auto second = validate_tactic_matrix(std::vector<TacticVector>{{1.0, 0.0}, {0.3, 0.3}});
  CHECK_FALSE(second.valid);
  CHECK(*second.column == 1);

  const auto range = validate_tactic_matrix(std::vector<TacticVector>{{1.5, -0.5}, {0.0, 1.0}});
  CHECK_FALSE(range.valid);
  CHECK(*range.column == 0);
}

TEST_CASE("validate_tactic_matrix tolerance and errors") {
  CHECK(validate_tactic_matrix(std::vector<TacticVector>{{0.5 + 1e-12, 0.5}, {0.0, 1.0}}).valid);
  CHECK_FALSE(validate_tactic_matrix(std::vector<TacticVector>{{0.5 + 1e-6, 0.5}, {0.0, 1.0}}).valid);
  CHECK_THROWS_AS(validate_tactic_matrix(std::vector<TacticVector>{{1.0, 0.0}, {1.0}}),
                  std::invalid_argument);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate_tactic_matrix(std::vector<TacticVector>{{nan, 1.0}, {0.0, 1.0}}),
                  std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate_tactic_matrix(std::vector<TacticVector>{{inf, 1.0}, {0.0, 1.0}}),
                  std::invalid_argument);
  // negative self-allocation is permitted by the entry range
  CHECK(validate_tactic_matrix(std::vector<TacticVector>{{-0.5, 0.5}, {0.0, 1.0}}).valid);
}

TEST_CASE("build_multiplier_matrix on the worked example") {
  const auto m = build_multiplier_matrix(example_tactics(), example_params());
  const double expected[3][3] = {{1, 1.2, 1.2}, {3, 1, 1.2}, {1.2, 1.2, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(m(i, j) == expected[i][j]);
}

TEST_CASE("build_multiplier_matrix sign patterns") {
  const auto params = example_params();
  const auto pos = build_multiplier_matrix(
      TacticMatrix::from_columns({{0.5, 0.25, 0.25}, {0.0, 1.0, 0.0}, {0.3, 0.3, 0.4}}), params);
  const auto neg = build_multiplier_matrix(
      TacticMatrix::from_columns({{0.5, -0.25, -0.25}, {-0.5, 0.0, -0.5}, {-0.3, -0.3, 0.4}}),
      params);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(pos(i, j) == (i == j ? 1.0 : params.beta));
      CHECK(neg(i, j) == (i == j ? 1.0 : params.mu));
    }
  }
}

TEST_CASE("step_update reproduces the worked example") {
  const auto s = step_update(example_state(), example_params());
  REQUIRE(s.size() == 3);
  CHECK(std::abs(s[0] - 0.33) < 1e-12);
  CHECK(std::abs(s[1] - 0.71) < 1e-12);
  CHECK(std::abs(s[2] - 0.792) < 1e-12);
}

TEST_CASE("step_update kills an agent whose size goes non-positive") {
  // agent 1 keeps everything, agent 2 throws everything at agent 1: 1 - 3 < 0
  const State st{TacticMatrix::from_columns({{1.0, 0.0}, {-1.0, 0.0}}), {1.0, 1.0}};
  const auto s = step_update(st, example_params());
  CHECK(s[0] == 0.0);
  CHECK(s[1] == 0.0);
  CHECK_FALSE(std::signbit(s[0]));
}

TEST_CASE("step_update dimension mismatch") {
  CHECK_THROWS_AS(step_update(State{TacticMatrix::identity(3), {1.0, 1.0}}, example_params()),
                  std::invalid_argument);
}

TEST_CASE("evolve") {
  const auto params = example_params();
  CHECK(evolve(example_state(), params, 0).empty());

  const auto one = evolve(example_state(), params, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == step_update(example_state(), params));

  // hand evaluation of the second step from (0.33, 0.71, 0.792):
  // 0.7*0.33 + 0.1*1.2*0.71, -0.1*3*0.33 + 0.8*0.71, 0.2*1.2*0.33 + 0.1*1.2*0.71 + 0.792
  const auto two = evolve(example_state(), params, 2);
  REQUIRE(two.size() == 2);
  CHECK(std::abs(two[1][0] - 0.3162) < 1e-12);
  CHECK(std::abs(two[1][1] - 0.469) < 1e-12);
  CHECK(std::abs(two[1][2] - 0.9564) < 1e-12);
}

TEST_CASE("evolve clamps at every step") {
  // agent 2 attacks agent 1 each step; a matrix power would let sizes go negative
  const State st{TacticMatrix::from_columns({{1.0, 0.0}, {-0.2, 0.8}}), {1.0, 1.0}};
  const auto params = example_params();
  const auto seq = evolve(st, params, 5);
  for (const auto& s : seq)
    for (double x : s) CHECK(x >= 0.0);
  CHECK(seq[0][0] == doctest::Approx(0.4));
  CHECK(seq[1][0] == 0.0);
  CHECK(seq[4][0] == 0.0);
}

TEST_CASE("normalize_sizes") {
  CHECK(normalize_sizes({0.3, 1.0, 0.6}) == SizeVector{0.3, 1.0, 0.6});
  CHECK(normalize_sizes({2.0, 4.0, 1.0}) == SizeVector{0.5, 1.0, 0.25});
  CHECK_THROWS_AS(normalize_sizes({0.0, 0.0}), std::domain_error);
  const auto r = normalize_sizes({3.3, 7.7, 0.1});
  CHECK(*std::max_element(r.begin(), r.end()) == 1.0);
}

TEST_CASE("property: step_update invariants over random states") {
  Rng rng(2024);
  const auto params = example_params();
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.below(5);
    const State st{test::random_tactics(n, rng), test::random_sizes(n, rng)};
    REQUIRE(validate_tactic_matrix(st.tactics).valid);

    const auto next = step_update(st, params);
    for (double x : next) CHECK(x >= 0.0);

    CHECK(step_update(State{TacticMatrix::identity(n), st.sizes}, params) == st.sizes);

    // signs preserved, magnitudes rescaled: same multipliers
    TacticMatrix rescaled = st.tactics;
    for (std::size_t j = 0; j < n; ++j) {
      auto col = rescaled.column(j);
      for (double& v : col) v *= 0.5;
      col[j] += 0.5 * (col[j] >= 0 ? 1 : -1);
    }
    CHECK(build_multiplier_matrix(rescaled, params) == build_multiplier_matrix(st.tactics, params));
  }
}

TEST_CASE("property: linear in sizes when nothing is clamped") {
  Rng rng(77);
  const auto params = example_params();
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(4);
    TacticMatrix t(n);
    for (std::size_t j = 0; j < n; ++j) {
      auto col = test::random_column(n, j, rng);
      for (double& v : col) v = std::abs(v);
      t.set_column(j, col);
    }
    const SizeVector s = test::random_sizes(n, rng);
    const double lambda = 0.1 + 5.0 * rng.uniform();
    SizeVector scaled = s;
    for (double& x : scaled) x *= lambda;
    const auto a = step_update(State{t, s}, params);
    const auto b = step_update(State{t, scaled}, params);
    for (std::size_t i = 0; i < n; ++i) CHECK(b[i] == doctest::Approx(lambda * a[i]).epsilon(1e-12));
  }
}

TEST_CASE("property: a dead agent without positive inflow stays dead") {
  Rng rng(5);
  const auto params = example_params();
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(4);
    TacticMatrix t = test::random_tactics(n, rng);
    for (std::size_t j = 1; j < n; ++j) {
      if (t(0, j) > 0.0) t(0, j) = -t(0, j);
    }
    SizeVector s = test::random_sizes(n, rng);
    s[0] = 0.0;
    for (const auto& step : evolve(State{t, s}, params, 6)) CHECK(step[0] == 0.0);
  }
}

TEST_CASE("a dead agent is revived by benevolent inflow") {
  // agent 1 gives 0.4 of size 1 to dead agent 0: 1.2 * 0.4 = 0.48
  const TacticMatrix t = TacticMatrix::from_columns({{1.0, 0.0}, {0.4, 0.6}});
  const auto next = step_update(State{t, {0.0, 1.0}}, example_params());
  CHECK(next[0] == doctest::Approx(0.48).epsilon(1e-15));
  CHECK(next[1] == doctest::Approx(0.6).epsilon(1e-15));
}
