#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "mdep/echf.hpp"
#include "mdep/measures.hpp"

using namespace mdep;
using testing::close;

TEST_CASE("empirical characteristic functions") {
  const Sample s = testing::from_rows({{0, 0}, {1, 1}}, {1, 1});
  Vector t(2);
  t << 0.0, 0.0;
  CHECK(std::abs(echf_joint(s, t) - Complex(1.0, 0.0)) < 1e-15);
  t << 0.7, -0.3;
  // Joint: (1 + e^{i 0.4}) / 2; product: (1 + e^{i 0.7})(1 + e^{-i 0.3}) / 4.
  const Complex i(0.0, 1.0);
  CHECK(std::abs(echf_joint(s, t) - (1.0 + std::exp(i * 0.4)) / 2.0) < 1e-15);
  CHECK(std::abs(echf_product(s, t) - (1.0 + std::exp(i * 0.7)) * (1.0 + std::exp(-i * 0.3)) / 4.0) < 1e-15);
  // Proxy rows (0, 1) and (1, 0).
  CHECK(std::abs(echf_shifted(s, t) - (std::exp(-i * 0.3) + std::exp(i * 0.7)) / 2.0) < 1e-15);
  CHECK_THROWS_AS(echf_joint(s, Vector::Zero(3)), Error);
}

TEST_CASE("weight constants") {
  CHECK(close(weight_constant(1), std::numbers::pi, 1e-14));
  CHECK(close(weight_constant(2), 2.0 * std::numbers::pi, 1e-14));
  CHECK(close(weight_constant(3), std::numbers::pi * std::numbers::pi, 1e-14));
}

TEST_CASE("quadrature reproduces the closed forms on one sample") {
  const Sample s = testing::from_rows({{0.3, -1.2}, {1.1, 0.4}, {-0.5, 0.9}}, {1, 1});
  const auto prod = q_by_quadrature(s);
  const double want = q_complete(s).value;
  INFO(prod.value, " vs ", want, " bound ", prod.truncation_bound);
  CHECK(std::abs(prod.value - want) <= std::max(0.01 * want, prod.truncation_bound));
  const auto shifted = q_by_quadrature(s, {}, QuadratureReference::Shifted);
  const double want_star = q_star(s).value;
  CHECK(std::abs(shifted.value - want_star) <= std::max(0.01 * want_star, shifted.truncation_bound));
}

TEST_CASE("quadrature input checks") {
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(q_by_quadrature(testing::random_sample(rng, 3, {2, 1})), Error);
  QuadratureConfig bad;
  bad.r_min = -1.0;
  CHECK_THROWS_AS(q_by_quadrature(testing::random_sample(rng, 3, {1, 1}), bad), Error);
}

TEST_CASE("property: the pairwise bound never fails") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = 2 + trial % 4;
    const Sample s = testing::random_sample(rng, 10, std::vector<Index>(static_cast<std::size_t>(d), 1 + trial % 2));
    const BoundReport r = pairwise_bound_check(s, 200, 100 + static_cast<std::uint64_t>(trial));
    CHECK(r.violations == 0);
    CHECK(r.draws.size() == 200);
    CHECK(r.max_violation <= 1e-10);
  }
  CHECK_THROWS_AS(pairwise_bound_check(testing::random_sample(rng, 4, {2}), 5, 1), Error);
}
