#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mdep/sample.hpp"

namespace mdep {

using Complex = std::complex<double>;

/// (1/n) sum_k exp(i <t, x_k>) with t partitioned like the sample's columns.
Complex echf_joint(const Sample& sample, const Vector& t);
/// Product over blocks of the marginal empirical characteristic functions.
Complex echf_product(const Sample& sample, const Vector& t);
/// Joint empirical characteristic function of the cyclic-shift proxy rows.
Complex echf_shifted(const Sample& sample, const Vector& t);

/// K(q, m) = 2 pi^{q/2} Gamma(1 - m/2) / (m 2^m Gamma((q + m)/2)).
double weight_constant(int q, double m = 1.0);

struct QuadratureConfig {
  double r_min = 1e-6;
  double r_max = 1e4;
  double rel_tol = 1e-3;
  // Polar rays over [0, pi) for p = 2, trapezoid rule; doubled until two
  // successive estimates agree to rel_tol or max_rays is reached.
  int rays = 128;
  int max_rays = 4096;
  // Radial rule: composite 8-point Gauss-Legendre. Panels grow geometrically
  // from r_min, then have width panel_phase / (frequency spread).
  double panel_phase = 6.0;
};

enum class QuadratureReference { Product, Shifted };

struct QuadratureResult {
  double value = 0.0;
  /// 4 * integral of w1 beyond r_max; |difference|^2 <= 4 everywhere.
  double truncation_bound = 0.0;
  int rays = 0;
  double angular_change = 0.0;  // |estimate - estimate on half the rays|
};

/// Weighted L2 distance between the joint empirical characteristic function
/// and the product (or shifted-proxy) reference under w1, by direct
/// numerical integration over r_min <= |t| <= r_max. Total dimension 1 or 2.
QuadratureResult q_by_quadrature(const Sample& sample, const QuadratureConfig& cfg = {},
                                 QuadratureReference reference = QuadratureReference::Product);

struct BoundDraw {
  double lhs = 0.0;  // |phi_X(t) - prod_j phi_Xj(t_j)|
  double rhs = 0.0;  // sum_c |phi_(Xc, Xc+)(t) - phi_Xc(t_c) phi_Xc+(t_c+)|
};

struct BoundReport {
  std::vector<BoundDraw> draws;
  double max_violation = 0.0;  // max(lhs - rhs, 0)
  int violations = 0;          // draws with lhs - rhs > 1e-10
};

/// Checks |phi_X - prod phi_j| <= sum over right-hand splits at random t.
BoundReport pairwise_bound_check(const Sample& sample, int num_draws, std::uint64_t seed);

}  // namespace mdep
