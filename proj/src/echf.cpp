#include "mdep/echf.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace mdep {
namespace {

// Per-block projections <t_j, x_j^k>, one column per block.
Matrix block_phases(const Sample& sample, const Vector& t) {
  if (t.size() != sample.cols()) {
    throw Error(Errc::DimensionMismatch, "frequency has " + std::to_string(t.size()) + " coordinates, sample has " +
                                             std::to_string(sample.cols()));
  }
  if (!all_finite(t)) throw Error(Errc::NonFiniteEntry, "frequency is not finite");
  Matrix out(sample.rows(), sample.block_count());
  for (Index j = 0; j < sample.block_count(); ++j) {
    out.col(j) = sample.block(j) * t.segment(sample.blocks().offset(j), sample.blocks().dim(j));
  }
  return out;
}

Complex mean_exp(const Vector& phase) {
  Complex s{0.0, 0.0};
  for (Index k = 0; k < phase.size(); ++k) s += std::polar(1.0, phase[k]);
  return s / static_cast<double>(phase.size());
}

Vector shifted_sum(const Matrix& phases) {
  const Index n = phases.rows();
  Vector out = Vector::Zero(n);
  for (Index j = 0; j < phases.cols(); ++j) {
    for (Index k = 0; k < n; ++k) out[k] += phases((k + j) % n, j);
  }
  return out;
}

// 8-point Gauss-Legendre rule mapped to [0, 1].
struct GaussLegendre8 {
  std::array<double, 8> x{}, w{};
  GaussLegendre8() {
    constexpr double nodes[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
    constexpr double weights[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
    for (int i = 0; i < 4; ++i) {
      x[3 - i] = 0.5 * (1.0 - nodes[i]);
      x[4 + i] = 0.5 * (1.0 + nodes[i]);
      w[3 - i] = w[4 + i] = 0.5 * weights[i];
    }
  }
};
const GaussLegendre8 kGL;

// Plain complex product; std::complex's operator* carries NaN recovery that
// dominates the inner loop.
inline Complex mul(const Complex& a, const Complex& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Frequencies along one ray. The joint and reference characteristic
// functions are means of exp(i r w) over their frequency sets (product
// reference: product of per-block means).
struct RaySpectrum {
  std::vector<std::vector<double>> groups;  // group 0 joint, then reference groups
  bool product = true;
  double spread = 0.0;

  [[nodiscard]] std::size_t total() const {
    std::size_t s = 0;
    for (const auto& g : groups) s += g.size();
    return s;
  }
};

RaySpectrum make_spectrum(const Sample& sample, const Vector& direction, QuadratureReference ref) {
  const Matrix phases = block_phases(sample, direction);
  const Index n = sample.rows();
  const Index d = sample.block_count();
  // Shifting block j's frequencies by its midpoint c_j and the joint ones by
  // sum c_j leaves |phi_joint - phi_ref| unchanged and keeps phases small.
  Vector centre(d);
  double lo_ref = 0.0, hi_ref = 0.0;
  for (Index j = 0; j < d; ++j) {
    const double lo = phases.col(j).minCoeff(), hi = phases.col(j).maxCoeff();
    centre[j] = 0.5 * (lo + hi);
    lo_ref += lo - centre[j];
    hi_ref += hi - centre[j];
  }
  const double shift = centre.sum();
  RaySpectrum spec;
  spec.product = ref == QuadratureReference::Product;
  auto to_group = [&](const Vector& v) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = v[k];
    return g;
  };
  const Vector joint = phases.rowwise().sum().array() - shift;
  spec.groups.push_back(to_group(joint));
  if (spec.product) {
    for (Index j = 0; j < d; ++j) spec.groups.push_back(to_group(phases.col(j).array() - centre[j]));
  } else {
    const Vector sh = shifted_sum(phases).array() - shift;
    spec.groups.push_back(to_group(sh));
    lo_ref = sh.minCoeff();
    hi_ref = sh.maxCoeff();
  }
  const double lo = std::min(joint.minCoeff(), lo_ref);
  const double hi = std::max(joint.maxCoeff(), hi_ref);
  spec.spread = hi - lo;
  return spec;
}

double squared_gap(const RaySpectrum& spec, const std::vector<Complex>& sums) {
  const double inv_n = 1.0 / static_cast<double>(spec.groups[0].size());
  const Complex joint = sums[0] * inv_n;
  Complex ref;
  if (spec.product) {
    ref = sums[1] * inv_n;
    for (std::size_t g = 2; g < sums.size(); ++g) ref = mul(ref, sums[g] * inv_n);
  } else {
    ref = sums[1] * inv_n;
  }
  return std::norm(joint - ref);
}

// Integral of |phi_joint(r) - phi_ref(r)|^2 / r^2 over [r_min, r_max].
double radial_integral(const RaySpectrum& spec, const QuadratureConfig& cfg) {
  if (!(spec.spread > 0.0)) return 0.0;
  const double h = cfg.panel_phase / spec.spread;
  const std::size_t ng = spec.groups.size();
  std::vector<Complex> sums(ng);
  double total = 0.0;

  // Graded panels near the origin, evaluated directly.
  double a = cfg.r_min;
  while (a < cfg.r_max && 0.5 * a < h) {
    const double b = std::min({1.5 * a, a + h, cfg.r_max});
    for (int q = 0; q < 8; ++q) {
      const double r = a + (b - a) * kGL.x[q];
      for (std::size_t g = 0; g < ng; ++g) {
        Complex s{0.0, 0.0};
        for (double w : spec.groups[g]) s += std::polar(1.0, r * w);
        sums[g] = s;
      }
      total += (b - a) * kGL.w[q] * squared_gap(spec, sums) / (r * r);
    }
    a = b;
  }
  if (a >= cfg.r_max) return total;

  // Uniform panels of width h with a phasor recurrence per frequency.
  const double start = a;
  const auto panels = static_cast<std::size_t>(std::ceil((cfg.r_max - start) / h));
  const std::size_t nf = spec.total();
  std::vector<double> freq;
  std::vector<std::size_t> group_of;
  for (std::size_t g = 0; g < ng; ++g) {
    for (double w : spec.groups[g]) {
      freq.push_back(w);
      group_of.push_back(g);
    }
  }
  // Structure-of-arrays phasors so the 8-node inner loop vectorises.
  std::vector<double> base_re(nf), base_im(nf), step_re(nf), step_im(nf);
  std::vector<std::array<double, 8>> off_re(nf), off_im(nf);
  auto set_offsets = [&](double width) {
    for (std::size_t f = 0; f < nf; ++f) {
      for (int q = 0; q < 8; ++q) {
        const Complex o = std::polar(1.0, width * kGL.x[q] * freq[f]);
        off_re[f][q] = o.real();
        off_im[f][q] = o.imag();
      }
    }
  };
  set_offsets(h);
  for (std::size_t f = 0; f < nf; ++f) {
    const Complex st = std::polar(1.0, h * freq[f]);
    step_re[f] = st.real();
    step_im[f] = st.imag();
  }
  std::vector<std::array<double, 8>> acc_re(ng), acc_im(ng);
  std::array<double, 8> weight{};
  for (std::size_t i = 0; i < panels; ++i) {
    const double left = start + static_cast<double>(i) * h;
    const double right = std::min(left + h, cfg.r_max);
    const double width = right - left;
    const bool last = width < h;
    if (i % 256 == 0 || last) {
      for (std::size_t f = 0; f < nf; ++f) {
        const Complex b = std::polar(1.0, left * freq[f]);
        base_re[f] = b.real();
        base_im[f] = b.imag();
      }
    }
    if (last) set_offsets(width);
    for (std::size_t g = 0; g < ng; ++g) {
      acc_re[g].fill(0.0);
      acc_im[g].fill(0.0);
    }
    for (std::size_t f = 0; f < nf; ++f) {
      auto& are = acc_re[group_of[f]];
      auto& aim = acc_im[group_of[f]];
      const double br = base_re[f], bi = base_im[f];
      const auto& ore = off_re[f];
      const auto& oim = off_im[f];
      for (int q = 0; q < 8; ++q) {
        are[q] += br * ore[q] - bi * oim[q];
        aim[q] += br * oim[q] + bi * ore[q];
      }
      base_re[f] = br * step_re[f] - bi * step_im[f];
      base_im[f] = br * step_im[f] + bi * step_re[f];
    }
    for (int q = 0; q < 8; ++q) {
      const double r = left + width * kGL.x[q];
      weight[q] = kGL.w[q] / (r * r);
    }
    double panel = 0.0;
    for (int q = 0; q < 8; ++q) {
      for (std::size_t g = 0; g < ng; ++g) sums[g] = Complex(acc_re[g][q], acc_im[g][q]);
      panel += weight[q] * squared_gap(spec, sums);
    }
    total += width * panel;
  }
  return total;
}

}  // namespace

Complex echf_joint(const Sample& sample, const Vector& t) {
  return mean_exp(block_phases(sample, t).rowwise().sum());
}

Complex echf_product(const Sample& sample, const Vector& t) {
  const Matrix phases = block_phases(sample, t);
  Complex out{1.0, 0.0};
  for (Index j = 0; j < phases.cols(); ++j) out *= mean_exp(phases.col(j));
  return out;
}

Complex echf_shifted(const Sample& sample, const Vector& t) { return mean_exp(shifted_sum(block_phases(sample, t))); }

double weight_constant(int q, double m) {
  const double pi = std::numbers::pi;
  return 2.0 * std::pow(pi, 0.5 * q) * std::tgamma(1.0 - 0.5 * m) /
         (m * std::pow(2.0, m) * std::tgamma(0.5 * (q + m)));
}

QuadratureResult q_by_quadrature(const Sample& sample, const QuadratureConfig& cfg, QuadratureReference reference) {
  if (!(cfg.r_min > 0.0 && cfg.r_min < cfg.r_max)) throw Error(Errc::InvalidArgument, "need 0 < r_min < r_max");
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 0.1)) throw Error(Errc::InvalidArgument, "rel_tol must lie in (0, 0.1)");
  if (cfg.rays < 2 || cfg.max_rays < cfg.rays) throw Error(Errc::InvalidArgument, "ray counts");
  const Index p = sample.cols();
  if (p > 2) throw Error(Errc::DimensionTooLarge, "quadrature supports total dimension 1 or 2, got " + std::to_string(p));

  const double pi = std::numbers::pi;
  const double kp = weight_constant(static_cast<int>(p));
  QuadratureResult out;
  if (p == 1) {
    const Vector u = Vector::Ones(1);
    out.value = 2.0 * radial_integral(make_spectrum(sample, u, reference), cfg) / kp;
    out.truncation_bound = 8.0 / (pi * cfg.r_max);
    out.rays = 1;
    return out;
  }

  // F(theta) = F(theta + pi), so rays over [0, pi) cover the plane twice.
  out.truncation_bound = 4.0 / cfg.r_max;
  auto ray = [&](double theta) {
    Vector u(2);
    u << std::cos(theta), std::sin(theta);
    return radial_integral(make_spectrum(sample, u, reference), cfg);
  };
  int rays = cfg.rays;
  std::vector<double> f(static_cast<std::size_t>(rays));
  for (int i = 0; i < rays; ++i) f[static_cast<std::size_t>(i)] = ray(pi * i / rays);
  auto estimate = [&](int stride) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); i += static_cast<std::size_t>(stride)) s += f[i];
    return 2.0 * (pi * stride / static_cast<double>(f.size())) * s / kp;
  };
  while (true) {
    const double full = estimate(1);
    const double half = estimate(2);
    out.value = full;
    out.rays = rays;
    out.angular_change = std::abs(full - half);
    if (out.angular_change <= std::max(cfg.rel_tol * std::abs(full), out.truncation_bound)) return out;
    if (2 * rays > cfg.max_rays) {
      throw Error(Errc::QuadratureNotConverged, "angular rule still changing by " + std::to_string(out.angular_change) +
                                                    " at " + std::to_string(rays) + " rays");
    }
    std::vector<double> g(static_cast<std::size_t>(2 * rays));
    for (int i = 0; i < rays; ++i) {
      g[static_cast<std::size_t>(2 * i)] = f[static_cast<std::size_t>(i)];
      g[static_cast<std::size_t>(2 * i + 1)] = ray(pi * (2 * i + 1) / (2 * rays));
    }
    f = std::move(g);
    rays *= 2;
  }
}

BoundReport pairwise_bound_check(const Sample& sample, int num_draws, std::uint64_t seed) {
  const Index d = sample.block_count();
  if (d < 2) throw Error(Errc::NeedAtLeastTwoBlocks, "bound check needs d >= 2");
  BoundReport report;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector t(sample.cols());
  for (int draw = 0; draw < num_draws; ++draw) {
    for (Index i = 0; i < t.size(); ++i) t[i] = normal(rng);
    const Matrix phases = block_phases(sample, t);
    // tail[c] = phi of (X_c, ..., X_d); marginal[c] = phi of X_c.
    std::vector<Complex> tail(static_cast<std::size_t>(d)), marginal(static_cast<std::size_t>(d));
    Vector acc = Vector::Zero(sample.rows());
    for (Index c = d - 1; c >= 0; --c) {
      acc += phases.col(c);
      tail[static_cast<std::size_t>(c)] = mean_exp(acc);
      marginal[static_cast<std::size_t>(c)] = c == d - 1 ? tail[static_cast<std::size_t>(c)] : mean_exp(phases.col(c));
    }
    Complex prod = marginal[0];
    for (Index c = 1; c < d; ++c) prod *= marginal[static_cast<std::size_t>(c)];
    BoundDraw bd;
    bd.lhs = std::abs(tail[0] - prod);
    for (Index c = 0; c + 1 < d; ++c) {
      const auto cs = static_cast<std::size_t>(c);
      bd.rhs += std::abs(tail[cs] - marginal[cs] * tail[cs + 1]);
    }
    const double gap = bd.lhs - bd.rhs;
    report.max_violation = std::max(report.max_violation, gap);
    if (gap > 1e-10) ++report.violations;
    report.draws.push_back(bd);
  }
  return report;
}

}  // namespace mdep
