#include "mdep/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

namespace mdep {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y));
         });
}

Matrix standard_normal(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix z(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) z(i, j) = normal(rng);
  }
  return z;
}

}  // namespace

std::string_view to_string(Example e) noexcept {
  switch (e) {
    case Example::Ex1: return "EX1";
    case Example::Ex2: return "EX2";
    case Example::Ex3: return "EX3";
    case Example::Ex4: return "EX4";
    case Example::Ex5: return "EX5";
    case Example::Triplet: return "TRIPLET";
  }
  return "UNKNOWN";
}

std::string_view to_string(Hypothesis h) noexcept { return h == Hypothesis::Null ? "NULL" : "ALT"; }

std::optional<Example> parse_example(std::string_view s) {
  for (Example e : {Example::Ex1, Example::Ex2, Example::Ex3, Example::Ex4, Example::Ex5, Example::Triplet}) {
    if (iequals(s, to_string(e))) return e;
  }
  return std::nullopt;
}

std::optional<Hypothesis> parse_hypothesis(std::string_view s) {
  if (iequals(s, "NULL") || iequals(s, "H0")) return Hypothesis::Null;
  if (iequals(s, "ALT") || iequals(s, "HA")) return Hypothesis::Alt;
  return std::nullopt;
}

ScenarioConfig scenario_defaults(Example e, Hypothesis h, Index n) {
  ScenarioConfig cfg;
  cfg.example = e;
  cfg.hypothesis = h;
  cfg.n = n;
  switch (e) {
    case Example::Ex1:
    case Example::Ex2: cfg.d = 2; cfg.block_dim = 5; break;
    case Example::Ex3:
    case Example::Ex4:
    case Example::Triplet: cfg.d = 3; cfg.block_dim = 5; break;
    case Example::Ex5: cfg.d = 10; cfg.block_dim = 1; break;
  }
  return cfg;
}

double effective_rho(const ScenarioConfig& cfg) {
  if (cfg.rho) return *cfg.rho;
  if (cfg.hypothesis == Hypothesis::Null) return 0.0;
  return cfg.example == Example::Ex2 || cfg.example == Example::Ex4 ? 0.4 : 0.1;
}

Matrix chol_compound_symmetry(Index dim, double rho) {
  if (dim < 1) throw Error(Errc::InvalidArgument, "dimension must be positive");
  if (dim > 1 && !(rho < 1.0 && rho > -1.0 / static_cast<double>(dim - 1))) {
    throw Error(Errc::NotPositiveDefinite, "rho = " + std::to_string(rho) + " for dimension " + std::to_string(dim));
  }
  Matrix sigma = Matrix::Constant(dim, dim, rho);
  sigma.diagonal().setOnes();
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success) throw Error(Errc::NotPositiveDefinite, "Cholesky factorisation failed");
  return llt.matrixL();
}

Sample gen_normal_compound(Index n, Index d, Index q, double rho, Rng& rng) {
  const Index p = d * q;
  const Matrix L = chol_compound_symmetry(p, rho);
  Matrix x = standard_normal(n, p, rng) * L.transpose();
  return make_sample(std::move(x), uniform_blocks(d, q));
}

Sample gen_lognormal_sq(Index n, Index d, Index q, double rho, Rng& rng) {
  const Index p = d * q;
  const Matrix L = chol_compound_symmetry(p, rho);
  Matrix y = standard_normal(n, p, rng) * L.transpose();
  for (Index i = 0; i < n; ++i) {
    while ((y.row(i).array() == 0.0).any()) y.row(i) = standard_normal(1, p, rng) * L.transpose();
  }
  Matrix x = y.array().square().log().matrix();
  return make_sample(std::move(x), uniform_blocks(d, q));
}

Sample gen_sign_triplet(Index n, Index q, Rng& rng, bool dependent) {
  if (q < 1) throw Error(Errc::InvalidArgument, "q must be positive");
  std::normal_distribution<double> normal;
  std::exponential_distribution<double> exponential(std::numbers::sqrt2);
  Matrix m(n, 3 * q);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < 2 * q; ++j) m(i, j) = normal(rng);
    const double w = exponential(rng);
    double s;
    if (dependent) {
      s = m(i, 0) * m(i, q) >= 0.0 ? 1.0 : -1.0;
    } else {
      s = uniform_below(rng, 2) == 0 ? 1.0 : -1.0;
    }
    m(i, 2 * q) = s * w;
    for (Index j = 2 * q + 1; j < 3 * q; ++j) m(i, j) = normal(rng);
  }
  return make_sample(std::move(m), uniform_blocks(3, q));
}

Sample generate(const ScenarioConfig& cfg, Rng& rng) {
  const double rho = effective_rho(cfg);
  switch (cfg.example) {
    case Example::Ex1:
    case Example::Ex3:
    case Example::Ex5: return gen_normal_compound(cfg.n, cfg.d, cfg.block_dim, rho, rng);
    case Example::Ex2:
    case Example::Ex4: return gen_lognormal_sq(cfg.n, cfg.d, cfg.block_dim, rho, rng);
    case Example::Triplet: return gen_sign_triplet(cfg.n, cfg.block_dim, rng, cfg.hypothesis == Hypothesis::Alt);
  }
  throw Error(Errc::InvalidArgument, "unknown example");
}

double PowerCell::rate() const noexcept {
  return reps > 0 ? static_cast<double>(rejections) / static_cast<double>(reps) : 0.0;
}

double PowerCell::stderr_mc() const noexcept {
  const double r = rate();
  return reps > 0 ? std::sqrt(r * (1.0 - r) / static_cast<double>(reps)) : 0.0;
}

PowerStudy run_power_study(const ScenarioConfig& cfg) {
  if (cfg.reps < 1) throw Error(Errc::InvalidArgument, "reps must be at least 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw Error(Errc::InvalidArgument, "alpha must lie in (0, 1)");
  const Index d = cfg.example == Example::Triplet ? 3 : cfg.d;
  const int B = cfg.B.value_or(adaptive_B(cfg.n));
  const std::size_t m = cfg.measures.size();

  PowerStudy study;
  study.decisions.resize(m);
  study.p_values.resize(m);
  std::vector<bool> skip(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    PowerCell cell;
    cell.example = cfg.example;
    cell.hypothesis = cfg.hypothesis;
    cell.n = cfg.n;
    cell.d = d;
    cell.measure = to_string(cfg.measures[i]);
    cell.B = B;
    cell.reps = cfg.reps;
    if (const auto* kind = std::get_if<MeasureKind>(&cfg.measures[i])) {
      skip[i] = is_guarded(*kind) && required_terms(*kind, cfg.n, d) > cfg.guard.max_elementary_terms;
    }
    cell.skipped = skip[i];
    if (!skip[i]) {
      study.decisions[i].assign(static_cast<std::size_t>(cfg.reps), 0);
      study.p_values[i].assign(static_cast<std::size_t>(cfg.reps), 1.0);
    }
    study.report.cells.push_back(cell);
  }

  auto repetition = [&](int r) {
    const std::uint64_t rep_seed = substream_seed(cfg.seed, static_cast<std::uint64_t>(r));
    Rng rng(substream_seed(rep_seed, 0));
    const Sample sample = generate(cfg, rng);
    PermutationPlan plan;
    plan.B = B;
    plan.seed = substream_seed(rep_seed, 1);
    for (std::size_t i = 0; i < m; ++i) {
      if (skip[i]) continue;
      const auto outcome = permutation_test(sample, cfg.measures[i], plan, cfg.guard);
      study.p_values[i][static_cast<std::size_t>(r)] = outcome.p_value;
      study.decisions[i][static_cast<std::size_t>(r)] = outcome.p_value < cfg.alpha ? 1 : 0;
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.reps)));
  if (threads == 1) {
    for (int r = 0; r < cfg.reps; ++r) repetition(r);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (int r = static_cast<int>(t); r < cfg.reps; r += static_cast<int>(threads)) repetition(r);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    if (skip[i]) continue;
    study.report.cells[i].rejections =
        static_cast<int>(std::count(study.decisions[i].begin(), study.decisions[i].end(), std::uint8_t{1}));
  }
  return study;
}

}  // namespace mdep
