#include "mdep/commands.hpp"

#include <chrono>
#include <cmath>

#include "mdep/io.hpp"

namespace mdep {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Statistic statistic_or_throw(const std::string& name) {
  if (auto s = parse_statistic(name)) return *s;
  throw Error(Errc::InvalidArgument, "unknown measure '" + name + "'");
}

json note_json(const std::optional<std::string>& note) { return note ? json(*note) : json(nullptr); }

json dims_json(const Sample& s) {
  json out = json::array();
  for (Index w : s.blocks().dims()) out.push_back(w);
  return out;
}

PermutationPlan plan_for(Index n, std::optional<int> B, std::uint64_t seed, unsigned threads) {
  PermutationPlan plan;
  plan.B = B.value_or(adaptive_B(n));
  plan.seed = seed;
  plan.parallel = threads > 1;
  plan.threads = threads;
  return plan;
}

double pearson(const Vector& a, const Vector& b) {
  const Vector x = a.array() - a.mean();
  const Vector y = b.array() - b.mean();
  return x.dot(y) / std::sqrt(x.squaredNorm() * y.squaredNorm());
}

template <typename T>
void read_opt(const json& j, const char* key, std::optional<T>& out) {
  if (j.contains(key) && !j[key].is_null()) out = j[key].get<T>();
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j[key].get<T>();
}

}  // namespace

int exit_code(Errc code) noexcept {
  switch (code) {
    case Errc::BudgetExceeded: return 4;
    case Errc::FileNotFound:
    case Errc::RaggedRows:
    case Errc::NonNumericCell:
    case Errc::LayoutNotRecognized:
    case Errc::YearRangeMissing:
    case Errc::NonFiniteEntry:
    case Errc::TooFewRows:
    case Errc::DimensionMismatch:
    case Errc::LengthMismatch:
    case Errc::ZeroVariance:
    case Errc::NotPositiveDefinite:
    case Errc::QuadratureNotConverged: return 3;
    default: return 2;
  }
}

json error_json(const Error& e) {
  json j = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}, {"exit_code", exit_code(e.code())}};
  if (const auto* b = dynamic_cast<const BudgetExceededError*>(&e)) {
    j["required_terms"] = b->required();
    j["max_terms"] = b->allowed();
  }
  return j;
}

Sample load_sample(const RunConfig& cfg) {
  const std::string text = read_text_file(cfg.input);
  const bool header = cfg.header.value_or(looks_like_header(text));
  const Table table = parse_csv_text(text, header);
  if (table.values.rows() == 0) throw Error(Errc::TooFewRows, cfg.input.string() + " has no data rows");
  if (cfg.blocks.empty()) return make_sample(table.values, uniform_blocks(table.values.cols(), 1));
  return apply_block_layout(table.values, parse_block_layout(cfg.blocks));
}

json cmd_test(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  const Statistic stat = statistic_or_throw(cfg.measure);
  const Sample sample = load_sample(cfg);
  const PermutationPlan plan = plan_for(sample.rows(), cfg.B, cfg.seed, cfg.threads);
  const auto outcome = permutation_test(sample, stat, plan, cfg.guard);
  return {{"measure", to_string(stat)},
          {"statistic", outcome.observed},
          {"p_value", outcome.p_value},
          {"B", outcome.B},
          {"B_adaptive", !cfg.B.has_value()},
          {"n", outcome.n},
          {"d", outcome.d},
          {"block_dims", dims_json(sample)},
          {"seed", outcome.seed},
          {"alpha", cfg.alpha},
          {"note", note_json(outcome.note)},
          {"elapsed_ms", ms_since(t0)}};
}

json cmd_pairwise(const RunConfig& cfg) {
  const auto t0 = Clock::now();
  const Sample sample = load_sample(cfg);
  const PermutationPlan plan = plan_for(sample.rows(), cfg.B, cfg.seed, cfg.threads);
  const BonferroniReport report = pairwise_bonferroni(sample, cfg.alpha, plan);
  json pairs = json::array();
  for (const auto& p : report.pairs) {
    pairs.push_back({{"blocks", {p.first, p.second}},
                     {"statistic", p.test.observed},
                     {"p_value", p.test.p_value},
                     {"seed", p.test.seed},
                     {"rejected", p.rejected}});
  }
  return {{"measure", "DCOV_SQ"},
          {"pairs", pairs},
          {"alpha", report.alpha},
          {"threshold", report.threshold},
          {"reject_overall", report.reject_overall},
          {"B", plan.B},
          {"B_adaptive", !cfg.B.has_value()},
          {"n", sample.rows()},
          {"d", sample.block_count()},
          {"block_dims", dims_json(sample)},
          {"seed", cfg.seed},
          {"elapsed_ms", ms_since(t0)}};
}

SimulateConfig parse_simulate_config(const json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidArgument, "simulation config must be a JSON object");
  SimulateConfig cfg;
  try {
    if (j.contains("example")) {
      const auto e = parse_example(j["example"].get<std::string>());
      if (!e) throw Error(Errc::InvalidArgument, "unknown example " + j["example"].dump());
      cfg.example = *e;
    }
    if (j.contains("hypothesis")) {
      const auto h = parse_hypothesis(j["hypothesis"].get<std::string>());
      if (!h) throw Error(Errc::InvalidArgument, "unknown hypothesis " + j["hypothesis"].dump());
      cfg.hypothesis = *h;
    }
    read(j, "sizes", cfg.sizes);
    read_opt(j, "d", cfg.d);
    read_opt(j, "block_dim", cfg.block_dim);
    read_opt(j, "rho", cfg.rho);
    read(j, "reps", cfg.reps);
    read(j, "alpha", cfg.alpha);
    read(j, "measures", cfg.measures);
    read(j, "seed", cfg.seed);
    read_opt(j, "B", cfg.B);
    read(j, "budget", cfg.guard.max_elementary_terms);
    read(j, "threads", cfg.threads);
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidArgument, std::string("simulation config: ") + e.what());
  }
  return cfg;
}

SimulateResult cmd_simulate(const SimulateConfig& cfg) {
  const auto t0 = Clock::now();
  std::vector<Statistic> measures;
  for (const auto& m : cfg.measures) measures.push_back(statistic_or_throw(m));
  if (cfg.sizes.empty()) throw Error(Errc::InvalidArgument, "no sample sizes given");

  SimulateResult out;
  json skipped = json::array();
  for (Index n : cfg.sizes) {
    ScenarioConfig sc = scenario_defaults(cfg.example, cfg.hypothesis, n);
    if (cfg.d && cfg.example != Example::Triplet) sc.d = *cfg.d;
    if (cfg.block_dim) sc.block_dim = *cfg.block_dim;
    sc.rho = cfg.rho;
    sc.reps = cfg.reps;
    sc.alpha = cfg.alpha;
    sc.measures = measures;
    sc.seed = cfg.seed;
    sc.guard = cfg.guard;
    sc.B = cfg.B;
    sc.threads = cfg.threads;
    const PowerStudy study = run_power_study(sc);
    for (std::size_t i = 0; i < study.report.cells.size(); ++i) {
      const PowerCell& c = study.report.cells[i];
      if (c.skipped) {
        const auto kind = std::get<MeasureKind>(measures[i]);
        skipped.push_back({{"n", c.n},
                           {"d", c.d},
                           {"measure", c.measure},
                           {"error", "BudgetExceeded"},
                           {"required_terms", required_terms(kind, c.n, c.d)},
                           {"max_terms", cfg.guard.max_elementary_terms}});
      }
      out.report.cells.push_back(c);
    }
  }
  out.summary = {{"example", to_string(cfg.example)},
                 {"hypothesis", to_string(cfg.hypothesis)},
                 {"sizes", cfg.sizes},
                 {"reps", cfg.reps},
                 {"alpha", cfg.alpha},
                 {"seed", cfg.seed},
                 {"B", cfg.B ? json(*cfg.B) : json("adaptive")},
                 {"skipped", skipped},
                 {"elapsed_ms", ms_since(t0)}};
  return out;
}

std::filesystem::path default_ff_path() { return std::filesystem::path(MDEP_DATA_DIR) / "ff_annual_factors.csv"; }

json cmd_demo_ff(const std::filesystem::path& path, std::optional<int> B, std::uint64_t seed,
                 const CostGuard& guard) {
  const auto t0 = Clock::now();
  const FamaFrench ff = parse_fama_french(path);
  const Sample sample = make_sample(ff.values, uniform_blocks(3, 1));

  json corr = json::array();
  for (Index a = 0; a < 3; ++a) {
    for (Index b = a + 1; b < 3; ++b) {
      corr.push_back({{"pair", {ff.columns[static_cast<std::size_t>(a)], ff.columns[static_cast<std::size_t>(b)]}},
                      {"pearson", pearson(ff.values.col(a), ff.values.col(b))}});
    }
  }

  const PermutationPlan plan = plan_for(sample.rows(), B, seed, 1);
  json tests = json::array();
  const std::vector<Statistic> stats{MeasureKind::QComplete, MeasureKind::QStar,  MeasureKind::RAsym,
                                     MeasureKind::SSym,      MeasureKind::JAsym,  MeasureKind::ISym,
                                     MeasureKind::JStar,     MeasureKind::IStar,  MeasureKind::U3Plugin,
                                     RankStatKind::HlTau,    RankStatKind::HlRho};
  for (const auto& s : stats) {
    try {
      const auto o = permutation_test(sample, s, plan, guard);
      tests.push_back({{"measure", to_string(s)},
                       {"statistic", o.observed},
                       {"p_value", o.p_value},
                       {"note", note_json(o.note)}});
    } catch (const BudgetExceededError& e) {
      tests.push_back({{"measure", to_string(s)}, {"statistic", nullptr}, {"p_value", nullptr}, {"note", e.what()}});
    }
  }
  return {{"input", path.string()},
          {"years", {ff.years.front(), ff.years.back()}},
          {"n", sample.rows()},
          {"columns", ff.columns},
          {"correlations", corr},
          {"tests", tests},
          {"B", plan.B},
          {"seed", seed},
          {"elapsed_ms", ms_since(t0)}};
}

}  // namespace mdep
