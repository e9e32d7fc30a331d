#include "mdep/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mdep {

RowMaps identity_maps(Index n, Index d) {
  RowMap id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 0);
  return RowMaps(static_cast<std::size_t>(d), id);
}

bool is_identity(const RowMap& map) noexcept {
  for (std::size_t k = 0; k < map.size(); ++k) {
    if (map[k] != static_cast<int>(k)) return false;
  }
  return true;
}

double tree_sum(std::span<const double> values) noexcept {
  if (values.size() <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return tree_sum(values.first(half)) + tree_sum(values.subspan(half));
}

BlockGeometry::BlockGeometry(const Sample& sample) : n_(sample.rows()) {
  const Index d = sample.block_count();
  squared_.reserve(static_cast<std::size_t>(d));
  distances_.reserve(static_cast<std::size_t>(d));
  for (Index j = 0; j < d; ++j) {
    squared_.push_back(squared_pairwise_distances(sample.block(j)));
    distances_.push_back(squared_.back().cwiseSqrt());
  }
}

Matrix reindex(const Matrix& m, const RowMap& map) {
  if (is_identity(map)) return m;
  const Index n = m.rows();
  Matrix scratch(n, n);
  for (Index l = 0; l < n; ++l) {
    const double* src = m.col(map[static_cast<std::size_t>(l)]).data();
    double* dst = scratch.col(l).data();
    for (Index k = 0; k < n; ++k) dst[k] = src[map[static_cast<std::size_t>(k)]];
  }
  return scratch;
}

namespace kernel {
namespace {

Vector column_sums(const Matrix& m) { return m.colwise().sum().transpose(); }

double sqrt_sum_of(const Matrix& sum_sq) {
  const Vector cs = sum_sq.cwiseSqrt().colwise().sum().transpose();
  return tree_sum(cs);
}

// Sum over l_s, .., l_{m-1} of sqrt(partial + sum_s G_s(l_s, k)).
double cross_tuples(std::span<const Matrix> groups, Index k, std::size_t s, double partial) {
  const auto& g = groups[s];
  if (s + 1 == groups.size()) return (g.col(k).array() + partial).sqrt().sum();
  const Index n = g.rows();
  Vector terms(n);
  for (Index l = 0; l < n; ++l) terms[l] = cross_tuples(groups, k, s + 1, partial + g(l, k));
  return tree_sum(terms);
}

// Sum over independent index pairs (k_s, l_s) per component; the multiset of
// G_s entries is n zeros plus every off-diagonal value twice.
double product_tuples(std::span<const Vector> off_diag, Index n, std::size_t s, double partial) {
  const auto& vals = off_diag[s];
  const double nd = static_cast<double>(n);
  if (s + 1 == off_diag.size()) {
    return nd * std::sqrt(partial) + 2.0 * (vals.array() + partial).sqrt().sum();
  }
  Vector terms(vals.size());
  for (Index i = 0; i < vals.size(); ++i) terms[i] = product_tuples(off_diag, n, s + 1, partial + vals[i]);
  return nd * product_tuples(off_diag, n, s + 1, partial) + 2.0 * tree_sum(terms);
}

Vector upper_triangle(const Matrix& g) {
  const Index n = g.rows();
  Vector out(n * (n - 1) / 2);
  Index i = 0;
  for (Index l = 1; l < n; ++l) {
    out.segment(i, l) = g.col(l).head(l);
    i += l;
  }
  return out;
}

}  // namespace

Evaluated dcov(const Matrix& a, const Matrix& b) {
  const Index n = a.rows();
  const double nd = static_cast<double>(n);
  Vector col_products(n);
  for (Index l = 0; l < n; ++l) col_products[l] = a.col(l).dot(b.col(l));
  const double s1 = tree_sum(col_products) / (nd * nd);
  const Vector ra = column_sums(a);
  const Vector rb = column_sums(b);
  const double s2 = (tree_sum(ra) / (nd * nd)) * (tree_sum(rb) / (nd * nd));
  const Vector rab = ra.cwiseProduct(rb);
  const double s3 = tree_sum(rab) / (nd * nd * nd);
  return {s1 + s2 - 2.0 * s3, std::max({s1, s2, 2.0 * s3})};
}

double dcov_double_centered(const Matrix& a, const Matrix& b) {
  auto centre = [](const Matrix& m) {
    const Vector row_mean = m.rowwise().mean();
    const Eigen::RowVectorXd col_mean = m.colwise().mean();
    Matrix c = m;
    c.colwise() -= row_mean;
    c.rowwise() -= col_mean;
    c.array() += m.mean();
    return c;
  };
  const double nd = static_cast<double>(a.rows());
  return centre(a).cwiseProduct(centre(b)).sum() / (nd * nd);
}

double q_product_term(std::span<const Matrix> group_squared) {
  const Index n = group_squared.front().rows();
  const auto m = static_cast<double>(group_squared.size());
  std::vector<Vector> off;
  off.reserve(group_squared.size());
  for (const auto& g : group_squared) off.push_back(upper_triangle(g));
  return product_tuples(off, n, 0, 0.0) / std::pow(static_cast<double>(n), 2.0 * m);
}

Evaluated q_complete(std::span<const Matrix> group_squared, std::optional<double> product_term) {
  const Index n = group_squared.front().rows();
  const double nd = static_cast<double>(n);
  const auto m = static_cast<double>(group_squared.size());

  Vector per_row(n);
  for (Index k = 0; k < n; ++k) per_row[k] = cross_tuples(group_squared, k, 0, 0.0);
  const double cross = 2.0 * tree_sum(per_row) / std::pow(nd, m + 1.0);

  Matrix joint = group_squared.front();
  for (std::size_t s = 1; s < group_squared.size(); ++s) joint += group_squared[s];
  const double within = sqrt_sum_of(joint) / (nd * nd);

  const double product = product_term ? *product_term : q_product_term(group_squared);

  return {cross - within - product, std::max({cross, within, product})};
}

Evaluated q_star(std::span<const Matrix> group_squared) {
  const Index n = group_squared.front().rows();
  const double nd = static_cast<double>(n);
  const std::size_t m = group_squared.size();

  Vector cross_cols(n), shifted_cols(n), buf(n), sbuf(n);
  for (Index l = 0; l < n; ++l) {
    buf.setZero();
    sbuf.setZero();
    for (std::size_t s = 0; s < m; ++s) {
      const Index sh = static_cast<Index>(s) % n;
      const auto col = group_squared[s].col((l + sh) % n);
      buf += col;
      sbuf.head(n - sh) += col.segment(sh, n - sh);
      if (sh > 0) sbuf.tail(sh) += col.head(sh);
    }
    cross_cols[l] = buf.cwiseSqrt().sum();
    shifted_cols[l] = sbuf.cwiseSqrt().sum();
  }
  const double cross = 2.0 * tree_sum(cross_cols) / (nd * nd);
  const double shifted = tree_sum(shifted_cols) / (nd * nd);

  Matrix joint = group_squared.front();
  for (std::size_t s = 1; s < m; ++s) joint += group_squared[s];
  const double within = sqrt_sum_of(joint) / (nd * nd);

  return {cross - within - shifted, std::max({cross, within, shifted})};
}

double U3Terms::total() const noexcept {
  double pairs = 0.0;
  for (int i = 0; i < 3; ++i) pairs += pair_same[i] - 2.0 * pair_split[i] + pair_prod[i];
  return -triple_same + 2.0 * triple_split - triple_prod + pairs;
}

U3Terms u3(const Matrix& a1, const Matrix& a2, const Matrix& a3) {
  const Index n = a1.rows();
  const double nd = static_cast<double>(n);
  const Matrix* a[3] = {&a1, &a2, &a3};
  Vector r[3];
  double mean[3];
  for (int j = 0; j < 3; ++j) {
    r[j] = column_sums(*a[j]);
    mean[j] = tree_sum(r[j]) / (nd * nd);
  }

  U3Terms t;
  Vector cols(n);
  for (Index l = 0; l < n; ++l) cols[l] = a1.col(l).cwiseProduct(a2.col(l)).dot(a3.col(l));
  t.triple_same = tree_sum(cols) / (nd * nd);
  const Vector r123 = r[0].cwiseProduct(r[1]).cwiseProduct(r[2]);
  t.triple_split = tree_sum(r123) / (nd * nd * nd * nd);
  t.triple_prod = mean[0] * mean[1] * mean[2];

  constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int p = 0; p < 3; ++p) {
    const auto& ai = *a[pairs[p][0]];
    const auto& aj = *a[pairs[p][1]];
    for (Index l = 0; l < n; ++l) cols[l] = ai.col(l).dot(aj.col(l));
    t.pair_same[p] = tree_sum(cols) / (nd * nd);
    const Vector rij = r[pairs[p][0]].cwiseProduct(r[pairs[p][1]]);
    t.pair_split[p] = tree_sum(rij) / (nd * nd * nd);
    t.pair_prod[p] = mean[pairs[p][0]] * mean[pairs[p][1]];
  }
  return t;
}

}  // namespace kernel
}  // namespace mdep
