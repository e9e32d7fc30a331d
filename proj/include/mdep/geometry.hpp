#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mdep/sample.hpp"

namespace mdep {

/// Row k of block j in a remapped sample is row maps[j][k] of the original.
using RowMap = std::vector<int>;
using RowMaps = std::vector<RowMap>;

RowMaps identity_maps(Index n, Index d);
bool is_identity(const RowMap& map) noexcept;

/// Pairwise summation; the reduction tree depends only on the length.
double tree_sum(std::span<const double> values) noexcept;
inline double tree_sum(const Vector& v) noexcept { return tree_sum(std::span<const double>(v.data(), static_cast<std::size_t>(v.size()))); }

/// Per-block squared distance and distance matrices of one sample.
///
/// Every statistic in the library is a sum of Euclidean distances between
/// concatenations of block rows, and |(u_1, .., u_d) - (v_1, .., v_d)|^2 is the
/// sum of the per-block squared distances. A permutation of block rows is then
/// just a reindexing of these matrices, so replicates never touch raw data.
class BlockGeometry {
 public:
  explicit BlockGeometry(const Sample& sample);

  [[nodiscard]] Index n() const noexcept { return n_; }
  [[nodiscard]] Index d() const noexcept { return static_cast<Index>(squared_.size()); }
  [[nodiscard]] const Matrix& squared(Index j) const { return squared_[static_cast<std::size_t>(j)]; }
  [[nodiscard]] const Matrix& distances(Index j) const { return distances_[static_cast<std::size_t>(j)]; }

 private:
  Index n_;
  std::vector<Matrix> squared_;
  std::vector<Matrix> distances_;
};

/// Entry (k, l) of the result is m(map[k], map[l]).
Matrix reindex(const Matrix& m, const RowMap& map);

namespace kernel {

/// A statistic value and the magnitude of the terms it was assembled from.
struct Evaluated {
  double value = 0.0;
  double scale = 0.0;
};

/// V_n^2 = S1 + S2 - 2 S3 from two distance matrices.
Evaluated dcov(const Matrix& a, const Matrix& b);

/// V_n^2 as the mean product of double-centred distance matrices.
double dcov_double_centered(const Matrix& a, const Matrix& b);

/// Complete V-statistic for the components whose squared distance matrices
/// are given (one per component, already reindexed). The product term only
/// depends on the multiset of each component's distances, so callers that
/// permute rows within single components may pass it precomputed.
Evaluated q_complete(std::span<const Matrix> group_squared, std::optional<double> product_term = {});
/// The (1/n^{2m}) sum over independent index pairs per component.
double q_product_term(std::span<const Matrix> group_squared);

/// Incomplete V-statistic: component s of the proxy row l is row (l + s) mod n.
Evaluated q_star(std::span<const Matrix> group_squared);

/// Expectation-level building blocks of the three-component w2 expansion,
/// each replaced by its plug-in empirical mean.
struct U3Terms {
  double triple_same = 0.0;   // E|X1-X1'||X2-X2'||X3-X3'|
  double triple_split = 0.0;  // E|X1-X1'||X2-X2''||X3-X3'''|
  double triple_prod = 0.0;   // E|X1-X1'| E|X2-X2'| E|X3-X3'|
  double pair_same[3] = {};   // E|Xi-Xi'||Xj-Xj'| for (1,2), (1,3), (2,3)
  double pair_split[3] = {};  // E|Xi-Xi'||Xj-Xj''|
  double pair_prod[3] = {};   // E|Xi-Xi'| E|Xj-Xj'|

  [[nodiscard]] double total() const noexcept;
};

U3Terms u3(const Matrix& a1, const Matrix& a2, const Matrix& a3);

}  // namespace kernel
}  // namespace mdep
