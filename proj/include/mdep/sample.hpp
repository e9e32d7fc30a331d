#pragma once

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mdep/error.hpp"

namespace mdep {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Partition of p columns into d consecutive blocks of widths p_1, ..., p_d.
class BlockSpec {
 public:
  BlockSpec() = default;
  explicit BlockSpec(std::vector<Index> dims);

  [[nodiscard]] Index count() const noexcept { return static_cast<Index>(dims_.size()); }
  [[nodiscard]] Index total() const noexcept { return total_; }
  [[nodiscard]] Index dim(Index j) const { return dims_.at(static_cast<std::size_t>(j)); }
  [[nodiscard]] Index offset(Index j) const { return offsets_.at(static_cast<std::size_t>(j)); }
  [[nodiscard]] const std::vector<Index>& dims() const noexcept { return dims_; }

  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;

 private:
  std::vector<Index> dims_;
  std::vector<Index> offsets_;
  Index total_ = 0;
};

/// Equal-width partition: d blocks of q columns each.
BlockSpec uniform_blocks(Index d, Index q);

/// An n x p matrix of finite reals together with its block partition.
/// Immutable once constructed; use make_sample to build one.
class Sample {
 public:
  [[nodiscard]] Index rows() const noexcept { return data_.rows(); }
  [[nodiscard]] Index cols() const noexcept { return data_.cols(); }
  [[nodiscard]] Index block_count() const noexcept { return blocks_.count(); }
  [[nodiscard]] const BlockSpec& blocks() const noexcept { return blocks_; }
  [[nodiscard]] const Matrix& data() const noexcept { return data_; }

  /// Columns of block j (0-based).
  [[nodiscard]] auto block(Index j) const {
    return data_.middleCols(blocks_.offset(j), blocks_.dim(j));
  }

 private:
  friend Sample make_sample(Matrix data, BlockSpec blocks);
  Sample(Matrix data, BlockSpec blocks) : data_(std::move(data)), blocks_(std::move(blocks)) {}

  Matrix data_;
  BlockSpec blocks_;
};

/// Validates shape, finiteness and n >= 2.
Sample make_sample(Matrix data, BlockSpec blocks);

/// Builds a new sample whose blocks are super-blocks of the input: group g of
/// the result is the concatenation (in the listed order) of the input blocks
/// groups[g]. Indices are 0-based and may appear at most once overall.
Sample concat_blocks(const Sample& sample, std::span<const std::vector<Index>> groups);
Sample concat_blocks(const Sample& sample, std::initializer_list<std::vector<Index>> groups);

/// Layout (X_c, X_{c+}): block c against the concatenation of the blocks to its right.
Sample one_vs_right(const Sample& sample, Index c);
/// Layout (X_c, X_{-c}): block c against the concatenation of all other blocks.
Sample one_vs_rest(const Sample& sample, Index c);

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.derived().array().isFinite().all();
}

/// Entry (k, l) is |x_k - x_l|^2 for rows x of `points`.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> squared_pairwise_distances(
    const Eigen::MatrixBase<Derived>& points) {
  using Scalar = typename Derived::Scalar;
  if (!all_finite(points)) throw Error(Errc::NonFiniteEntry, "pairwise distances of non-finite points");
  const Index m = points.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(m, m);
  for (Index l = 0; l < m; ++l) {
    out(l, l) = Scalar(0);
    for (Index k = l + 1; k < m; ++k) {
      const Scalar v = (points.row(k) - points.row(l)).squaredNorm();
      out(k, l) = v;
      out(l, k) = v;
    }
  }
  return out;
}

/// Euclidean distance matrix of the rows of `points`: symmetric, zero diagonal.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> pairwise_distances(
    const Eigen::MatrixBase<Derived>& points) {
  return squared_pairwise_distances(points).cwiseSqrt();
}

/// Surrogate sample for the product of marginals: block j (0-based) of row k is
/// block j of row (k + j) mod n.
Matrix cyclic_shift_proxy(const Sample& sample);

/// Row k of block j is taken from row maps[j][k] of block j of the input.
Sample remap_rows(const Sample& sample, std::span<const std::vector<int>> maps);

}  // namespace mdep
