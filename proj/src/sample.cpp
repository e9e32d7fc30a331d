#include "mdep/sample.hpp"

#include <algorithm>
#include <string>

namespace mdep {

BlockSpec::BlockSpec(std::vector<Index> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(Errc::InvalidArgument, "block spec needs at least one block");
  offsets_.reserve(dims_.size());
  for (Index w : dims_) {
    if (w < 1) throw Error(Errc::InvalidArgument, "block widths must be positive");
    offsets_.push_back(total_);
    total_ += w;
  }
}

BlockSpec uniform_blocks(Index d, Index q) {
  return BlockSpec(std::vector<Index>(static_cast<std::size_t>(d), q));
}

Sample make_sample(Matrix data, BlockSpec blocks) {
  if (blocks.count() == 0) throw Error(Errc::InvalidArgument, "empty block spec");
  if (data.cols() != blocks.total()) {
    throw Error(Errc::DimensionMismatch, "matrix has " + std::to_string(data.cols()) +
                                             " columns but blocks sum to " +
                                             std::to_string(blocks.total()));
  }
  if (!all_finite(data)) throw Error(Errc::NonFiniteEntry, "sample contains NaN or infinity");
  if (data.rows() < 2) throw Error(Errc::TooFewRows, "need at least 2 rows");
  return Sample(std::move(data), std::move(blocks));
}

Sample concat_blocks(const Sample& sample, std::span<const std::vector<Index>> groups) {
  const Index d = sample.block_count();
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  std::vector<Index> dims;
  Index width = 0;
  for (const auto& group : groups) {
    if (group.empty()) throw Error(Errc::InvalidArgument, "empty block group");
    Index w = 0;
    for (Index j : group) {
      if (j < 0 || j >= d) throw Error(Errc::IndexOutOfRange, "block index " + std::to_string(j));
      if (seen[static_cast<std::size_t>(j)]) {
        throw Error(Errc::DuplicateIndex, "block index " + std::to_string(j) + " repeated");
      }
      seen[static_cast<std::size_t>(j)] = true;
      w += sample.blocks().dim(j);
    }
    dims.push_back(w);
    width += w;
  }
  Matrix out(sample.rows(), width);
  Index col = 0;
  for (const auto& group : groups) {
    for (Index j : group) {
      out.middleCols(col, sample.blocks().dim(j)) = sample.block(j);
      col += sample.blocks().dim(j);
    }
  }
  return make_sample(std::move(out), BlockSpec(std::move(dims)));
}

Sample concat_blocks(const Sample& sample, std::initializer_list<std::vector<Index>> groups) {
  std::vector<std::vector<Index>> g(groups);
  return concat_blocks(sample, std::span<const std::vector<Index>>(g));
}

Sample one_vs_right(const Sample& sample, Index c) {
  const Index d = sample.block_count();
  if (c < 0 || c + 1 >= d) throw Error(Errc::IndexOutOfRange, "no blocks to the right of " + std::to_string(c));
  std::vector<Index> right;
  for (Index j = c + 1; j < d; ++j) right.push_back(j);
  return concat_blocks(sample, {std::vector<Index>{c}, right});
}

Sample one_vs_rest(const Sample& sample, Index c) {
  const Index d = sample.block_count();
  if (c < 0 || c >= d || d < 2) throw Error(Errc::IndexOutOfRange, "block " + std::to_string(c));
  std::vector<Index> rest;
  for (Index j = 0; j < d; ++j) {
    if (j != c) rest.push_back(j);
  }
  return concat_blocks(sample, {std::vector<Index>{c}, rest});
}

Matrix cyclic_shift_proxy(const Sample& sample) {
  const Index n = sample.rows();
  Matrix out(n, sample.cols());
  for (Index j = 0; j < sample.block_count(); ++j) {
    const Index off = sample.blocks().offset(j);
    const Index w = sample.blocks().dim(j);
    for (Index k = 0; k < n; ++k) {
      out.block(k, off, 1, w) = sample.data().block((k + j) % n, off, 1, w);
    }
  }
  return out;
}

Sample remap_rows(const Sample& sample, std::span<const std::vector<int>> maps) {
  if (static_cast<Index>(maps.size()) != sample.block_count()) {
    throw Error(Errc::DimensionMismatch, "one row map per block required");
  }
  const Index n = sample.rows();
  Matrix out(n, sample.cols());
  for (Index j = 0; j < sample.block_count(); ++j) {
    const auto& map = maps[static_cast<std::size_t>(j)];
    if (static_cast<Index>(map.size()) != n) throw Error(Errc::DimensionMismatch, "row map length");
    const Index off = sample.blocks().offset(j);
    const Index w = sample.blocks().dim(j);
    for (Index k = 0; k < n; ++k) {
      out.block(k, off, 1, w) = sample.data().block(map[static_cast<std::size_t>(k)], off, 1, w);
    }
  }
  return make_sample(std::move(out), sample.blocks());
}

}  // namespace mdep
