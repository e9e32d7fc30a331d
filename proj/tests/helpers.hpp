#pragma once

#include <cmath>
#include <random>

#include "mdep/sample.hpp"

namespace testing {

inline bool close(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
}

/// Standard normal (or small-integer when `integers`) sample with the given block widths.
inline mdep::Sample random_sample(std::mt19937_64& rng, mdep::Index n, std::vector<mdep::Index> dims,
                                  bool integers = false) {
  mdep::Index p = 0;
  for (auto w : dims) p += w;
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> small(-3, 3);
  mdep::Matrix m(n, p);
  for (mdep::Index i = 0; i < n; ++i) {
    for (mdep::Index j = 0; j < p; ++j) m(i, j) = integers ? small(rng) : normal(rng);
  }
  return mdep::make_sample(std::move(m), mdep::BlockSpec(std::move(dims)));
}

inline mdep::Sample from_rows(std::initializer_list<std::initializer_list<double>> rows, std::vector<mdep::Index> dims) {
  mdep::Matrix m(static_cast<mdep::Index>(rows.size()), static_cast<mdep::Index>(rows.begin()->size()));
  mdep::Index i = 0;
  for (const auto& r : rows) {
    mdep::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return mdep::make_sample(std::move(m), mdep::BlockSpec(std::move(dims)));
}

}  // namespace testing
