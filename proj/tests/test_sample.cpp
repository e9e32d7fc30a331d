#include "doctest.h"
#include "helpers.hpp"
#include "mdep/geometry.hpp"

using namespace mdep;

TEST_CASE("block spec offsets and validation") {
  const BlockSpec s({2, 3, 1});
  CHECK(s.count() == 3);
  CHECK(s.total() == 6);
  CHECK(s.offset(0) == 0);
  CHECK(s.offset(1) == 2);
  CHECK(s.offset(2) == 5);
  CHECK(uniform_blocks(4, 5).total() == 20);
  CHECK_THROWS_AS(BlockSpec(std::vector<Index>{}), Error);
  CHECK_THROWS_AS(BlockSpec({2, 0}), Error);
}

TEST_CASE("make_sample rejects bad input") {
  Matrix m = Matrix::Zero(3, 4);
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  CHECK(code([&] { make_sample(m, BlockSpec({1, 2})); }) == Errc::DimensionMismatch);
  m(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK(code([&] { make_sample(m, BlockSpec({2, 2})); }) == Errc::NonFiniteEntry);
  CHECK(code([&] { make_sample(Matrix::Zero(1, 2), BlockSpec({1, 1})); }) == Errc::TooFewRows);
}

TEST_CASE("pairwise distances are symmetric with zero diagonal") {
  std::mt19937_64 rng(4);
  const Sample s = testing::random_sample(rng, 7, {3});
  const Matrix d = pairwise_distances(s.data());
  CHECK(d.diagonal().isZero(0.0));
  CHECK((d - d.transpose()).isZero(0.0));
  CHECK(d(2, 5) == doctest::Approx((s.data().row(2) - s.data().row(5)).norm()).epsilon(1e-15));
}

TEST_CASE("cyclic shift proxy") {
  const Sample s = testing::from_rows({{1, 10, 100}, {2, 20, 200}, {3, 30, 300}, {4, 40, 400}}, {1, 1, 1});
  const Matrix y = cyclic_shift_proxy(s);
  // Block j of row k comes from row (k + j) mod n.
  CHECK(y(0, 0) == 1);
  CHECK(y(0, 1) == 20);
  CHECK(y(0, 2) == 300);
  CHECK(y(3, 1) == 10);
  CHECK(y(3, 2) == 200);

  SUBCASE("n applications return the original; block multisets are preserved") {
    Sample cur = s;
    for (int i = 0; i < 4; ++i) {
      Matrix next = cyclic_shift_proxy(cur);
      for (Index j = 0; j < 3; ++j) {
        std::vector<double> a(cur.block(j).data(), cur.block(j).data() + 4);
        std::vector<double> b(next.col(j).data(), next.col(j).data() + 4);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
      }
      cur = make_sample(next, s.blocks());
    }
    CHECK(cur.data() == s.data());
  }
}

TEST_CASE("block regrouping") {
  const Sample s = testing::from_rows({{1, 2, 3, 4}, {5, 6, 7, 8}}, {1, 2, 1});
  const Sample r = one_vs_right(s, 0);
  CHECK(r.blocks().dims() == std::vector<Index>{1, 3});
  CHECK(r.data() == s.data());
  const Sample o = one_vs_rest(s, 1);
  CHECK(o.blocks().dims() == std::vector<Index>{2, 2});
  CHECK(o.data()(0, 0) == 2);
  CHECK(o.data()(0, 2) == 1);
  CHECK(o.data()(0, 3) == 4);
  CHECK_THROWS_AS(one_vs_right(s, 2), Error);
  CHECK_THROWS_AS(concat_blocks(s, {std::vector<Index>{0}, std::vector<Index>{0}}), Error);
  CHECK_THROWS_AS(concat_blocks(s, {std::vector<Index>{3}}), Error);
}

TEST_CASE("remap rows and reindex agree") {
  std::mt19937_64 rng(9);
  const Sample s = testing::random_sample(rng, 6, {2, 1});
  RowMaps maps = identity_maps(6, 2);
  maps[1] = {5, 4, 3, 2, 1, 0};
  CHECK(!is_identity(maps[1]));
  CHECK(is_identity(maps[0]));
  const Sample r = remap_rows(s, maps);
  CHECK(r.block(0) == s.block(0));
  CHECK(r.data()(0, 2) == s.data()(5, 2));
  const BlockGeometry g(s), gr(r);
  CHECK(reindex(g.squared(1), maps[1]).isApprox(gr.squared(1), 1e-15));
}

TEST_CASE("tree_sum matches a plain sum") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i % 7) - 3.0;
  double plain = 0.0;
  for (double x : v) plain += x;
  CHECK(tree_sum(v) == doctest::Approx(plain));
  CHECK(tree_sum(std::span<const double>{}) == 0.0);
}
