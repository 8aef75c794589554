#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "homlie/linalg.hpp"

using namespace homlie;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<Vec> vs;
  std::size_t cols = 0;
  for (auto& r : rows) {
    Vec v;
    for (int x : r) v.push_back(x);
    cols = v.size();
    vs.push_back(v);
  }
  return Matrix::from_rows(vs, cols);
}

Vec vec(std::initializer_list<int> xs) {
  Vec v;
  for (int x : xs) v.push_back(x);
  return v;
}

}  // namespace

TEST_CASE("rational parsing is strict") {
  CHECK(parse_rational("3/4") == Scalar(3, 4));
  CHECK(parse_rational("-2") == Scalar(-2));
  CHECK(parse_rational("6/4") == Scalar(3, 2));  // canonicalized
  CHECK(parse_rational("0") == 0);
  CHECK_THROWS_AS(parse_rational("0.5"), parse_error);
  CHECK_THROWS_AS(parse_rational("1/0"), parse_error);
  CHECK_THROWS_AS(parse_rational(""), parse_error);
  CHECK_THROWS_AS(parse_rational("x"), parse_error);
  CHECK_THROWS_AS(parse_rational("1/ 2"), parse_error);
}

TEST_CASE("rational serialization is p/q") {
  CHECK(to_string(Scalar(3, 4)) == "3/4");
  CHECK(to_string(Scalar(-1, 2)) == "-1/2");
  CHECK(to_string(Scalar(5)) == "5");
  CHECK(to_string(parse_rational("-10/4")) == "-5/2");
}

TEST_CASE("matrix arithmetic") {
  Matrix a = mat({{1, 2}, {3, 4}});
  Matrix b = mat({{0, 1}, {1, 0}});
  CHECK(a * b == mat({{2, 1}, {4, 3}}));
  CHECK(a + b == mat({{1, 3}, {4, 4}}));
  CHECK(a - b == mat({{1, 1}, {2, 4}}));
  CHECK(a.transposed() == mat({{1, 3}, {2, 4}}));
  CHECK(a.apply(vec({1, 1})) == vec({3, 7}));
  CHECK(Matrix::identity(2) * a == a);
  CHECK_THROWS_AS(a.apply(vec({1, 2, 3})), dim_error);
}

TEST_CASE("rref canonical form") {
  // oracle worked by hand: rows reduce to leading-one echelon form
  Matrix m = mat({{2, 4, 6}, {1, 2, 4}, {0, 0, 1}});
  auto [red, pivots] = rref(m);
  CHECK(pivots == std::vector<std::size_t>{0, 2});
  CHECK(red.row(0) == vec({1, 2, 0}));
  CHECK(red.row(1) == vec({0, 0, 1}));
  CHECK(red.row(2) == vec({0, 0, 0}));
  CHECK(rank(m) == 2);

  // idempotence
  auto [red2, pivots2] = rref(red);
  CHECK(red2 == red);
  CHECK(pivots2 == pivots);
}

TEST_CASE("solve zeroes free variables") {
  Matrix m = mat({{1, 2, 0}, {0, 0, 1}});
  auto x = solve(m, vec({5, 7}));
  REQUIRE(x);
  CHECK(*x == vec({5, 0, 7}));  // x2 free, zeroed

  auto none = solve(mat({{1, 1}, {1, 1}}), vec({1, 2}));
  CHECK_FALSE(none.has_value());
}

TEST_CASE("subspace canonicalization is representation independent") {
  auto s1 = Subspace::span(3, {vec({1, 1, 0}), vec({0, 0, 1})});
  auto s2 = Subspace::span(3, {vec({2, 2, 2}), vec({0, 0, -5}), vec({1, 1, 3})});
  CHECK(s1 == s2);
  CHECK(s1.dim() == 2);
  CHECK(s1.contains(vec({3, 3, -1})));
  CHECK_FALSE(s1.contains(vec({1, 0, 0})));
}

TEST_CASE("subspace coordinates round trip") {
  auto s = Subspace::span(3, {vec({1, 0, 2}), vec({0, 1, -1})});
  Vec v = vec({3, 4, 2});
  REQUIRE(s.contains(v));
  CHECK(s.from_coordinates(s.coordinates(v)) == v);
  CHECK_THROWS_AS(s.coordinates(vec({0, 0, 1})), dim_error);
}

TEST_CASE("nullspace") {
  // x + y + z = 0 in F^3: dimension 2, canonical basis
  Subspace n = nullspace(mat({{1, 1, 1}}));
  CHECK(n.dim() == 2);
  CHECK(n.contains(vec({1, -1, 0})));
  CHECK(n.contains(vec({0, 1, -1})));
  CHECK_FALSE(n.contains(vec({1, 0, 0})));

  CHECK(nullspace(Matrix::identity(3)).is_zero());
  CHECK(nullspace(Matrix(0, 3)).is_full());
}

TEST_CASE("sum and intersection of subspaces") {
  auto a = Subspace::span(3, {vec({1, 0, 0}), vec({0, 1, 0})});
  auto b = Subspace::span(3, {vec({0, 1, 0}), vec({0, 0, 1})});
  CHECK(subspace_sum(a, b).is_full());
  auto i = subspace_intersect(a, b);
  CHECK(i.dim() == 1);
  CHECK(i.contains(vec({0, 1, 0})));

  // dim(a) + dim(b) = dim(a+b) + dim(a∩b) on random spans
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    auto rnd = [&](std::size_t count) {
      std::vector<Vec> vs;
      for (std::size_t q = 0; q < count; ++q) {
        Vec v(4);
        for (auto& x : v) x = coef(rng);
        vs.push_back(v);
      }
      return Subspace::span(4, vs);
    };
    Subspace x = rnd(2), y = rnd(3);
    CHECK(x.dim() + y.dim() ==
          subspace_sum(x, y).dim() + subspace_intersect(x, y).dim());
  }
}

TEST_CASE("membership constraints characterize the subspace") {
  auto s = Subspace::span(4, {vec({1, 2, 0, 0}), vec({0, 0, 1, 1})});
  Matrix c = membership_constraints(s);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 30; ++trial) {
    Vec v(4);
    for (auto& x : v) x = coef(rng);
    CHECK(s.contains(v) == is_zero(c.apply(v)));
  }
}

TEST_CASE("inverse and powers") {
  Matrix a = mat({{2, 1}, {1, 1}});
  auto inv = inverse(a);
  REQUIRE(inv);
  CHECK(*inv * a == Matrix::identity(2));
  CHECK_FALSE(inverse(mat({{1, 2}, {2, 4}})).has_value());

  CHECK(*matrix_power(a, 0) == Matrix::identity(2));
  CHECK(*matrix_power(a, 3) == a * a * a);
  CHECK(*matrix_power(a, -2) == *inv * *inv);
  CHECK_FALSE(matrix_power(mat({{0, 0}, {0, 0}}), -1).has_value());
}
