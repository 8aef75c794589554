#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "homlie/catalog.hpp"

using namespace homlie;

namespace {

Vec vec(std::initializer_list<int> xs) {
  Vec v;
  for (int x : xs) v.push_back(x);
  return v;
}

// 3-dim algebra with an adjustable [e1,e2] and alpha, for breaking axioms
HomLieAlgebra custom3(Vec b12, Vec b13, Vec b23, Matrix alpha) {
  return HomLieAlgebra(3, {"e1", "e2", "e3"},
                       {std::move(b12), std::move(b13), std::move(b23)},
                       std::move(alpha));
}

}  // namespace

TEST_CASE("bracket is skew and bilinear by construction") {
  HomLieAlgebra L = sl2();
  CHECK(L.bracket_basis(0, 1) == vec({0, 0, 1}));
  CHECK(L.bracket_basis(1, 0) == vec({0, 0, -1}));
  CHECK(L.bracket_basis(1, 1) == vec({0, 0, 0}));

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < 20; ++t) {
    Vec x(3), y(3);
    for (auto& c : x) c = coef(rng);
    for (auto& c : y) c = coef(rng);
    CHECK(L.bracket(x, y) == scaled(L.bracket(y, x), -1));
    CHECK(L.bracket(x, y) == L.ad(x).apply(y));
    CHECK(L.bracket(add(x, y), x) == L.bracket(y, x));
  }
}

TEST_CASE("validation accepts the catalog and rejects perturbations") {
  for (const auto& L : {heisenberg(1), heisenberg(2), heisenberg(Scalar(1, 2)),
                        example314(1, 2, 3, 5), abelian(4), sl2(), sl2_involution()})
    CHECK(L.validate().accepted());

  // alpha = id is multiplicative for any bracket, but [e1,e2]=e1 with
  // [e1,e3]=e2 breaks Hom-Jacobi: cyclic sum on (e1,e2,e3) = [e1,[e2,e3]] +
  // [e2,[e3,e1]] + [e3,[e1,e2]] = 0 - [e2,e2] + [e3,e1] = -e2
  HomLieAlgebra bad_jacobi =
      custom3(vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 0}), Matrix::identity(3));
  auto rep = bad_jacobi.validate();
  REQUIRE(rep.hom_jacobi_failures.size() == 1);
  CHECK(std::get<3>(rep.hom_jacobi_failures[0]) == vec({0, -1, 0}));

  // heisenberg bracket with alpha scaling e3 by 3 instead of lambda^2 = 4
  Matrix alpha(3, 3);
  alpha(0, 0) = 2;
  alpha(1, 0) = 1;
  alpha(1, 1) = 2;
  alpha(2, 2) = 3;
  HomLieAlgebra bad_mult =
      custom3(vec({0, 0, 1}), vec({0, 0, 0}), vec({0, 0, 0}), alpha);
  auto rep2 = bad_mult.validate();
  CHECK(rep2.hom_jacobi_failures.empty());
  REQUIRE(rep2.multiplicativity_failures.size() == 1);
  CHECK(std::get<2>(rep2.multiplicativity_failures[0]) == vec({0, 0, -1}));
}

TEST_CASE("center and derived subalgebra of the catalog") {
  HomLieAlgebra h = heisenberg(2);
  CHECK(h.center() == Subspace::span(3, {vec({0, 0, 1})}));
  CHECK(h.derived() == Subspace::span(3, {vec({0, 0, 1})}));
  CHECK_FALSE(h.is_perfect());
  CHECK_FALSE(h.is_centerless());

  HomLieAlgebra e = example314(1, 2, 3, 5);
  CHECK(e.center() == Subspace::span(3, {vec({0, 0, 1})}));
  CHECK(e.derived() == Subspace::span(3, {vec({0, 1, 0})}));

  for (const auto& L : {sl2(), sl2_involution()}) {
    CHECK(L.is_perfect());
    CHECK(L.is_centerless());
  }
  CHECK(abelian(3).center().is_full());
}

TEST_CASE("annihilator") {
  HomLieAlgebra e = example314(0, 0, 3, 5);
  // Z_L(L') = Fy + Fz since [y, x] != 0 only against x
  Subspace zder = e.annihilator(e.derived());
  CHECK(zder == Subspace::span(3, {vec({0, 1, 0}), vec({0, 0, 1})}));
  CHECK(e.annihilator(Subspace(3)).is_full());
  CHECK(sl2().annihilator(Subspace::full(3)).is_zero());
}

TEST_CASE("ideals and generated ideals") {
  HomLieAlgebra h = heisenberg(1);
  CHECK(h.is_ideal(h.center()));
  CHECK_FALSE(h.is_ideal(Subspace::span(3, {vec({1, 0, 0})})));

  // sl2: every nonzero element generates the whole algebra
  HomLieAlgebra s = sl2();
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(s.generated_ideal(unit_vec(3, i)).is_full());
  CHECK(h.generated_ideal(vec({0, 0, 1})) ==
        Subspace::span(3, {vec({0, 0, 1})}));
}

TEST_CASE("quotient by the center") {
  HomLieAlgebra h = heisenberg(2);
  QuotientData q = quotient(h, h.center());
  CHECK(q.quotient.dim() == 2);
  CHECK(q.complement == std::vector<std::size_t>{0, 1});
  // quotient of heisenberg by its center is abelian with the top-left
  // alpha block
  CHECK(q.quotient.derived().is_zero());
  Matrix expect(2, 2);
  expect(0, 0) = 2;
  expect(1, 0) = 1;
  expect(1, 1) = 2;
  CHECK(q.quotient.alpha() == expect);
  CHECK(q.projection * q.section == Matrix::identity(2));
  CHECK(q.quotient.validate().accepted());
  CHECK(q.quotient.basis_names() == std::vector<std::string>{"e1~", "e2~"});

  CHECK_THROWS_AS(quotient(h, Subspace::span(3, {vec({1, 0, 0})})), not_an_ideal);
}

TEST_CASE("quotient respects bracket and twist") {
  HomLieAlgebra e = example314(1, 2, 3, 5);
  QuotientData q = quotient(e, e.center());
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < 20; ++t) {
    Vec x(3), y(3);
    for (auto& c : x) c = coef(rng);
    for (auto& c : y) c = coef(rng);
    CHECK(q.projection.apply(e.bracket(x, y)) ==
          q.quotient.bracket(q.projection.apply(x), q.projection.apply(y)));
    CHECK(q.projection.apply(e.apply_alpha(x)) ==
          q.quotient.apply_alpha(q.projection.apply(x)));
  }
}

TEST_CASE("simplicity falsifier") {
  CHECK_FALSE(simplicity_falsifier(sl2()).counterexample_found);
  CHECK_FALSE(simplicity_falsifier(sl2_involution()).counterexample_found);

  auto h = simplicity_falsifier(heisenberg(1));
  CHECK(h.counterexample_found);
  CHECK_FALSE(h.abelian);
  CHECK(heisenberg(1).is_ideal(h.witness));

  auto a = simplicity_falsifier(abelian(2));
  CHECK(a.counterexample_found);
  CHECK(a.abelian);
}
