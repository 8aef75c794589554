#include <catch2/catch_amalgamated.hpp>

#include "homlie/catalog.hpp"

using namespace homlie;

namespace {

Vec vec(std::initializer_list<int> xs) {
  Vec v;
  for (int x : xs) v.push_back(x);
  return v;
}

}  // namespace

TEST_CASE("catalog constructors validate their parameters") {
  CHECK_THROWS_AS(heisenberg(0), precondition_error);
  CHECK_THROWS_AS(example314(1, 1, 0, 5), precondition_error);
  CHECK_THROWS_AS(example314(1, 1, 3, 0), precondition_error);
  CHECK_THROWS_AS(abelian(0), precondition_error);
}

TEST_CASE("heisenberg structure constants") {
  HomLieAlgebra h = heisenberg(Scalar(2, 3));
  CHECK(h.bracket_basis(0, 1) == vec({0, 0, 1}));
  CHECK(h.bracket_basis(0, 2) == Vec(3));
  CHECK(h.bracket_basis(1, 2) == Vec(3));
  Matrix a(3, 3);
  a(0, 0) = Scalar(2, 3);
  a(1, 0) = 1;
  a(1, 1) = Scalar(2, 3);
  a(2, 2) = Scalar(4, 9);
  CHECK(h.alpha() == a);
  CHECK(h.basis_names() == std::vector<std::string>{"e1", "e2", "e3"});
  CHECK(h.validate().accepted());
}

TEST_CASE("example314 structure constants") {
  HomLieAlgebra e = example314(1, 2, 3, 5);
  CHECK(e.bracket_basis(0, 1) == vec({0, 1, 0}));
  CHECK(e.bracket_basis(0, 2) == Vec(3));
  CHECK(e.bracket_basis(1, 2) == Vec(3));
  Matrix a(3, 3);
  a(0, 0) = 1;
  a(1, 0) = 1;
  a(1, 1) = 3;
  a(2, 0) = 2;
  a(2, 2) = 5;
  CHECK(e.alpha() == a);
  CHECK(e.basis_names() == std::vector<std::string>{"x", "y", "z"});
  CHECK(e.validate().accepted());
}

TEST_CASE("abelian and sl2 variants") {
  HomLieAlgebra a = abelian(4);
  CHECK(a.dim() == 4);
  CHECK(a.derived().is_zero());
  CHECK(a.alpha() == Matrix::identity(4));

  HomLieAlgebra s = sl2();
  CHECK(s.bracket_basis(0, 1) == vec({0, 0, 1}));    // [e, f] = h
  CHECK(s.bracket_basis(0, 2) == vec({-2, 0, 0}));   // [e, h] = -2e
  CHECK(s.bracket_basis(1, 2) == vec({0, 2, 0}));    // [f, h] = 2f
  CHECK(s.alpha() == Matrix::identity(3));

  HomLieAlgebra si = sl2_involution();
  Matrix inv(3, 3);
  inv(0, 0) = -1;
  inv(1, 1) = -1;
  inv(2, 2) = 1;
  CHECK(si.alpha() == inv);
  CHECK(si.bracket_basis(0, 1) == s.bracket_basis(0, 1));
  CHECK(si.validate().accepted());
  // the involution squares to the identity
  CHECK(si.alpha() * si.alpha() == Matrix::identity(3));
}

TEST_CASE("laurent polynomial parsing") {
  LaurentPoly p = parse_laurent("1 + 2t^2 - t^-3");
  std::map<long, Scalar> expect{{-3, -1}, {0, 1}, {2, 2}};
  CHECK(p.coefficients() == expect);
  CHECK(p.min_degree() == -3);
  CHECK(p.max_degree() == 2);

  CHECK(parse_laurent("t") == LaurentPoly::monomial(1));
  CHECK(parse_laurent("-3/2 t^5") == LaurentPoly::monomial(5, Scalar(-3, 2)));
  CHECK(parse_laurent("t^2 + 1") == parse_laurent("1 + t^2"));
  CHECK(parse_laurent("3t - t - 2t").is_zero_poly());

  CHECK_THROWS_AS(parse_laurent(""), parse_error);
  CHECK_THROWS_AS(parse_laurent("t^"), parse_error);
  CHECK_THROWS_AS(parse_laurent("x"), parse_error);
  CHECK_THROWS_AS(parse_laurent("0.5t"), parse_error);
  CHECK_THROWS_AS(parse_laurent("1 +"), parse_error);
}

TEST_CASE("laurent polynomial text round trip") {
  for (const char* text : {"1 + 2t^2 - t^-3", "t", "-1/2", "t^-1 - 2", "5t^3"}) {
    LaurentPoly p = parse_laurent(text);
    CHECK(parse_laurent(p.to_text()) == p);
  }
  CHECK(parse_laurent("1 + t^2").to_text() == "1 + t^2");
  CHECK(LaurentPoly::monomial(-3).to_text() == "t^-3");
  CHECK(LaurentPoly().to_text() == "0");
  CHECK(LaurentPoly::monomial(2).shifted(-3) == LaurentPoly::monomial(-1));
}

TEST_CASE("loop algebra bracket") {
  // [h ⊗ 1, e ⊗ t^n] = 2 e ⊗ t^n
  LoopElement h0 = LoopElement::term(2, 0);
  LoopElement e4 = LoopElement::term(0, 4);
  CHECK(loop_bracket(h0, e4) == LoopElement::term(0, 4, 2));

  // [e ⊗ t, e ⊗ t^2] = 0
  CHECK(loop_bracket(LoopElement::term(0, 1), LoopElement::term(0, 2)).is_zero_elem());

  // [e ⊗ t^m, f ⊗ t^n] = h ⊗ t^{m+n}
  CHECK(loop_bracket(LoopElement::term(0, 3), LoopElement::term(1, -5)) ==
        LoopElement::term(2, -2));

  // bilinearity over mixed supports
  LoopElement u = LoopElement::term(0, 1);
  u.add_term(2, 0, 1);  // e⊗t + h⊗1
  LoopElement v = LoopElement::term(1, 2, 3);  // 3 f⊗t^2
  LoopElement expect = LoopElement::term(2, 3, 3);  // 3 h⊗t^3
  expect.add_term(1, 2, -6);                        // -6 f⊗t^2
  CHECK(loop_bracket(u, v) == expect);
  LoopElement neg = LoopElement::term(2, 3, -3);
  neg.add_term(1, 2, 6);
  CHECK(loop_bracket(v, u) == neg);
}

TEST_CASE("loop twist negates e and f and fixes h") {
  LoopElement u = LoopElement::term(0, 2);
  u.add_term(1, -1, 3);
  u.add_term(2, 0, 5);
  LoopElement expect = LoopElement::term(0, 2, -1);
  expect.add_term(1, -1, -3);
  expect.add_term(2, 0, 5);
  CHECK(loop_alpha(u) == expect);
  CHECK(loop_alpha(loop_alpha(u)) == u);
}

TEST_CASE("loop centroid verification on degree windows") {
  CHECK(verify_loop_centroid(0, parse_laurent("1"), 3).confirmed);
  CHECK(verify_loop_centroid(1, parse_laurent("t^2 + 1"), 5).confirmed);
  CHECK(verify_loop_centroid(0, parse_laurent("t^-1 - 2"), 4).confirmed);
  CHECK(verify_loop_centroid(2, parse_laurent("t"), 6).confirmed);

  // widening the window preserves the verdict
  for (long window : {4, 6, 8})
    CHECK(verify_loop_centroid(1, parse_laurent("t^2 + 1"), window).confirmed);
}

TEST_CASE("loop centroid rejects the wrong twist power") {
  // alpha-check^k instead of alpha-check^{k+1} breaks the defining identity
  LoopCentroidResult bad = verify_loop_centroid(0, parse_laurent("t^2 + 1"), 6, 0);
  CHECK_FALSE(bad.confirmed);
  CHECK(bad.failing_pair == "(e*t^-6, f*t^0)");

  // even powers with the same parity still pass
  CHECK(verify_loop_centroid(0, parse_laurent("t"), 4, 3).confirmed);
}

TEST_CASE("loop centroid preconditions") {
  CHECK_THROWS_AS(verify_loop_centroid(0, LaurentPoly(), 4), precondition_error);
  CHECK_THROWS_AS(verify_loop_centroid(0, parse_laurent("t^2 + 1"), 2),
                  precondition_error);
}
