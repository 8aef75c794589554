#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "homlie/algebra.hpp"

namespace homlie {

struct RepValidationReport {
  // i with nonzero residual of beta∘rho(e_i) - rho(alpha(e_i))∘beta
  std::vector<std::pair<std::size_t, Matrix>> intertwine_failures;
  // (i, j), i<j, with nonzero residual of
  // rho([e_i,e_j])∘beta - rho(alpha(e_i))∘rho(e_j) + rho(alpha(e_j))∘rho(e_i)
  std::vector<std::tuple<std::size_t, std::size_t, Matrix>> action_failures;

  bool accepted() const {
    return intertwine_failures.empty() && action_failures.empty();
  }
};

/// Representation (V, rho, beta) of a Hom-Lie algebra.
class Representation {
 public:
  Representation() = default;
  Representation(HomLieAlgebra algebra, std::size_t dim_v, std::vector<Matrix> rho,
                 Matrix beta)
      : algebra_(std::move(algebra)),
        d_(dim_v),
        rho_(std::move(rho)),
        beta_(std::move(beta)) {
    if (rho_.size() != algebra_.dim()) throw dim_error("rho count mismatch");
    for (const auto& m : rho_)
      if (m.rows() != d_ || m.cols() != d_) throw dim_error("rho shape mismatch");
    if (beta_.rows() != d_ || beta_.cols() != d_) throw dim_error("beta shape mismatch");
  }

  const HomLieAlgebra& algebra() const { return algebra_; }
  std::size_t dim_v() const { return d_; }
  const std::vector<Matrix>& rho() const { return rho_; }
  const Matrix& beta() const { return beta_; }

  /// rho(x) for an arbitrary algebra element.
  Matrix action(const Vec& x) const {
    if (x.size() != algebra_.dim()) throw dim_error("action: length mismatch");
    Matrix m(d_, d_);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!is_zero(x[i])) m = m + rho_[i].scaled(x[i]);
    return m;
  }

  RepValidationReport validate() const {
    RepValidationReport rep;
    std::size_t n = algebra_.dim();
    for (std::size_t i = 0; i < n; ++i) {
      Matrix res = beta_ * rho_[i] - action(algebra_.alpha().col(i)) * beta_;
      if (!res.is_zero_matrix()) rep.intertwine_failures.emplace_back(i, res);
      for (std::size_t j = i + 1; j < n; ++j) {
        Matrix r = action(algebra_.bracket_basis(i, j)) * beta_ -
                   action(algebra_.alpha().col(i)) * rho_[j] +
                   action(algebra_.alpha().col(j)) * rho_[i];
        if (!r.is_zero_matrix()) rep.action_failures.emplace_back(i, j, r);
      }
    }
    return rep;
  }

  bool accepted() const { return validate().accepted(); }

  /// Z_V(S): vectors killed by the action of every element of S.
  Subspace annihilated(const Subspace& s) const {
    if (s.ambient_dim() != algebra_.dim()) throw dim_error("annihilated: ambient mismatch");
    if (s.is_zero()) return Subspace::full(d_);
    Matrix stacked(s.dim() * d_, d_);
    for (std::size_t b = 0; b < s.dim(); ++b) {
      Matrix m = action(s.basis()[b]);
      for (std::size_t r = 0; r < d_; ++r)
        for (std::size_t c = 0; c < d_; ++c) stacked(b * d_ + r, c) = m(r, c);
    }
    return nullspace(stacked);
  }

  bool is_submodule(const Subspace& w) const {
    if (w.ambient_dim() != d_) throw dim_error("is_submodule: ambient mismatch");
    for (const auto& v : w.basis()) {
      if (!w.contains(beta_.apply(v))) return false;
      for (const auto& r : rho_)
        if (!w.contains(r.apply(v))) return false;
    }
    return true;
  }

 private:
  HomLieAlgebra algebra_;
  std::size_t d_ = 0;
  std::vector<Matrix> rho_;
  Matrix beta_;
};

struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The alpha^k-adjoint module (L, ad_k, alpha). Negative k requires alpha
/// invertible.
inline Representation adjoint(const HomLieAlgebra& L, long k) {
  auto ak = matrix_power(L.alpha(), k);
  if (!ak) throw precondition_error("adjoint: negative k with singular alpha");
  std::vector<Matrix> rho;
  for (std::size_t i = 0; i < L.dim(); ++i) rho.push_back(L.ad(ak->col(i)));
  return Representation(L, L.dim(), std::move(rho), L.alpha());
}

/// (V, rho∘alpha^k, beta) for k >= 0.
inline Representation twist_rep(const Representation& v, std::size_t k) {
  auto ak = matrix_power(v.algebra().alpha(), static_cast<long>(k));
  std::vector<Matrix> rho;
  for (std::size_t i = 0; i < v.algebra().dim(); ++i)
    rho.push_back(v.action(ak->col(i)));
  return Representation(v.algebra(), v.dim_v(), std::move(rho), v.beta());
}

struct ModuleQuotient {
  Representation quotient;
  Matrix projection;
  Matrix section;
  std::vector<std::size_t> complement;
};

/// Quotient module V/W, same non-pivot-complement convention as the algebra
/// quotient.
inline ModuleQuotient quotient_module(const Representation& v, const Subspace& w) {
  if (!v.is_submodule(w)) throw not_an_ideal("quotient_module: not a submodule");
  std::size_t d = v.dim_v();
  std::vector<bool> is_pivot(d, false);
  for (auto p : w.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> comp;
  for (std::size_t j = 0; j < d; ++j)
    if (!is_pivot[j]) comp.push_back(j);
  std::size_t m = comp.size();

  auto project = [&](Vec x) {
    for (std::size_t i = 0; i < w.dim(); ++i) {
      const Scalar& c = x[w.pivots()[i]];
      if (is_zero(c)) continue;
      Scalar f = c;
      for (std::size_t j = 0; j < d; ++j) x[j] -= f * w.basis()[i][j];
    }
    Vec out(m);
    for (std::size_t q = 0; q < m; ++q) out[q] = x[comp[q]];
    return out;
  };

  Matrix proj(m, d), sect(d, m);
  for (std::size_t j = 0; j < d; ++j) {
    Vec col = project(unit_vec(d, j));
    for (std::size_t q = 0; q < m; ++q) proj(q, j) = col[q];
  }
  for (std::size_t q = 0; q < m; ++q) sect(comp[q], q) = 1;

  std::vector<Matrix> rho;
  for (const auto& r : v.rho()) rho.push_back(proj * r * sect);
  Matrix beta_bar = proj * v.beta() * sect;
  return ModuleQuotient{
      Representation(v.algebra(), m, std::move(rho), std::move(beta_bar)), proj, sect,
      comp};
}

/// Canonical basis of module homomorphisms f : V1 -> V2, i.e. matrices with
/// beta2∘f = f∘beta1 and f∘rho1(e_i) = rho2(alpha(e_i))∘f. Unknown f is
/// flattened row-major.
struct ModuleHomSpace {
  std::size_t d1 = 0, d2 = 0;
  std::vector<Matrix> basis;  // canonical order
  Subspace flat;              // the same basis as flattened vectors

  std::size_t dim() const { return basis.size(); }
  bool contains(const Matrix& f) const { return flat.contains(f.entries()); }
};

inline ModuleHomSpace hom_space(const Representation& v1, const Representation& v2) {
  if (!(v1.algebra() == v2.algebra()))
    throw precondition_error("hom_space: different underlying algebras");
  std::size_t d1 = v1.dim_v(), d2 = v2.dim_v();
  std::size_t n = v1.algebra().dim();
  std::size_t unknowns = d1 * d2;
  auto col = [&](std::size_t r, std::size_t c) { return r * d1 + c; };

  std::vector<Vec> all_rows;
  // coefficient of f(a,b) in (left*f*right)(r,c) is left(r,a)*right(b,c)
  auto emit = [&](const Matrix& left1, const Matrix& right1, const Matrix& left2,
                  const Matrix& right2) {
    // rows of left1*f*right1 - left2*f*right2 = 0
    for (std::size_t r = 0; r < d2; ++r)
      for (std::size_t c = 0; c < d1; ++c) {
        Vec row(unknowns);
        for (std::size_t a = 0; a < d2; ++a)
          for (std::size_t b = 0; b < d1; ++b) {
            Scalar coef = left1(r, a) * right1(b, c) - left2(r, a) * right2(b, c);
            if (!is_zero(coef)) row[col(a, b)] += coef;
          }
        if (!is_zero(row)) all_rows.push_back(std::move(row));
      }
  };

  Matrix id1 = Matrix::identity(d1), id2 = Matrix::identity(d2);
  emit(v2.beta(), id1, id2, v1.beta());
  for (std::size_t i = 0; i < n; ++i) {
    Matrix rho2a = v2.action(v1.algebra().alpha().col(i));
    emit(id2, v1.rho()[i], rho2a, id1);
  }

  Subspace sol = nullspace(all_rows.empty() ? Matrix(0, unknowns)
                                            : Matrix::from_rows(all_rows, unknowns));
  ModuleHomSpace out;
  out.d1 = d1;
  out.d2 = d2;
  out.flat = sol;
  for (const auto& vflat : sol.basis()) {
    Matrix f(d2, d1);
    f.entries() = vflat;
    out.basis.push_back(std::move(f));
  }
  return out;
}

enum class Verdict { Confirmed, InconclusiveOverQ, HypothesesFailed };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Confirmed: return "confirmed";
    case Verdict::InconclusiveOverQ: return "inconclusive over Q";
    default: return "hypotheses-failed";
  }
}

struct SchurResult {
  Verdict verdict = Verdict::HypothesesFailed;
  std::size_t dim = 0;
  std::string detail;
};

/// Checks hom_space(ad_k, ad_{k+s}) against span{alpha^{s+1}}. Simplicity is
/// an assertion by the caller; the falsifier only screens for obvious
/// counterexamples.
inline SchurResult schur_check(const HomLieAlgebra& L, long k, long s,
                               std::uint64_t seed = 0) {
  SchurResult res;
  if (rank(L.alpha()) != L.dim()) {
    res.detail = "alpha is singular";
    return res;
  }
  auto simple = simplicity_falsifier(L, 20, seed);
  if (simple.counterexample_found) {
    res.detail = "simplicity falsified: " + simple.summary();
    return res;
  }
  ModuleHomSpace h = hom_space(adjoint(L, k), adjoint(L, k + s));
  res.dim = h.dim();
  Matrix target = *matrix_power(L.alpha(), s + 1);
  if (h.dim() == 1 && h.contains(target)) {
    res.verdict = Verdict::Confirmed;
    res.detail = "hom space = span{alpha^{s+1}}";
  } else {
    res.verdict = Verdict::InconclusiveOverQ;
    res.detail = "hom space dimension " + std::to_string(h.dim()) +
                 "; algebraically-closed hypothesis unavailable over Q";
  }
  return res;
}

}  // namespace homlie
