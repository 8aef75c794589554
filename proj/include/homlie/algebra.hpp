#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "homlie/linalg.hpp"

namespace homlie {

struct ValidationReport {
  bool skew_ok = true;  // structural, by construction
  // (i, j, k) triples with their nonzero Hom-Jacobi residuals
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Vec>> hom_jacobi_failures;
  // (i, j) pairs with their nonzero multiplicativity residuals
  std::vector<std::tuple<std::size_t, std::size_t, Vec>> multiplicativity_failures;
  bool alpha_invertible = false;
  bool alpha_surjective = false;

  bool accepted() const {
    return hom_jacobi_failures.empty() && multiplicativity_failures.empty();
  }
};

/// Finite-dimensional multiplicative Hom-Lie algebra (L, [-,-], alpha) in
/// structure-constant form. Brackets are stored for i < j only; [e_j, e_i]
/// and [e_i, e_i] are definitional, so skew-symmetry cannot be violated.
class HomLieAlgebra {
 public:
  HomLieAlgebra() = default;

  /// brackets[pair_index(i,j)] = coordinates of [e_i, e_j], i < j.
  HomLieAlgebra(std::size_t dim, std::vector<std::string> basis_names,
                std::vector<Vec> brackets, Matrix alpha)
      : n_(dim),
        names_(std::move(basis_names)),
        brackets_(std::move(brackets)),
        alpha_(std::move(alpha)) {
    if (names_.size() != n_) throw dim_error("basis name count mismatch");
    if (brackets_.size() != n_ * (n_ - 1) / 2 && !(n_ == 0 && brackets_.empty()))
      throw dim_error("bracket table size mismatch");
    for (const auto& b : brackets_)
      if (b.size() != n_) throw dim_error("bracket value length mismatch");
    if (alpha_.rows() != n_ || alpha_.cols() != n_) throw dim_error("alpha shape mismatch");
  }

  std::size_t dim() const { return n_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  const Matrix& alpha() const { return alpha_; }
  const std::vector<Vec>& bracket_table() const { return brackets_; }

  std::size_t pair_index(std::size_t i, std::size_t j) const {
    // i < j, lexicographic over pairs
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

  Vec bracket_basis(std::size_t i, std::size_t j) const {
    if (i == j) return Vec(n_);
    if (i < j) return brackets_[pair_index(i, j)];
    return scaled(brackets_[pair_index(j, i)], -1);
  }

  Vec bracket(const Vec& x, const Vec& y) const {
    if (x.size() != n_ || y.size() != n_) throw dim_error("bracket: length mismatch");
    Vec out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (is_zero(x[i])) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (j == i || is_zero(y[j])) continue;
        Scalar c = x[i] * y[j];
        Vec b = bracket_basis(i, j);
        for (std::size_t a = 0; a < n_; ++a) out[a] += c * b[a];
      }
    }
    return out;
  }

  /// Matrix of ad(x): y -> [x, y].
  Matrix ad(const Vec& x) const {
    Matrix m(n_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
      Vec col = bracket(x, unit_vec(n_, j));
      for (std::size_t a = 0; a < n_; ++a) m(a, j) = col[a];
    }
    return m;
  }

  Vec apply_alpha(const Vec& x) const { return alpha_.apply(x); }

  ValidationReport validate() const {
    ValidationReport rep;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        Vec lhs = apply_alpha(bracket_basis(i, j));
        Vec rhs = bracket(alpha_.col(i), alpha_.col(j));
        Vec res = sub(lhs, rhs);
        if (!is_zero(res)) rep.multiplicativity_failures.emplace_back(i, j, res);
        for (std::size_t k = j + 1; k < n_; ++k) {
          Vec r = bracket(alpha_.col(i), bracket_basis(j, k));
          r = add(r, bracket(alpha_.col(j), bracket_basis(k, i)));
          r = add(r, bracket(alpha_.col(k), bracket_basis(i, j)));
          if (!is_zero(r)) rep.hom_jacobi_failures.emplace_back(i, j, k, r);
        }
      }
    std::size_t rk = rank(alpha_);
    rep.alpha_surjective = rk == n_;
    rep.alpha_invertible = rk == n_;
    return rep;
  }

  bool accepted() const { return validate().accepted(); }

  /// Z(L) = {z : [z, e_j] = 0 for all j}.
  Subspace center() const {
    Matrix stacked(n_ * n_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
      Matrix m = ad(unit_vec(n_, j));  // [e_j, z]; zero iff [z, e_j] zero
      for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) stacked(j * n_ + r, c) = m(r, c);
    }
    return nullspace(stacked);
  }

  /// L' = span of all [e_i, e_j].
  Subspace derived() const {
    std::vector<Vec> vecs;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) vecs.push_back(bracket_basis(i, j));
    return Subspace::span(n_, vecs);
  }

  bool is_perfect() const { return derived().is_full(); }
  bool is_centerless() const { return center().is_zero(); }

  /// Z_L(S) = {x : [s, x] = 0 for all s in S}.
  Subspace annihilator(const Subspace& s) const {
    if (s.ambient_dim() != n_) throw dim_error("annihilator: ambient mismatch");
    if (s.is_zero()) return Subspace::full(n_);
    Matrix stacked(s.dim() * n_, n_);
    for (std::size_t b = 0; b < s.dim(); ++b) {
      Matrix m = ad(s.basis()[b]);
      for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) stacked(b * n_ + r, c) = m(r, c);
    }
    return nullspace(stacked);
  }

  bool is_ideal(const Subspace& s) const {
    if (s.ambient_dim() != n_) throw dim_error("is_ideal: ambient mismatch");
    for (const auto& v : s.basis()) {
      if (!s.contains(apply_alpha(v))) return false;
      for (std::size_t i = 0; i < n_; ++i)
        if (!s.contains(bracket(unit_vec(n_, i), v))) return false;
    }
    return true;
  }

  /// Smallest subspace containing x, closed under alpha and under
  /// bracketing with all basis elements.
  Subspace generated_ideal(const Vec& x) const {
    if (x.size() != n_) throw dim_error("generated_ideal: length mismatch");
    Subspace s = Subspace::span(n_, {x});
    for (;;) {
      std::vector<Vec> next = s.basis();
      for (const auto& v : s.basis()) {
        next.push_back(apply_alpha(v));
        for (std::size_t i = 0; i < n_; ++i) next.push_back(bracket(unit_vec(n_, i), v));
      }
      Subspace grown = Subspace::span(n_, next);
      if (grown.dim() == s.dim()) return grown;
      s = grown;
    }
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::string> names_;
  std::vector<Vec> brackets_;  // i < j only
  Matrix alpha_;
};

inline bool operator==(const HomLieAlgebra& a, const HomLieAlgebra& b) {
  return a.dim() == b.dim() && a.bracket_table() == b.bracket_table() &&
         a.alpha() == b.alpha();
}

struct QuotientData {
  HomLieAlgebra quotient;
  Matrix projection;  // old-dim -> new-dim
  Matrix section;     // new-dim -> old-dim, right inverse of projection
  std::vector<std::size_t> complement;  // old coordinates surviving into the quotient
};

struct not_an_ideal : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Quotient by an ideal. The complement basis is the set of non-pivot
/// coordinates of the echelonized ideal, so quotient coordinates are
/// deterministic.
inline QuotientData quotient(const HomLieAlgebra& L, const Subspace& ideal) {
  std::size_t n = L.dim();
  if (ideal.ambient_dim() != n) throw dim_error("quotient: ambient mismatch");
  if (!L.is_ideal(ideal)) throw not_an_ideal("quotient: subspace is not an ideal");

  std::vector<bool> is_pivot(n, false);
  for (auto p : ideal.pivots()) is_pivot[p] = true;
  std::vector<std::size_t> comp;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) comp.push_back(j);
  std::size_t m = comp.size();

  // projection: reduce modulo the ideal's echelon rows, read complement coords
  auto project = [&](Vec v) {
    for (std::size_t i = 0; i < ideal.dim(); ++i) {
      const Scalar& c = v[ideal.pivots()[i]];
      if (is_zero(c)) continue;
      Scalar f = c;
      for (std::size_t j = 0; j < n; ++j) v[j] -= f * ideal.basis()[i][j];
    }
    Vec out(m);
    for (std::size_t q = 0; q < m; ++q) out[q] = v[comp[q]];
    return out;
  };

  Matrix proj(m, n), sect(n, m);
  for (std::size_t j = 0; j < n; ++j) {
    Vec col = project(unit_vec(n, j));
    for (std::size_t q = 0; q < m; ++q) proj(q, j) = col[q];
  }
  for (std::size_t q = 0; q < m; ++q) sect(comp[q], q) = 1;

  std::vector<Vec> brackets;
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = p + 1; q < m; ++q)
      brackets.push_back(project(L.bracket(unit_vec(n, comp[p]), unit_vec(n, comp[q]))));
  Matrix alpha_bar(m, m);
  for (std::size_t q = 0; q < m; ++q) {
    Vec col = project(L.apply_alpha(unit_vec(n, comp[q])));
    for (std::size_t p = 0; p < m; ++p) alpha_bar(p, q) = col[p];
  }
  std::vector<std::string> names;
  for (auto c : comp) names.push_back(L.basis_names()[c] + "~");

  return QuotientData{HomLieAlgebra(m, std::move(names), std::move(brackets),
                                    std::move(alpha_bar)),
                      std::move(proj), std::move(sect), std::move(comp)};
}

inline QuotientData identity_quotient(const HomLieAlgebra& L) {
  std::vector<std::size_t> comp(L.dim());
  for (std::size_t i = 0; i < L.dim(); ++i) comp[i] = i;
  return QuotientData{L, Matrix::identity(L.dim()), Matrix::identity(L.dim()), comp};
}

struct SimplicityVerdict {
  bool counterexample_found = false;
  bool abelian = false;
  Subspace witness;  // proper nonzero ideal when counterexample_found
  std::string summary() const {
    if (!counterexample_found) return "no counterexample found";
    return abelian ? "not simple (abelian)" : "not simple (witness ideal)";
  }
};

/// Searches for a witness against simplicity: abelianness, or a proper
/// nonzero generated ideal of a basis vector or of seeded random vectors.
/// A clean pass is explicitly not a proof of simplicity.
inline SimplicityVerdict simplicity_falsifier(const HomLieAlgebra& L,
                                              std::size_t trials = 20,
                                              std::uint64_t seed = 0) {
  SimplicityVerdict v;
  std::size_t n = L.dim();
  if (L.derived().is_zero()) {
    v.counterexample_found = true;
    v.abelian = true;
    v.witness = Subspace(n);
    return v;
  }
  auto try_vec = [&](const Vec& x) {
    if (is_zero(x)) return false;
    Subspace ideal = L.generated_ideal(x);
    if (!ideal.is_zero() && !ideal.is_full()) {
      v.counterexample_found = true;
      v.witness = ideal;
      return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i)
    if (try_vec(unit_vec(n, i))) return v;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (std::size_t t = 0; t < trials; ++t) {
    Vec x(n);
    for (auto& c : x) c = coef(rng);
    if (try_vec(x)) return v;
  }
  return v;
}

}  // namespace homlie
