#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "homlie/rational.hpp"

namespace homlie {

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw dim_error("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Vec row(std::size_t i) const {
    return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  Vec col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Vec apply(const Vec& v) const {
    if (v.size() != cols_) throw dim_error("matrix-vector size mismatch");
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Matrix operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw dim_error("matrix product size mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Scalar& a = (*this)(i, k);
        if (is_zero(a)) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
      }
    return out;
  }

  Matrix operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw dim_error("matrix sum size mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
  }

  Matrix operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw dim_error("matrix diff size mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
    return out;
  }

  Matrix scaled(const Scalar& c) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= c;
    return out;
  }

  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  bool is_zero_matrix() const {
    for (const auto& x : data_)
      if (!is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Row-major flattening.
  const std::vector<Scalar>& entries() const { return data_; }
  std::vector<Scalar>& entries() { return data_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row-echelon form: leading entries 1, pivot columns otherwise
/// zero, pivots strictly increasing. Returns the form and its pivot columns.
inline std::pair<Matrix, std::vector<std::size_t>> rref(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && is_zero(m(sel, c))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) swap(m(r, j), m(sel, j));
    Scalar inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).second.size(); }

/// One particular solution of m·x = b, free variables zeroed after rref.
/// Absent when the system is inconsistent.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw dim_error("solve: rhs length mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto [red, pivots] = rref(std::move(aug));
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = red(i, m.cols());
  return x;
}

/// Canonical (reduced-echelon, increasing pivots) basis of a subspace of
/// F^ambient_dim. The empty basis is the zero subspace.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  /// Canonicalizes an arbitrary spanning set.
  static Subspace span(std::size_t ambient_dim, const std::vector<Vec>& vectors) {
    auto [red, pivots] = rref(Matrix::from_rows(vectors, ambient_dim));
    Subspace s(ambient_dim);
    for (std::size_t i = 0; i < pivots.size(); ++i) s.basis_.push_back(red.row(i));
    s.pivots_ = pivots;
    return s;
  }

  static Subspace full(std::size_t ambient_dim) {
    Subspace s(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) {
      Vec v(ambient_dim);
      v[i] = 1;
      s.basis_.push_back(v);
      s.pivots_.push_back(i);
    }
    return s;
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_zero() const { return basis_.empty(); }
  bool is_full() const { return basis_.size() == ambient_; }

  bool contains(const Vec& v) const {
    if (v.size() != ambient_) throw dim_error("contains: vector length mismatch");
    Vec w = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Scalar& c = w[pivots_[i]];
      if (homlie::is_zero(c)) continue;
      Scalar f = c;
      for (std::size_t j = 0; j < ambient_; ++j) w[j] -= f * basis_[i][j];
    }
    return homlie::is_zero(w);
  }

  bool contains(const Subspace& other) const {
    for (const auto& v : other.basis_)
      if (!contains(v)) return false;
    return true;
  }

  /// Coordinates of v in this basis; requires membership.
  Vec coordinates(const Vec& v) const {
    if (!contains(v)) throw dim_error("coordinates: vector not in subspace");
    Vec c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  Vec from_coordinates(const Vec& c) const {
    if (c.size() != basis_.size()) throw dim_error("from_coordinates: length mismatch");
    Vec v(ambient_);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = 0; j < ambient_; ++j) v[j] += c[i] * basis_[i][j];
    return v;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

/// Canonical basis of {v : m·v = 0}.
inline Subspace nullspace(const Matrix& m) {
  auto [red, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> vecs;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -red(i, f);
    vecs.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), vecs);
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw dim_error("subspace_sum: ambient mismatch");
  std::vector<Vec> vecs = a.basis();
  vecs.insert(vecs.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient_dim(), vecs);
}

/// Rows annihilating s: the canonical basis of {c : c·v = 0 for all v in s}.
/// Over the standard nondegenerate pairing, s = nullspace(annihilating rows),
/// which turns membership in s into linear equations.
inline Matrix membership_constraints(const Subspace& s) {
  Subspace perp = nullspace(Matrix::from_rows(s.basis(), s.ambient_dim()));
  return Matrix::from_rows(perp.basis(), s.ambient_dim());
}

inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw dim_error("subspace_intersect: ambient mismatch");
  Matrix ca = membership_constraints(a);
  Matrix cb = membership_constraints(b);
  Matrix stacked(ca.rows() + cb.rows(), a.ambient_dim());
  for (std::size_t i = 0; i < ca.rows(); ++i)
    for (std::size_t j = 0; j < a.ambient_dim(); ++j) stacked(i, j) = ca(i, j);
  for (std::size_t i = 0; i < cb.rows(); ++i)
    for (std::size_t j = 0; j < a.ambient_dim(); ++j)
      stacked(ca.rows() + i, j) = cb(i, j);
  return nullspace(stacked);
}

/// Exact inverse; absent when singular.
inline std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw dim_error("inverse: not square");
  std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto [red, pivots] = rref(std::move(aug));
  if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = red(i, n + j);
  return inv;
}

/// m^k for integer k; negative k requires invertibility.
inline std::optional<Matrix> matrix_power(const Matrix& m, long k) {
  Matrix base = m;
  if (k < 0) {
    auto inv = inverse(m);
    if (!inv) return std::nullopt;
    base = *inv;
    k = -k;
  }
  Matrix out = Matrix::identity(m.rows());
  for (long i = 0; i < k; ++i) out = out * base;
  return out;
}

inline Vec scaled(const Vec& v, const Scalar& c) {
  Vec out = v;
  for (auto& x : out) x *= c;
  return out;
}

inline Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw dim_error("vector sum size mismatch");
  Vec out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

inline Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw dim_error("vector diff size mismatch");
  Vec out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

inline Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

}  // namespace homlie
