#pragma once

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "homlie/algebra.hpp"
#include "homlie/representation.hpp"

namespace homlie {

/// Heisenberg Hom-Lie algebra: [e1,e2] = e3, alpha(e1) = lambda e1 + e2,
/// alpha(e2) = lambda e2, alpha(e3) = lambda^2 e3.
inline HomLieAlgebra heisenberg(const Scalar& lambda) {
  if (is_zero(lambda)) throw precondition_error("heisenberg: lambda must be nonzero");
  std::vector<Vec> brackets = {
      {0, 0, 1},  // [e1, e2] = e3
      {0, 0, 0},  // [e1, e3]
      {0, 0, 0},  // [e2, e3]
  };
  Matrix alpha(3, 3);
  alpha(0, 0) = lambda;
  alpha(1, 0) = 1;
  alpha(1, 1) = lambda;
  alpha(2, 2) = lambda * lambda;
  return HomLieAlgebra(3, {"e1", "e2", "e3"}, brackets, alpha);
}

/// Three-dimensional algebra with [x,y] = y, [x,z] = [y,z] = 0 and
/// alpha(x) = x + a y + b z, alpha(y) = lambda y, alpha(z) = mu z.
inline HomLieAlgebra example314(const Scalar& a, const Scalar& b, const Scalar& lambda,
                                const Scalar& mu) {
  if (is_zero(lambda) || is_zero(mu))
    throw precondition_error("example314: lambda and mu must be nonzero");
  std::vector<Vec> brackets = {
      {0, 1, 0},  // [x, y] = y
      {0, 0, 0},  // [x, z]
      {0, 0, 0},  // [y, z]
  };
  Matrix alpha(3, 3);
  alpha(0, 0) = 1;
  alpha(1, 0) = a;
  alpha(1, 1) = lambda;
  alpha(2, 0) = b;
  alpha(2, 2) = mu;
  return HomLieAlgebra(3, {"x", "y", "z"}, brackets, alpha);
}

/// Abelian algebra with identity twist.
inline HomLieAlgebra abelian(std::size_t n) {
  if (n == 0) throw precondition_error("abelian: n must be positive");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i + 1));
  return HomLieAlgebra(n, names, std::vector<Vec>(n * (n - 1) / 2, Vec(n)),
                       Matrix::identity(n));
}

// sl2 basis order (e, f, h): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
inline std::vector<Vec> sl2_brackets() {
  return {
      {0, 0, 1},   // [e, f] = h
      {-2, 0, 0},  // [e, h] = -2e
      {0, 2, 0},   // [f, h] = 2f
  };
}

inline HomLieAlgebra sl2() {
  return HomLieAlgebra(3, {"e", "f", "h"}, sl2_brackets(), Matrix::identity(3));
}

/// sl2 with the involution e -> -e, f -> -f, h -> h.
inline HomLieAlgebra sl2_involution() {
  Matrix alpha(3, 3);
  alpha(0, 0) = -1;
  alpha(1, 1) = -1;
  alpha(2, 2) = 1;
  return HomLieAlgebra(3, {"e", "f", "h"}, sl2_brackets(), alpha);
}

/// Laurent polynomial over the rationals; no explicit zero coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const Scalar& c) {
    if (!is_zero(c)) coef_[0] = c;
  }

  static LaurentPoly monomial(long degree, const Scalar& c = 1) {
    LaurentPoly p;
    if (!is_zero(c)) p.coef_[degree] = c;
    return p;
  }

  const std::map<long, Scalar>& coefficients() const { return coef_; }
  bool is_zero_poly() const { return coef_.empty(); }
  long min_degree() const { return coef_.empty() ? 0 : coef_.begin()->first; }
  long max_degree() const { return coef_.empty() ? 0 : coef_.rbegin()->first; }

  void add_term(long degree, const Scalar& c) {
    auto it = coef_.find(degree);
    Scalar s = c;
    if (it != coef_.end()) s += it->second;
    if (is_zero(s))
      coef_.erase(degree);
    else
      coef_[degree] = s;
  }

  LaurentPoly shifted(long by) const {
    LaurentPoly out;
    for (const auto& [deg, c] : coef_) out.coef_[deg + by] = c;
    return out;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coef_ == b.coef_;
  }

  std::string to_text() const;

 private:
  std::map<long, Scalar> coef_;
};

/// Parses "1 + 2t^2 - t^-3" style expressions with rational coefficients.
inline LaurentPoly parse_laurent(const std::string& text) {
  LaurentPoly out;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  skip_ws();
  if (pos == text.size()) throw parse_error("empty Laurent polynomial");
  bool first = true;
  while (pos < text.size()) {
    int sign = 1;
    skip_ws();
    if (!first || text[pos] == '+' || text[pos] == '-') {
      if (pos == text.size() || (text[pos] != '+' && text[pos] != '-'))
        throw parse_error("expected '+' or '-' in Laurent polynomial");
      if (text[pos] == '-') sign = -1;
      ++pos;
      skip_ws();
    }
    first = false;
    // coefficient (optional when the term starts with t)
    Scalar coef = 1;
    std::size_t start = pos;
    while (pos < text.size() &&
           ((text[pos] >= '0' && text[pos] <= '9') || text[pos] == '/'))
      ++pos;
    if (pos > start) coef = parse_rational(text.substr(start, pos - start));
    skip_ws();
    long degree = 0;
    if (pos < text.size() && text[pos] == 't') {
      ++pos;
      degree = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        std::size_t dstart = pos;
        if (pos < text.size() && text[pos] == '-') ++pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == dstart) throw parse_error("missing exponent after '^'");
        degree = std::strtol(text.substr(dstart, pos - dstart).c_str(), nullptr, 10);
      }
    } else if (pos == start) {
      throw parse_error("expected coefficient or 't' in Laurent polynomial");
    }
    if (sign < 0) coef = -coef;
    out.add_term(degree, coef);
    skip_ws();
  }
  return out;
}

inline std::string LaurentPoly::to_text() const {
  if (coef_.empty()) return "0";
  std::string out;
  for (const auto& [deg, c] : coef_) {
    Scalar a = c;
    if (out.empty()) {
      if (sgn(a) < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += sgn(a) < 0 ? " - " : " + ";
      if (sgn(a) < 0) a = -a;
    }
    bool unit = a == 1;
    if (deg == 0) {
      out += to_string(a);
    } else {
      if (!unit) out += to_string(a);
      out += "t";
      if (deg != 1) out += "^" + std::to_string(deg);
    }
  }
  return out;
}

/// Element of sl2 ⊗ F[t, t^{-1}] with finite support: (basis index, degree)
/// -> coefficient. Basis indices follow the sl2 order (e, f, h).
class LoopElement {
 public:
  using Key = std::pair<std::size_t, long>;

  LoopElement() = default;
  static LoopElement term(std::size_t basis, long degree, const Scalar& c = 1) {
    LoopElement x;
    if (!is_zero(c)) x.terms_[{basis, degree}] = c;
    return x;
  }

  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool is_zero_elem() const { return terms_.empty(); }

  void add_term(std::size_t basis, long degree, const Scalar& c) {
    Key key{basis, degree};
    auto it = terms_.find(key);
    Scalar s = c;
    if (it != terms_.end()) s += it->second;
    if (is_zero(s))
      terms_.erase(key);
    else
      terms_[key] = s;
  }

  friend bool operator==(const LoopElement& a, const LoopElement& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::map<Key, Scalar> terms_;
};

/// [x ⊗ t^m, y ⊗ t^n] = [x, y] ⊗ t^{m+n}, bilinear over finite supports.
inline LoopElement loop_bracket(const LoopElement& u, const LoopElement& v) {
  static const HomLieAlgebra base = sl2();
  LoopElement out;
  for (const auto& [ku, cu] : u.terms())
    for (const auto& [kv, cv] : v.terms()) {
      Vec b = base.bracket_basis(ku.first, kv.first);
      Scalar c = cu * cv;
      for (std::size_t a = 0; a < 3; ++a)
        if (!is_zero(b[a])) out.add_term(a, ku.second + kv.second, c * b[a]);
    }
  return out;
}

/// alpha-check ⊗ id on a loop element.
inline LoopElement loop_alpha(const LoopElement& u) {
  LoopElement out;
  for (const auto& [k, c] : u.terms())
    out.add_term(k.first, k.second, k.first == 2 ? c : -c);  // h fixed, e/f negated
  return out;
}

struct LoopCentroidResult {
  bool confirmed = false;
  std::string failing_pair;  // named when a residual is nonzero
};

namespace detail {

// gamma(b ⊗ t^n) = twist(b) ⊗ Phi(t) t^n for a diagonal sl2 twist.
inline LoopElement loop_gamma(const LoopElement& u, const LaurentPoly& phi,
                              const Vec& twist_diag) {
  LoopElement out;
  for (const auto& [k, c] : u.terms())
    for (const auto& [deg, pc] : phi.coefficients())
      out.add_term(k.first, k.second + deg, c * pc * twist_diag[k.first]);
  return out;
}

inline std::string loop_pair_name(std::size_t b1, long m, std::size_t b2, long n) {
  static const char* names[] = {"e", "f", "h"};
  auto one = [&](std::size_t b, long deg) {
    std::string s = names[b];
    s += "*t^" + std::to_string(deg);
    return s;
  };
  return "(" + one(b1, m) + ", " + one(b2, n) + ")";
}

}  // namespace detail

/// Checks that gamma = alpha-check^{k+1} ⊗ (Phi·) is a centroid element of
/// the loop algebra on a bounded degree window: gamma([u,v]) =
/// [alpha^{k+1}(u), gamma(v)] and gamma∘alpha = alpha∘gamma, for all sl2
/// basis pairs and degrees where every term of both sides stays inside the
/// window. The optional twist_power overrides k+1 (used to exhibit the
/// failure of the wrong twist).
inline LoopCentroidResult verify_loop_centroid(long k, const LaurentPoly& phi,
                                               long window, long twist_power_override =
                                                                std::numeric_limits<long>::min()) {
  if (phi.is_zero_poly()) throw precondition_error("verify_loop_centroid: Phi is zero");
  long span = std::max(std::abs(phi.min_degree()), std::abs(phi.max_degree()));
  if (window < span + 1)
    throw precondition_error("verify_loop_centroid: window too small for Phi");

  long gamma_power = twist_power_override == std::numeric_limits<long>::min()
                         ? k + 1
                         : twist_power_override;
  // alpha-check is diagonal (-1, -1, 1); its p-th power likewise
  auto diag_power = [](long p) {
    Scalar s = (p % 2 == 0) ? 1 : -1;
    return Vec{s, s, 1};
  };
  Vec gamma_diag = diag_power(gamma_power);
  Vec ad_diag = diag_power(k + 1);

  LoopCentroidResult res;
  auto in_window = [&](long base_deg) {
    for (const auto& [deg, c] : phi.coefficients())
      if (std::abs(base_deg + deg) > window) return false;
    return true;
  };

  for (std::size_t b1 = 0; b1 < 3; ++b1)
    for (std::size_t b2 = 0; b2 < 3; ++b2)
      for (long m = -window; m <= window; ++m)
        for (long n = -window; n <= window; ++n) {
          if (!in_window(m + n)) continue;
          LoopElement u = LoopElement::term(b1, m);
          LoopElement v = LoopElement::term(b2, n);
          LoopElement lhs =
              detail::loop_gamma(loop_bracket(u, v), phi, gamma_diag);
          LoopElement au;
          for (const auto& [key, c] : u.terms())
            au.add_term(key.first, key.second, c * ad_diag[key.first]);
          LoopElement rhs = loop_bracket(au, detail::loop_gamma(v, phi, gamma_diag));
          if (!(lhs == rhs)) {
            res.failing_pair = detail::loop_pair_name(b1, m, b2, n);
            return res;
          }
        }
  // gamma∘alpha = alpha∘gamma
  for (std::size_t b = 0; b < 3; ++b)
    for (long m = -window; m <= window; ++m) {
      if (!in_window(m)) continue;
      LoopElement u = LoopElement::term(b, m);
      LoopElement lhs = detail::loop_gamma(loop_alpha(u), phi, gamma_diag);
      LoopElement rhs = loop_alpha(detail::loop_gamma(u, phi, gamma_diag));
      if (!(lhs == rhs)) {
        res.failing_pair = detail::loop_pair_name(b, m, b, m);
        return res;
      }
    }
  res.confirmed = true;
  return res;
}

}  // namespace homlie
