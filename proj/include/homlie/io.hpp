#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "homlie/maps.hpp"
#include "homlie/reduction.hpp"

namespace homlie {

using json = nlohmann::ordered_json;

namespace io_detail {

inline void reject_unknown_fields(const json& obj, const std::set<std::string>& known,
                                  const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key()))
      throw parse_error(where + ": unknown field '" + it.key() + "'");
}

inline Scalar scalar_from(const json& j, const std::string& where) {
  if (!j.is_string()) throw parse_error(where + ": rational must be a string");
  return parse_rational(j.get<std::string>());
}

inline Vec vec_from(const json& j, std::size_t len, const std::string& where) {
  if (!j.is_array() || j.size() != len)
    throw parse_error(where + ": expected a vector of length " + std::to_string(len));
  Vec v(len);
  for (std::size_t i = 0; i < len; ++i) v[i] = scalar_from(j[i], where);
  return v;
}

inline Matrix matrix_from(const json& j, std::size_t rows, std::size_t cols,
                          const std::string& where) {
  if (!j.is_array() || j.size() != rows)
    throw parse_error(where + ": expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Vec r = vec_from(j[i], cols, where + " row " + std::to_string(i + 1));
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = r[c];
  }
  return m;
}

inline json vec_to(const Vec& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(to_string(s));
  return out;
}

inline json matrix_to(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vec_to(m.row(i)));
  return out;
}

}  // namespace io_detail

/// Algebra file format: dim, basis, brackets (1-based i < j, omitted pairs
/// zero), alpha (column j = image of basis j). Unknown fields rejected.
inline HomLieAlgebra parse_algebra(const json& j) {
  using namespace io_detail;
  if (!j.is_object()) throw parse_error("algebra: expected an object");
  reject_unknown_fields(j, {"dim", "basis", "brackets", "alpha"}, "algebra");
  if (!j.contains("dim") || !j["dim"].is_number_unsigned())
    throw parse_error("algebra: missing or invalid 'dim'");
  std::size_t n = j["dim"].get<std::size_t>();
  std::vector<std::string> names;
  if (!j.contains("basis") || !j["basis"].is_array() || j["basis"].size() != n)
    throw parse_error("algebra: 'basis' must list " + std::to_string(n) + " names");
  for (const auto& b : j["basis"]) names.push_back(b.get<std::string>());

  std::vector<Vec> brackets(n * (n - 1) / 2, Vec(n));
  if (j.contains("brackets")) {
    if (!j["brackets"].is_array()) throw parse_error("algebra: 'brackets' must be a list");
    for (const auto& entry : j["brackets"]) {
      reject_unknown_fields(entry, {"i", "j", "value"}, "algebra bracket");
      if (!entry.contains("i") || !entry.contains("j") || !entry.contains("value"))
        throw parse_error("algebra bracket: need fields i, j, value");
      long i = entry["i"].get<long>(), jj = entry["j"].get<long>();
      if (i < 1 || jj < 1 || static_cast<std::size_t>(i) > n ||
          static_cast<std::size_t>(jj) > n)
        throw parse_error("algebra bracket: index out of range");
      if (i >= jj) throw parse_error("algebra bracket: requires i < j");
      std::size_t a = static_cast<std::size_t>(i) - 1,
                  b = static_cast<std::size_t>(jj) - 1;
      brackets[a * n - a * (a + 1) / 2 + (b - a - 1)] =
          vec_from(entry["value"], n, "algebra bracket value");
    }
  }
  if (!j.contains("alpha")) throw parse_error("algebra: missing 'alpha'");
  Matrix alpha = matrix_from(j["alpha"], n, n, "algebra alpha");
  return HomLieAlgebra(n, std::move(names), std::move(brackets), std::move(alpha));
}

inline json emit_algebra(const HomLieAlgebra& L) {
  using namespace io_detail;
  json out;
  out["dim"] = L.dim();
  out["basis"] = L.basis_names();
  json brackets = json::array();
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t jj = i + 1; jj < L.dim(); ++jj) {
      Vec v = L.bracket_basis(i, jj);
      if (is_zero(v)) continue;
      json e;
      e["i"] = i + 1;
      e["j"] = jj + 1;
      e["value"] = vec_to(v);
      brackets.push_back(e);
    }
  out["brackets"] = brackets;
  out["alpha"] = matrix_to(L.alpha());
  return out;
}

/// Module file format: dim_v, rho (one matrix per algebra basis element),
/// beta.
inline Representation parse_module(const json& j, const HomLieAlgebra& L) {
  using namespace io_detail;
  if (!j.is_object()) throw parse_error("module: expected an object");
  reject_unknown_fields(j, {"dim_v", "rho", "beta"}, "module");
  if (!j.contains("dim_v") || !j["dim_v"].is_number_unsigned())
    throw parse_error("module: missing or invalid 'dim_v'");
  std::size_t d = j["dim_v"].get<std::size_t>();
  if (!j.contains("rho") || !j["rho"].is_array() || j["rho"].size() != L.dim())
    throw parse_error("module: 'rho' must list " + std::to_string(L.dim()) +
                      " matrices");
  std::vector<Matrix> rho;
  for (std::size_t i = 0; i < L.dim(); ++i)
    rho.push_back(matrix_from(j["rho"][i], d, d, "module rho " + std::to_string(i + 1)));
  if (!j.contains("beta")) throw parse_error("module: missing 'beta'");
  Matrix beta = matrix_from(j["beta"], d, d, "module beta");
  return Representation(L, d, std::move(rho), std::move(beta));
}

inline json emit_module(const Representation& v) {
  using namespace io_detail;
  json out;
  out["dim_v"] = v.dim_v();
  json rho = json::array();
  for (const auto& m : v.rho()) rho.push_back(matrix_to(m));
  out["rho"] = rho;
  out["beta"] = matrix_to(v.beta());
  return out;
}

inline json emit_bilinear(const BilinearMap& b) {
  json tensor = json::array();
  for (std::size_t a = 0; a < b.d; ++a) {
    json plane = json::array();
    for (std::size_t i = 0; i < b.n; ++i) {
      json row = json::array();
      for (std::size_t jj = 0; jj < b.n; ++jj)
        row.push_back(to_string(b.coef(a, i, jj)));
      plane.push_back(row);
    }
    tensor.push_back(plane);
  }
  return tensor;
}

inline json emit_linear(const LinearMapLV& f) { return io_detail::matrix_to(f.m); }

inline json emit_map_space(const MapSpace& s) {
  json out;
  out["kind"] = to_string(s.kind);
  out["dim"] = s.dim();
  json basis = json::array();
  for (std::size_t b = 0; b < s.dim(); ++b) {
    if (kind_is_bilinear(s.kind))
      basis.push_back(emit_bilinear(s.bilinear_basis(b)));
    else
      basis.push_back(emit_linear(s.linear_basis(b)));
  }
  out["basis"] = basis;
  return out;
}

inline json emit_trace(const std::vector<ReductionStep>& trace) {
  json out = json::array();
  for (const auto& step : trace) {
    json e;
    e["level"] = step.level;
    e["move"] = step.move;
    e["dims"] = {step.dim_before, step.dim_after};
    e["kernel_dim"] = step.kernel_dim;
    e["lifted_dim"] = step.lifted_dim;
    if (!step.note.empty()) e["note"] = step.note;
    out.push_back(e);
  }
  return out;
}

}  // namespace homlie
