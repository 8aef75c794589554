// homlie: exact solvers for biderivation, centroid, and commuting-map
// spaces of multiplicative Hom-Lie algebras, plus quotient-reduction and
// verification commands.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "homlie/catalog.hpp"
#include "homlie/io.hpp"

namespace {

using namespace homlie;

constexpr int kOk = 0;
constexpr int kFailed = 1;     // validation / hypothesis failure
constexpr int kBadInput = 2;   // malformed input

struct bad_input : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bad_input("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw bad_input(path + ": " + e.what());
  }
  return j;
}

HomLieAlgebra load_algebra(const std::string& path) {
  try {
    return parse_algebra(load_json(path));
  } catch (const parse_error& e) {
    throw bad_input(std::string(e.what()));
  }
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

// "2·e1 - 1/2·e3" style rendering of a coefficient vector.
std::string term_string(const Vec& v, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (is_zero(v[i])) continue;
    Scalar c = v[i];
    bool neg = c < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    Scalar a = neg ? Scalar(-c) : c;
    if (a != 1) out += to_string(a) + "·";
    out += names[i];
  }
  return out.empty() ? "0" : out;
}

std::vector<std::string> module_names(const Representation& v,
                                      const HomLieAlgebra& L, bool is_adjoint) {
  if (is_adjoint && v.dim_v() == L.dim()) return L.basis_names();
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.dim_v(); ++i)
    out.push_back("v" + std::to_string(i + 1));
  return out;
}

// General element of a bilinear space, one line per pair, with one free
// parameter k_b per basis map.
void print_bilinear_space(const MapSpace& s, const HomLieAlgebra& L,
                          const std::vector<std::string>& vnames) {
  std::cout << "dim " << s.dim() << "\n";
  if (s.dim() == 0) return;
  std::vector<BilinearMap> basis;
  for (std::size_t b = 0; b < s.dim(); ++b) basis.push_back(s.bilinear_basis(b));
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t j = i + 1; j < s.n; ++j) {
      std::string rhs;
      for (std::size_t b = 0; b < basis.size(); ++b) {
        Vec v = basis[b].value(i, j);
        if (is_zero(v)) continue;
        std::string part = term_string(v, vnames);
        if (!rhs.empty()) rhs += " + ";
        std::string k = "k" + std::to_string(b + 1);
        bool simple = part.find(' ') == std::string::npos && part[0] != '-';
        rhs += simple ? k + "·" + part : k + "·(" + part + ")";
      }
      if (rhs.empty()) continue;
      std::cout << "δ(" << L.basis_names()[i] << "," << L.basis_names()[j]
                << ") = " << rhs << "\n";
    }
}

void print_linear_space(const MapSpace& s, const HomLieAlgebra& L,
                        const std::vector<std::string>& vnames) {
  std::cout << "dim " << s.dim() << "\n";
  if (s.dim() == 0) return;
  std::vector<LinearMapLV> basis;
  for (std::size_t b = 0; b < s.dim(); ++b) basis.push_back(s.linear_basis(b));
  for (std::size_t i = 0; i < s.n; ++i) {
    std::string rhs;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      Vec v = basis[b].m.col(i);
      if (is_zero(v)) continue;
      std::string part = term_string(v, vnames);
      if (!rhs.empty()) rhs += " + ";
      std::string k = "k" + std::to_string(b + 1);
      bool simple = part.find(' ') == std::string::npos && part[0] != '-';
      rhs += simple ? k + "·" + part : k + "·(" + part + ")";
    }
    if (rhs.empty()) continue;
    std::cout << "f(" << L.basis_names()[i] << ") = " << rhs << "\n";
  }
}

// Independent re-check of the defining equations, pointwise on basis
// tuples rather than through the solver's constraint matrix.
bool recheck_bilinear(const BilinearMap& delta, const HomLieAlgebra& L,
                      const Representation& V, bool skew_family) {
  std::size_t n = L.dim();
  if (skew_family && !delta.is_skew()) return false;
  const Matrix& alpha = L.alpha();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (V.beta().apply(delta.value(i, j)) !=
          delta.eval(alpha.col(i), alpha.col(j)))
        return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec lhs = delta.eval(L.bracket_basis(i, j), alpha.col(k));
        Vec rhs = sub(V.action(alpha.col(i)).apply(delta.value(j, k)),
                      V.action(alpha.col(j)).apply(delta.value(i, k)));
        if (lhs != rhs) return false;
        if (!skew_family) {
          Vec l2 = delta.eval(alpha.col(k), L.bracket_basis(i, j));
          Vec r2 = sub(V.action(alpha.col(i)).apply(delta.value(k, j)),
                       V.action(alpha.col(j)).apply(delta.value(k, i)));
          if (l2 != r2) return false;
        }
      }
  return true;
}

bool recheck_linear(const LinearMapLV& f, const HomLieAlgebra& L,
                    const Representation& V, bool centroid) {
  std::size_t n = L.dim();
  const Matrix& alpha = L.alpha();
  if (V.beta() * f.m != f.m * alpha) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (centroid) {
        if (f.eval(L.bracket_basis(i, j)) !=
            V.action(alpha.col(i)).apply(f.m.col(j)))
          return false;
      } else {
        Vec s = add(V.action(alpha.col(i)).apply(f.m.col(j)),
                    V.action(alpha.col(j)).apply(f.m.col(i)));
        if (!is_zero(s)) return false;
      }
    }
  return true;
}

bool recheck_space(const MapSpace& s, const HomLieAlgebra& L,
                   const Representation& V) {
  for (std::size_t b = 0; b < s.dim(); ++b) {
    bool ok = kind_is_bilinear(s.kind)
                  ? recheck_bilinear(s.bilinear_basis(b), L, V, kind_is_skew(s.kind))
                  : recheck_linear(s.linear_basis(b), L, V,
                                   s.kind == MapKind::Cent);
    if (!ok) return false;
  }
  return true;
}

int run_validate(const std::string& file, bool as_json) {
  HomLieAlgebra L = load_algebra(file);
  ValidationReport rep = L.validate();
  if (as_json) {
    json out;
    out["accepted"] = rep.accepted();
    json hj = json::array();
    for (const auto& [i, j, k, res] : rep.hom_jacobi_failures)
      hj.push_back({{"triple", {i + 1, j + 1, k + 1}},
                    {"residual", io_detail::vec_to(res)}});
    out["hom_jacobi_failures"] = hj;
    json mult = json::array();
    for (const auto& [i, j, res] : rep.multiplicativity_failures)
      mult.push_back(
          {{"pair", {i + 1, j + 1}}, {"residual", io_detail::vec_to(res)}});
    out["multiplicativity_failures"] = mult;
    print_json(out);
  } else if (rep.accepted()) {
    std::cout << "valid multiplicative Hom-Lie algebra (dim " << L.dim() << ")\n";
  } else {
    const auto& names = L.basis_names();
    for (const auto& [i, j, k, res] : rep.hom_jacobi_failures)
      std::cout << "Hom-Jacobi fails on (" << names[i] << "," << names[j] << ","
                << names[k] << "): residual " << term_string(res, names) << "\n";
    for (const auto& [i, j, res] : rep.multiplicativity_failures)
      std::cout << "multiplicativity fails on (" << names[i] << "," << names[j]
                << "): residual " << term_string(res, names) << "\n";
  }
  return rep.accepted() ? kOk : kFailed;
}

int run_info(const std::string& file, bool as_json) {
  HomLieAlgebra L = load_algebra(file);
  ValidationReport rep = L.validate();
  Subspace z = L.center(), der = L.derived();
  if (as_json) {
    json out;
    out["dim"] = L.dim();
    out["basis"] = L.basis_names();
    out["accepted"] = rep.accepted();
    out["alpha_rank"] = rank(L.alpha());
    out["alpha_invertible"] = rep.alpha_invertible;
    out["center_dim"] = z.dim();
    out["derived_dim"] = der.dim();
    out["perfect"] = der.is_full();
    out["centerless"] = z.is_zero();
    print_json(out);
  } else {
    std::cout << "dim " << L.dim() << ", "
              << (rep.accepted() ? "valid" : "INVALID") << "\n";
    std::cout << "alpha rank " << rank(L.alpha())
              << (rep.alpha_invertible ? " (invertible)" : " (singular)") << "\n";
    std::cout << "center dim " << z.dim() << ", derived dim " << der.dim() << "\n";
    std::cout << (der.is_full() ? "perfect" : "not perfect") << ", "
              << (z.is_zero() ? "centerless" : "has center") << "\n";
  }
  return rep.accepted() ? kOk : kFailed;
}

Representation pick_module(const HomLieAlgebra& L, long k,
                           const std::string& module_file, bool& is_adjoint) {
  if (!module_file.empty()) {
    is_adjoint = false;
    try {
      Representation v = parse_module(load_json(module_file), L);
      auto rep = v.validate();
      if (!rep.accepted()) throw bad_input("module file fails validation");
      return v;
    } catch (const parse_error& e) {
      throw bad_input(std::string(e.what()));
    }
  }
  is_adjoint = true;
  return adjoint(L, k);
}

int run_solve(const std::string& kind, const std::string& file, long k,
              const std::string& module_file, bool central, bool special,
              bool as_json) {
  HomLieAlgebra L = load_algebra(file);
  if (!L.accepted()) throw bad_input("algebra file fails validation");
  bool is_adjoint = false;
  Representation V = pick_module(L, k, module_file, is_adjoint);

  MapSpace s;
  if (kind == "bider-s")
    s = solve_bider_s(L, V);
  else if (kind == "bider")
    s = solve_bider(L, V);
  else if (kind == "cent")
    s = solve_cent(L, V);
  else if (kind == "com")
    s = solve_com(L, V);
  else
    throw bad_input("unknown solve kind: " + kind);
  if (central) s = central_subspace(s, L, V);
  if (special) s = special_subspace(s, L, V);

  if (as_json) {
    if (!recheck_space(s, L, V))
      throw internal_error("solution fails independent re-validation");
    print_json(emit_map_space(s));
  } else {
    auto vnames = module_names(V, L, is_adjoint);
    if (kind_is_bilinear(s.kind))
      print_bilinear_space(s, L, vnames);
    else
      print_linear_space(s, L, vnames);
  }
  return kOk;
}

int run_reduce(const std::string& kind, const std::string& file, long k,
               std::size_t max_levels, bool as_json) {
  HomLieAlgebra L = load_algebra(file);
  if (!L.accepted()) throw bad_input("algebra file fails validation");
  ReductionResult res;
  Representation V = adjoint(L, k);
  if (kind == "bider-s")
    res = reduce_bider_s(L, k, max_levels);
  else if (kind == "com")
    res = reduce_com(L, V, max_levels);
  else
    throw bad_input("unknown reduce kind: " + kind);

  if (as_json) {
    json out;
    out["trace"] = emit_trace(res.trace);
    out["space"] = emit_map_space(res.space);
    print_json(out);
  } else {
    for (const auto& step : res.trace) {
      std::cout << "level " << step.level << ": " << step.move << " (dim "
                << step.dim_before << " -> " << step.dim_after << ", kernel "
                << step.kernel_dim << ", lifted " << step.lifted_dim << ")";
      if (!step.note.empty()) std::cout << " " << step.note;
      std::cout << "\n";
    }
    auto vnames = module_names(V, L, true);
    if (kind_is_bilinear(res.space.kind))
      print_bilinear_space(res.space, L, vnames);
    else
      print_linear_space(res.space, L, vnames);
  }
  return kOk;
}

int run_verify(const std::string& which, const std::string& file, long k, long s,
               std::uint64_t seed, bool as_json) {
  HomLieAlgebra L = load_algebra(file);
  if (!L.accepted()) throw bad_input("algebra file fails validation");

  Verdict verdict = Verdict::HypothesesFailed;
  std::string detail;
  json extra;
  if (which == "thm36") {
    Representation V = adjoint(L, k);
    MapSpace space = solve_bider_s(L, V);
    try {
      for (std::size_t b = 0; b < space.dim(); ++b)
        centroid_from_biderivation(space.bilinear_basis(b), L, V);
      verdict = Verdict::Confirmed;
      detail = "every skew biderivation is centroid-induced, dim " +
               std::to_string(space.dim());
    } catch (const precondition_error& e) {
      detail = e.what();
    }
    extra["dim"] = space.dim();
  } else if (which == "thm37") {
    Thm37Result r = verify_thm37(L, k, true, seed);
    verdict = r.verdict;
    detail = r.detail;
    extra["dim"] = r.dim;
  } else if (which == "thm43") {
    Thm43Result r = verify_thm43(L, adjoint(L, k));
    verdict = r.verdict;
    detail = r.detail;
    extra["cent_dim"] = r.cent_dim;
    extra["com_dim"] = r.com_dim;
  } else if (which == "prop47") {
    try {
      Representation V = adjoint(L, k);
      MapSpace com = solve_com(L, V);
      for (std::size_t b = 0; b < com.dim(); ++b)
        decompose_commuting(com.linear_basis(b), L, k);
      verdict = Verdict::Confirmed;
      detail = "every commuting map splits as centroid + central part, dim " +
               std::to_string(com.dim());
      extra["dim"] = com.dim();
    } catch (const precondition_error& e) {
      detail = e.what();
    }
  } else if (which == "schur") {
    SchurResult r = schur_check(L, k, s, seed);
    verdict = r.verdict;
    detail = r.detail;
    extra["dim"] = r.dim;
  } else {
    throw bad_input("unknown verify target: " + which);
  }

  if (as_json) {
    json out;
    out["verdict"] = to_string(verdict);
    out["detail"] = detail;
    for (auto it = extra.begin(); it != extra.end(); ++it) out[it.key()] = *it;
    print_json(out);
  } else {
    std::cout << to_string(verdict) << ": " << detail << "\n";
  }
  return verdict == Verdict::Confirmed ? kOk : kFailed;
}

Scalar param_at(const std::vector<Scalar>& params, std::size_t i,
                const std::string& name) {
  if (i >= params.size())
    throw bad_input("catalog " + name + ": not enough parameters");
  return params[i];
}

int run_catalog(const std::string& sub, const std::string& name,
                const std::string& params_csv, bool as_json) {
  if (sub == "list") {
    std::cout << "heisenberg lambda\n"
              << "example314 a,b,lambda,mu\n"
              << "abelian n\n"
              << "sl2\n"
              << "sl2-involution\n";
    return kOk;
  }
  std::vector<Scalar> params;
  if (!params_csv.empty()) {
    std::stringstream ss(params_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        params.push_back(parse_rational(item));
      } catch (const parse_error& e) {
        throw bad_input(std::string(e.what()));
      }
    }
  }
  HomLieAlgebra L;
  try {
    if (name == "heisenberg")
      L = heisenberg(param_at(params, 0, name));
    else if (name == "example314")
      L = example314(param_at(params, 0, name), param_at(params, 1, name),
                     param_at(params, 2, name), param_at(params, 3, name));
    else if (name == "abelian") {
      Scalar n = param_at(params, 0, name);
      if (n.get_den() != 1 || n < 0) throw bad_input("abelian: n must be a count");
      L = abelian(n.get_num().get_ui());
    } else if (name == "sl2")
      L = sl2();
    else if (name == "sl2-involution")
      L = sl2_involution();
    else
      throw bad_input("unknown catalog algebra: " + name);
  } catch (const precondition_error& e) {
    throw bad_input(std::string(e.what()));
  } catch (const std::invalid_argument& e) {
    throw bad_input(std::string(e.what()));
  }
  (void)as_json;
  print_json(emit_algebra(L));
  return kOk;
}

int run_loop_check(long k, const std::string& phi_text, long window,
                   bool wrong_twist, bool as_json) {
  LaurentPoly phi;
  try {
    phi = parse_laurent(phi_text);
  } catch (const parse_error& e) {
    throw bad_input(std::string(e.what()));
  }
  LoopCentroidResult r;
  try {
    r = wrong_twist ? verify_loop_centroid(k, phi, window, k)
                    : verify_loop_centroid(k, phi, window);
  } catch (const precondition_error& e) {
    throw bad_input(std::string(e.what()));
  }
  if (as_json) {
    json out;
    out["confirmed"] = r.confirmed;
    if (!r.confirmed) out["failing_pair"] = r.failing_pair;
    print_json(out);
  } else if (r.confirmed) {
    std::cout << "confirmed: centroid equations hold on window " << window << "\n";
  } else {
    std::cout << "failed at pair " << r.failing_pair << "\n";
  }
  return r.confirmed ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Hom-Lie algebra map-space calculator"};
  app.require_subcommand(1);

  std::string file, module_file, solve_kind, reduce_kind, verify_which;
  std::string cat_sub, cat_name, cat_params, phi_text;
  long k = 0, s_shift = 0, window = 0;
  std::uint64_t seed = 0;
  std::size_t max_levels = 0;
  bool as_json = false, central = false, special = false, wrong_twist = false;

  auto* validate = app.add_subcommand("validate", "check the algebra axioms");
  validate->add_option("algebra", file)->required();
  validate->add_flag("--json", as_json);

  auto* info = app.add_subcommand("info", "structural summary");
  info->add_option("algebra", file)->required();
  info->add_flag("--json", as_json);

  auto* solve = app.add_subcommand("solve", "compute a canonical map space");
  solve->add_option("kind", solve_kind)
      ->required()
      ->check(CLI::IsMember({"bider", "bider-s", "cent", "com"}));
  solve->add_option("algebra", file)->required();
  solve->add_option("--adjoint", k, "adjoint module twist power");
  solve->add_option("--module-file", module_file);
  solve->add_flag("--central", central);
  solve->add_flag("--special", special);
  solve->add_flag("--json", as_json);

  auto* reduce = app.add_subcommand("reduce", "solve through the quotient tower");
  reduce->add_option("kind", reduce_kind)
      ->required()
      ->check(CLI::IsMember({"bider-s", "com"}));
  reduce->add_option("algebra", file)->required();
  reduce->add_option("--adjoint", k);
  reduce->add_option("--max-levels", max_levels);
  reduce->add_flag("--json", as_json);

  auto* verify = app.add_subcommand("verify", "run a theorem verifier");
  verify->add_option("which", verify_which)
      ->required()
      ->check(CLI::IsMember({"thm36", "thm37", "thm43", "prop47", "schur"}));
  verify->add_option("algebra", file)->required();
  verify->add_option("--adjoint", k);
  verify->add_option("--s", s_shift);
  verify->add_option("--seed", seed);
  verify->add_flag("--json", as_json);

  auto* catalog = app.add_subcommand("catalog", "built-in algebra families");
  catalog->add_option("sub", cat_sub)->required()->check(CLI::IsMember({"list", "emit"}));
  catalog->add_option("name", cat_name);
  catalog->add_option("--params", cat_params, "comma-separated rationals");
  catalog->add_flag("--json", as_json);

  auto* loop = app.add_subcommand("loop-check", "loop-algebra centroid window check");
  loop->add_option("--k", k)->required();
  loop->add_option("--phi", phi_text)->required();
  loop->add_option("--window", window)->required();
  loop->add_flag("--wrong-twist", wrong_twist,
                 "use the k-th twist instead of k+1 (expected to fail)");
  loop->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kBadInput;
  }

  try {
    if (*validate) return run_validate(file, as_json);
    if (*info) return run_info(file, as_json);
    if (*solve)
      return run_solve(solve_kind, file, k, module_file, central, special, as_json);
    if (*reduce) return run_reduce(reduce_kind, file, k, max_levels, as_json);
    if (*verify) return run_verify(verify_which, file, k, s_shift, seed, as_json);
    if (*catalog) {
      if (cat_sub == "emit" && cat_name.empty())
        throw bad_input("catalog emit: missing algebra name");
      return run_catalog(cat_sub, cat_name, cat_params, as_json);
    }
    if (*loop) return run_loop_check(k, phi_text, window, wrong_twist, as_json);
  } catch (const bad_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const precondition_error& e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    return kFailed;
  } catch (const not_an_ideal& e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
