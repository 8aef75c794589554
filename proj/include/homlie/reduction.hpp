#pragma once

#include <string>
#include <vector>

#include "homlie/maps.hpp"

namespace homlie {

struct CenterSequence {
  struct Level {
    HomLieAlgebra algebra;
    QuotientData from_previous;  // identity at level 0
  };
  std::vector<Level> levels;
  bool terminated = false;  // last level has zero center
};

/// Iterated quotient by the center until centerless, dimension zero, or
/// max_levels. Requires alpha surjective at every level (so the center is an
/// ideal).
inline CenterSequence center_sequence(const HomLieAlgebra& L,
                                      std::size_t max_levels) {
  CenterSequence seq;
  seq.levels.push_back({L, identity_quotient(L)});
  for (std::size_t r = 0; r < max_levels; ++r) {
    const HomLieAlgebra& cur = seq.levels.back().algebra;
    Subspace z = cur.center();
    if (z.is_zero()) {
      seq.terminated = true;
      return seq;
    }
    if (rank(cur.alpha()) != cur.dim())
      throw precondition_error("center_sequence: alpha not surjective at level " +
                               std::to_string(r));
    QuotientData q = quotient(cur, z);
    HomLieAlgebra next = q.quotient;
    seq.levels.push_back({std::move(next), std::move(q)});
    if (seq.levels.back().algebra.dim() == 0) {
      seq.terminated = true;
      return seq;
    }
  }
  seq.terminated = seq.levels.back().algebra.center().is_zero();
  return seq;
}

namespace detail {

// Linear map flat(Bider_s(L, ad_k)) -> flat(Bider_s(Lbar, ad_k)):
// pushed map evaluated on complement representatives, then projected.
inline Matrix bider_pushdown_matrix(const QuotientData& q, std::size_t n) {
  std::size_t m = q.quotient.dim();
  Matrix p(layout::skew_width(m, m), layout::skew_width(n, n));
  for (std::size_t pb = 0; pb < m; ++pb)
    for (std::size_t qb = pb + 1; qb < m; ++qb) {
      std::size_t cp = q.complement[pb], cq = q.complement[qb];
      for (std::size_t ab = 0; ab < m; ++ab)
        for (std::size_t a = 0; a < n; ++a)
          p(layout::skew_col(m, m, pb, qb, ab), layout::skew_col(n, n, cp, cq, a)) =
              q.projection(ab, a);
    }
  return p;
}

// Linear map flat(Com(L, V)) -> flat(Com(L, Vbar)): composition with the
// module projection.
inline Matrix com_pushdown_matrix(const Matrix& projection, std::size_t n,
                                  std::size_t d) {
  std::size_t db = projection.rows();
  Matrix p(layout::lin_width(n, db), layout::lin_width(n, d));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t ab = 0; ab < db; ++ab)
      for (std::size_t a = 0; a < d; ++a)
        p(i * db + ab, i * d + a) = projection(ab, a);
  return p;
}

inline Matrix stack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw dim_error("stack: column mismatch");
  Matrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) out(top.rows() + i, j) = bottom(i, j);
  return out;
}

// Nullspace of [C 0; P -T] where columns of T span the target space; returns
// the span of the first `width` coordinates of the solutions (the preimage of
// the target span under P, inside nullspace(C)).
inline Subspace preimage_span(const Matrix& constraints, const Matrix& pushdown,
                              const std::vector<Vec>& target_basis) {
  std::size_t width = constraints.cols();
  std::size_t m = target_basis.size();
  Matrix combined(constraints.rows() + pushdown.rows(), width + m);
  for (std::size_t i = 0; i < constraints.rows(); ++i)
    for (std::size_t j = 0; j < width; ++j) combined(i, j) = constraints(i, j);
  for (std::size_t i = 0; i < pushdown.rows(); ++i) {
    for (std::size_t j = 0; j < width; ++j)
      combined(constraints.rows() + i, j) = pushdown(i, j);
    for (std::size_t b = 0; b < m; ++b)
      combined(constraints.rows() + i, width + b) = -target_basis[b][i];
  }
  Subspace ns = nullspace(combined);
  std::vector<Vec> parts;
  for (const auto& v : ns.basis()) parts.emplace_back(v.begin(), v.begin() + width);
  return Subspace::span(width, parts);
}

}  // namespace detail

/// The induced biderivation on a quotient by the center.
inline BilinearMap pushdown_bider(const BilinearMap& delta, const QuotientData& q,
                                  const HomLieAlgebra& L, long k) {
  std::size_t n = L.dim(), m = q.quotient.dim();
  if (delta.n != n || delta.d != n) throw dim_error("pushdown_bider: shape mismatch");
  if (!solve_bider_s(L, adjoint(L, k)).contains(delta))
    throw precondition_error("pushdown_bider: delta not in Bider_s");
  BilinearMap out(m, m);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t r = p + 1; r < m; ++r)
      out.set_skew(p, r,
                   q.projection.apply(delta.value(q.complement[p], q.complement[r])));
  if (!solve_bider_s(q.quotient, adjoint(q.quotient, k)).contains(out))
    throw internal_error("pushdown_bider: pushed map is not a quotient biderivation");
  return out;
}

struct LiftResult {
  bool liftable = false;
  BilinearMap particular;  // valid when liftable
  MapSpace kernel;         // biderivations pushing down to zero
};

/// Solves "delta in Bider_s(L, ad_k) with pushdown(delta) = delta_bar" as a
/// linear system. Emptiness is a valid answer: the pushdown need not be
/// surjective.
inline LiftResult lift_bider(const BilinearMap& delta_bar, const QuotientData& q,
                             const HomLieAlgebra& L, long k) {
  std::size_t n = L.dim();
  Representation V = adjoint(L, k);
  Matrix c = bider_s_constraints(L, V);
  Matrix p = detail::bider_pushdown_matrix(q, n);
  Matrix sys = detail::stack(c, p);
  Vec rhs(sys.rows());
  Vec bar_flat = layout::flatten_skew(delta_bar);
  for (std::size_t i = 0; i < p.rows(); ++i) rhs[c.rows() + i] = bar_flat[i];
  LiftResult res;
  res.kernel.kind = MapKind::BiderS;
  res.kernel.n = n;
  res.kernel.d = n;
  res.kernel.flat = nullspace(sys);
  auto sol = solve(sys, rhs);
  if (sol) {
    res.liftable = true;
    res.particular = layout::unflatten_skew(n, n, *sol);
  }
  return res;
}

struct SubalgebraData {
  HomLieAlgebra sub;
  Subspace embedding;  // canonical basis of the subspace in parent coordinates
};

/// The derived subalgebra L' with its inherited bracket and twist, in the
/// canonical basis of the subspace.
inline SubalgebraData derived_subalgebra(const HomLieAlgebra& L) {
  Subspace d = L.derived();
  std::size_t m = d.dim();
  std::vector<Vec> brackets;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      brackets.push_back(d.coordinates(L.bracket(d.basis()[i], d.basis()[j])));
  Matrix alpha_sub(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    Vec col = d.coordinates(L.apply_alpha(d.basis()[j]));
    for (std::size_t i = 0; i < m; ++i) alpha_sub(i, j) = col[i];
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) names.push_back("d" + std::to_string(i + 1));
  return SubalgebraData{HomLieAlgebra(m, names, brackets, alpha_sub), d};
}

/// Restriction of a skew biderivation of a centerless L (alpha invertible)
/// to L' x L', in the canonical coordinates of L'.
inline BilinearMap restrict_bider(const BilinearMap& delta, const HomLieAlgebra& L,
                                  long k) {
  if (!L.is_centerless()) throw precondition_error("restrict_bider: L has a center");
  if (!inverse(L.alpha())) throw precondition_error("restrict_bider: alpha singular");
  if (!solve_bider_s(L, adjoint(L, k)).contains(delta))
    throw precondition_error("restrict_bider: delta not in Bider_s");
  SubalgebraData sd = derived_subalgebra(L);
  std::size_t m = sd.sub.dim();
  BilinearMap out(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Vec v = delta.eval(sd.embedding.basis()[i], sd.embedding.basis()[j]);
      if (!sd.embedding.contains(v))
        throw internal_error("restrict_bider: restricted value escapes L'");
      out.set_skew(i, j, sd.embedding.coordinates(v));
    }
  if (!solve_bider_s(sd.sub, adjoint(sd.sub, k)).contains(out))
    throw internal_error("restrict_bider: restriction is not a biderivation of L'");
  return out;
}

struct ReductionStep {
  std::size_t level = 0;
  std::string move;  // "quotient-center", "restrict-derived", "terminal", ...
  std::size_t dim_before = 0, dim_after = 0;
  std::size_t kernel_dim = 0, lifted_dim = 0;
  std::string note;
};

struct ReductionResult {
  std::vector<ReductionStep> trace;
  MapSpace space;
};

namespace detail {

inline MapSpace reduce_bider_rec(const HomLieAlgebra& L, long k, std::size_t depth,
                                 std::size_t max_levels,
                                 std::vector<ReductionStep>& trace) {
  std::size_t n = L.dim();
  MapSpace out;
  out.kind = MapKind::BiderS;
  out.n = n;
  out.d = n;
  if (n == 0) {
    out.flat = Subspace(0);
    return out;
  }
  Subspace center = L.center();
  ReductionStep step;
  step.level = depth;
  step.dim_before = n;

  auto fallback = [&](const std::string& why) {
    step.move = "direct-solve";
    step.dim_after = n;
    step.note = why;
    MapSpace direct = solve_bider_s(L, adjoint(L, k));
    step.kernel_dim = direct.dim();
    trace.push_back(step);
    return direct;
  };

  if (!center.is_zero()) {
    if (rank(L.alpha()) != n) return fallback("alpha not surjective; stalled");
    if (depth >= max_levels) return fallback("max levels reached");
    QuotientData q = quotient(L, center);
    step.move = "quotient-center";
    step.dim_after = q.quotient.dim();
    MapSpace quotient_space = reduce_bider_rec(q.quotient, k, depth + 1, max_levels, trace);
    Matrix c = bider_s_constraints(L, adjoint(L, k));
    Matrix p = bider_pushdown_matrix(q, n);
    out.flat = preimage_span(c, p, quotient_space.flat.basis());
    step.kernel_dim = nullspace(stack(c, p)).dim();
    step.lifted_dim = out.flat.dim() - step.kernel_dim;
    trace.push_back(step);
    return out;
  }

  // centerless
  if (!inverse(L.alpha())) return fallback("alpha not invertible at centerless stage");
  Subspace der = L.derived();
  if (der.is_full()) {
    // centroid route: Bider_s = {alpha^{-1} gamma([-,-]) : gamma in Cent}
    step.move = "terminal-centroid";
    step.dim_after = n;
    Representation V = adjoint(L, k);
    MapSpace cent = solve_cent(L, V);
    std::vector<Vec> vecs;
    for (std::size_t b = 0; b < cent.dim(); ++b)
      vecs.push_back(layout::flatten_skew(
          induced_biderivation(cent.linear_basis(b), L, V)));
    out.flat = Subspace::span(layout::skew_width(n, n), vecs);
    step.kernel_dim = 0;
    step.lifted_dim = out.flat.dim();
    trace.push_back(step);
    return out;
  }

  // centerless, not perfect: restrict to the derived subalgebra
  if (depth >= max_levels) return fallback("max levels reached");
  SubalgebraData sd = derived_subalgebra(L);
  std::size_t m = sd.sub.dim();
  step.move = "restrict-derived";
  step.dim_after = m;
  MapSpace sub_space = reduce_bider_rec(sd.sub, k, depth + 1, max_levels, trace);

  // restriction as a linear map: stacked values delta(s_i, s_j) in parent
  // coordinates; target basis embedded the same way
  std::size_t width = layout::skew_width(n, n);
  std::vector<Vec> rrows;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      std::size_t base = new_block(rrows, width, n);
      acc_skew(rrows, base, n, n, 1, nullptr, sd.embedding.basis()[i],
               sd.embedding.basis()[j]);
    }
  Matrix r = rrows.empty() ? Matrix(0, width) : Matrix::from_rows(rrows, width);
  std::vector<Vec> target;
  for (std::size_t b = 0; b < sub_space.dim(); ++b) {
    BilinearMap dp = sub_space.bilinear_basis(b);
    Vec stacked(r.rows());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        Vec val = sd.embedding.from_coordinates(dp.value(i, j));
        for (std::size_t a = 0; a < n; ++a) stacked[pos++] = val[a];
      }
    target.push_back(std::move(stacked));
  }
  Matrix c = bider_s_constraints(L, adjoint(L, k));
  out.flat = preimage_span(c, r, target);
  step.kernel_dim = nullspace(stack(c, r)).dim();
  step.lifted_dim = out.flat.dim() - step.kernel_dim;
  trace.push_back(step);
  return out;
}

}  // namespace detail

/// The quotient/restriction alternation for Bider_s(L, ad_k). The result is
/// checked against the direct solver by the test suite; stalls fall back to
/// the direct solver and are recorded in the trace.
inline ReductionResult reduce_bider_s(const HomLieAlgebra& L, long k,
                                      std::size_t max_levels = 0) {
  if (max_levels == 0) max_levels = L.dim() + 1;
  ReductionResult res;
  res.space = detail::reduce_bider_rec(L, k, 0, max_levels, res.trace);
  return res;
}

struct ModuleSequence {
  struct Level {
    Representation module;
    Matrix projection;  // from the previous level; identity at level 0
  };
  std::vector<Level> levels;
  bool terminated = false;  // last level has Z_V(L') = 0
};

/// Iterated quotient of V by Z_V(L') until zero or max_levels.
inline ModuleSequence com_sequence(const HomLieAlgebra& L, const Representation& V,
                                   std::size_t max_levels) {
  if (rank(L.alpha()) != L.dim())
    throw precondition_error("com_sequence: alpha not surjective");
  ModuleSequence seq;
  seq.levels.push_back({V, Matrix::identity(V.dim_v())});
  Subspace der = L.derived();
  for (std::size_t r = 0; r < max_levels; ++r) {
    const Representation& cur = seq.levels.back().module;
    Subspace z = cur.annihilated(der);
    if (z.is_zero()) {
      seq.terminated = true;
      return seq;
    }
    ModuleQuotient mq = quotient_module(cur, z);
    seq.levels.push_back({mq.quotient, mq.projection});
    if (seq.levels.back().module.dim_v() == 0) {
      seq.terminated = true;
      return seq;
    }
  }
  seq.terminated = seq.levels.back().module.annihilated(der).is_zero();
  return seq;
}

namespace detail {

inline MapSpace reduce_com_rec(const HomLieAlgebra& L, const Representation& V,
                               std::size_t depth, std::size_t max_levels,
                               std::vector<ReductionStep>& trace) {
  std::size_t n = L.dim(), d = V.dim_v();
  MapSpace out;
  out.kind = MapKind::Com;
  out.n = n;
  out.d = d;
  ReductionStep step;
  step.level = depth;
  step.dim_before = d;

  auto fallback = [&](const std::string& why) {
    step.move = "direct-solve";
    step.dim_after = d;
    step.note = why;
    MapSpace direct = solve_com(L, V);
    step.kernel_dim = direct.dim();
    trace.push_back(step);
    return direct;
  };

  if (d == 0) {
    out.flat = Subspace(0);
    return out;
  }
  Subspace z = V.annihilated(L.derived());
  if (z.is_zero()) {
    // terminal level: Com = Cent when beta is invertible
    if (!inverse(V.beta())) return fallback("beta singular at terminal level");
    step.move = "terminal-centroid";
    step.dim_after = d;
    MapSpace cent = solve_cent(L, V);
    out.flat = cent.flat;
    step.lifted_dim = out.flat.dim();
    trace.push_back(step);
    return out;
  }
  if (rank(L.alpha()) != n) return fallback("alpha not surjective; stalled");
  if (depth >= max_levels) return fallback("max levels reached");

  ModuleQuotient mq = quotient_module(V, z);
  step.move = "quotient-module";
  step.dim_after = mq.quotient.dim_v();
  MapSpace quotient_space = reduce_com_rec(L, mq.quotient, depth + 1, max_levels, trace);
  Matrix c = com_constraints(L, V);
  Matrix p = com_pushdown_matrix(mq.projection, n, d);
  out.flat = preimage_span(c, p, quotient_space.flat.basis());
  step.kernel_dim = nullspace(stack(c, p)).dim();
  step.lifted_dim = out.flat.dim() - step.kernel_dim;
  trace.push_back(step);
  return out;
}

}  // namespace detail

/// Assembles Com(L, V) down the annihilator-quotient sequence; the terminal
/// level is solved through the centroid.
inline ReductionResult reduce_com(const HomLieAlgebra& L, const Representation& V,
                                  std::size_t max_levels = 0) {
  if (max_levels == 0) max_levels = V.dim_v() + 1;
  ReductionResult res;
  res.space = detail::reduce_com_rec(L, V, 0, max_levels, res.trace);
  return res;
}

}  // namespace homlie
