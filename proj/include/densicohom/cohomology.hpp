#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "densicohom/errors.hpp"
#include "densicohom/exactlin.hpp"
#include "densicohom/multiindex.hpp"
#include "densicohom/params.hpp"
#include "densicohom/symcalc.hpp"

namespace densicohom {

/// The constraint matrix linking h''-coefficients at level k-1 to
/// h'-coefficients at level k: entry (beta, beta^i) = (beta_i+1)(beta_i+2*lambda_i),
/// rows and columns in descending lexicographic order.
struct LambdaMatrix {
  QMatrix matrix;
  std::vector<MultiIndex> row_labels; // degree k-1
  std::vector<MultiIndex> col_labels; // degree k
};

/// k = 0 produces the empty 0 x N_0 matrix.
inline LambdaMatrix build_lambda_matrix(const ParamSpace& params, long k) {
  if (k < 0) throw invalid_parameter("build_lambda_matrix: negative level");
  LambdaMatrix lm;
  lm.row_labels = enumerate_multiindices(params.n(), k - 1);
  lm.col_labels = enumerate_multiindices(params.n(), k);
  lm.matrix = QMatrix(lm.row_labels.size(), lm.col_labels.size());

  std::map<MultiIndex, std::size_t, LexDescending> col_of;
  for (std::size_t j = 0; j < lm.col_labels.size(); ++j) col_of.emplace(lm.col_labels[j], j);

  for (std::size_t r = 0; r < lm.row_labels.size(); ++r) {
    const MultiIndex& beta = lm.row_labels[r];
    for (std::size_t i = 0; i < params.n(); ++i) {
      const Rational entry = Rational(beta[i] + 1) *
                             (Rational(beta[i]) + Rational(2) * params.lambda(i));
      lm.matrix(r, col_of.at(beta.raised(i))) = entry;
    }
  }
  return lm;
}

/// Everything the dimension theory yields at one parameter point. In the
/// non-integer-shift case all counts are zero. bound_lower/bound_upper come
/// from the classification theorems (equal in the generic case); dim_h1 is
/// computed exactly either way, and bounds_satisfied flags their consistency.
struct CohomologyReport {
  ParamSpace params;
  CaseTag tag;
  Integer n_k{0};
  Integer n_km1{0};
  Integer rank_lambda{0};
  Integer dim_h1{0};
  Integer dim_h1_relative{0};
  Integer bound_lower{0};
  Integer bound_upper{0};
  bool bounds_satisfied = true;
  // generic case with rank below N_{k-1} would contradict the full-rank
  // claim; computed ranks never rely on it, this only flags the anomaly
  bool rank_warning = false;
};

namespace detail {
// C(n+j-2, j) realized as the count of multi-indices of degree j in n-1
// slots, which settles the n = 1 and j < 0 edge cases combinatorially.
inline Integer reduced_slot_count(std::size_t n, long j) {
  if (j < 0) return Integer(0);
  if (n == 1) return Integer(j == 0 ? 1 : 0);
  return multiindex_count(n - 1, j);
}
} // namespace detail

inline CohomologyReport compute(const ParamSpace& params) {
  CohomologyReport rep{params, classify(params)};
  if (!rep.tag.is_integer()) return rep;

  const long k = rep.tag.k;
  const LambdaMatrix lm = build_lambda_matrix(params, k);
  rep.n_k = multiindex_count(params.n(), k);
  rep.n_km1 = multiindex_count(params.n(), k - 1);
  rep.rank_lambda = Integer(static_cast<unsigned long>(rank(lm.matrix)));
  rep.dim_h1 = rep.n_k + rep.n_km1 - 2 * rep.rank_lambda;
  rep.dim_h1_relative = rep.n_km1 - rep.rank_lambda;

  rep.bound_lower = detail::reduced_slot_count(params.n(), k);
  rep.bound_upper = rep.bound_lower;
  if (rep.tag.resonant)
    rep.bound_upper += 2 * detail::reduced_slot_count(params.n(), k - 1 - *rep.tag.r);
  rep.bounds_satisfied = rep.bound_lower <= rep.dim_h1 && rep.dim_h1 <= rep.bound_upper;
  rep.rank_warning = !rep.tag.resonant && rep.rank_lambda < rep.n_km1;
  return rep;
}

/// A 1-cocycle in normal form: constant h'-coefficients B at level k and
/// h''-coefficients C at level k-1, with Lambda . B = 0.
struct CocycleSymbolic {
  CoefficientMap B;
  CoefficientMap C;

  friend bool operator==(const CocycleSymbolic&, const CocycleSymbolic&) = default;
};

/// Basis of H^1 in normal form, B-type elements (kernel of Lambda) first,
/// then C-type elements (a coordinate complement of the image of Lambda,
/// nonempty only under resonance). Empty when the shift is not a natural
/// number.
inline std::vector<CocycleSymbolic> basis(const ParamSpace& params) {
  const CaseTag tag = classify(params);
  std::vector<CocycleSymbolic> out;
  if (!tag.is_integer()) return out;
  const LambdaMatrix lm = build_lambda_matrix(params, tag.k);

  for (const auto& v : kernel_basis(lm.matrix)) {
    CocycleSymbolic c;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!is_zero(v[j])) c.B.emplace(lm.col_labels[j], v[j]);
    out.push_back(std::move(c));
  }

  // coordinates e_beta outside the pivot set of the column space of Lambda
  const auto imageEch = reduced_row_echelon(transposed(lm.matrix));
  std::vector<bool> covered(lm.row_labels.size(), false);
  for (std::size_t p : imageEch.pivot_columns) covered[p] = true;
  for (std::size_t idx = 0; idx < lm.row_labels.size(); ++idx) {
    if (covered[idx]) continue;
    CocycleSymbolic c;
    c.C.emplace(lm.row_labels[idx], Rational(1));
    out.push_back(std::move(c));
  }
  return out;
}

namespace detail {
inline void check_slot_count(const CoefficientMap& m, std::size_t n, const char* what) {
  for (const auto& [alpha, coef] : m) {
    (void)coef;
    if (alpha.size() != n) throw invalid_parameter(std::string(what) + ": arity mismatch");
  }
}
} // namespace detail

/// Reduce an all-levels constant-coefficient cocycle (B, C) to its
/// cohomologous normal form by subtracting the coboundary of
/// b = sum_{|alpha| != k} B_alpha / (k - |alpha|) F^(alpha). The pair must
/// satisfy the cocycle constraint
///   2 (delta - |alpha| - 1) C_alpha + sum_i (alpha_i+1)(alpha_i+2 lambda_i) B_{alpha^i} = 0
/// at every level; what survives is exactly the restriction of B to level k
/// and of C to level k-1.
inline CocycleSymbolic normalize_cocycle(const CoefficientMap& B, const CoefficientMap& C,
                                         const ParamSpace& params) {
  const CaseTag tag = classify(params);
  if (!tag.is_integer())
    throw wrong_case("normalize_cocycle: shift is not a natural number; every cocycle is trivial");
  detail::check_slot_count(B, params.n(), "normalize_cocycle B");
  detail::check_slot_count(C, params.n(), "normalize_cocycle C");

  const Rational delta = params.delta();
  std::set<MultiIndex, LexDescending> candidates;
  for (const auto& [alpha, coef] : C) {
    (void)coef;
    candidates.insert(alpha);
  }
  for (const auto& [alpha, coef] : B) {
    (void)coef;
    for (std::size_t i = 0; i < params.n(); ++i)
      if (alpha[i] > 0) candidates.insert(alpha.lowered(i));
  }

  const auto coef_at = [](const CoefficientMap& m, const MultiIndex& a) {
    auto it = m.find(a);
    return it == m.end() ? Rational(0) : it->second;
  };

  for (const auto& alpha : candidates) {
    Rational lhs = Rational(2) * (delta - Rational(alpha.degree()) - Rational(1)) *
                   coef_at(C, alpha);
    for (std::size_t i = 0; i < params.n(); ++i)
      lhs += Rational(alpha[i] + 1) *
             (Rational(alpha[i]) + Rational(2) * params.lambda(i)) *
             coef_at(B, alpha.raised(i));
    if (!is_zero(lhs))
      throw not_a_cocycle("normalize_cocycle: constraint violated at " + alpha.str());
  }

  CocycleSymbolic out;
  for (const auto& [alpha, coef] : B)
    if (!is_zero(coef) && alpha.degree() == tag.k) out.B.emplace(alpha, coef);
  for (const auto& [alpha, coef] : C)
    if (!is_zero(coef) && alpha.degree() == tag.k - 1) out.C.emplace(alpha, coef);
  return out;
}

/// Outcome of the triviality test. Trivial cocycles come with a
/// constant-coefficient level-k source D solving (1/2) Lambda . D = C;
/// nontrivial ones carry either a nonzero B coefficient or a linear
/// functional y with yT (1/2) Lambda = 0 and yT C != 0.
struct TrivialityResult {
  bool trivial = false;
  CoefficientMap coboundary_source;
  std::optional<MultiIndex> nonzero_b;
  std::vector<Rational> obstruction; // coordinates over the level k-1 row order
};

inline TrivialityResult is_trivial(const CocycleSymbolic& c, const ParamSpace& params) {
  const CaseTag tag = classify(params);
  if (!tag.is_integer()) throw wrong_case("is_trivial: shift is not a natural number");
  detail::check_slot_count(c.B, params.n(), "is_trivial B");
  detail::check_slot_count(c.C, params.n(), "is_trivial C");
  const LambdaMatrix lm = build_lambda_matrix(params, tag.k);

  for (const auto& [alpha, coef] : c.B) {
    (void)coef;
    if (alpha.degree() != tag.k)
      throw not_a_cocycle("is_trivial: B coefficient off level k at " + alpha.str());
  }
  for (const auto& [alpha, coef] : c.C) {
    (void)coef;
    if (alpha.degree() != tag.k - 1)
      throw not_a_cocycle("is_trivial: C coefficient off level k-1 at " + alpha.str());
  }

  std::vector<Rational> bvec(lm.col_labels.size(), Rational(0));
  for (std::size_t j = 0; j < lm.col_labels.size(); ++j) {
    auto it = c.B.find(lm.col_labels[j]);
    if (it != c.B.end()) bvec[j] = it->second;
  }
  for (const auto& r : matvec(lm.matrix, bvec))
    if (!is_zero(r)) throw not_a_cocycle("is_trivial: Lambda . B != 0");

  TrivialityResult res;
  for (const auto& [alpha, coef] : c.B)
    if (!is_zero(coef)) {
      res.nonzero_b = alpha;
      return res; // coboundaries have no h' terms at level k
    }

  QMatrix half = lm.matrix;
  const Rational half_scale = frac(1, 2);
  for (std::size_t i = 0; i < half.rows(); ++i)
    for (std::size_t j = 0; j < half.cols(); ++j) half(i, j) *= half_scale;
  std::vector<Rational> cvec(lm.row_labels.size(), Rational(0));
  for (std::size_t i = 0; i < lm.row_labels.size(); ++i) {
    auto it = c.C.find(lm.row_labels[i]);
    if (it != c.C.end()) cvec[i] = it->second;
  }
  const SolveOutcome sol = solve_or_witness(half, cvec);
  if (sol.consistent) {
    res.trivial = true;
    for (std::size_t j = 0; j < lm.col_labels.size(); ++j)
      if (!is_zero(sol.solution[j])) res.coboundary_source.emplace(lm.col_labels[j], sol.solution[j]);
  } else {
    res.obstruction = sol.certificate;
  }
  return res;
}

/// The cochain c(X_h, F) = sum B_alpha h' F^(alpha) + sum C_beta h'' F^(beta)
/// evaluated on the basis. Feeding the result to differential1 is the bridge
/// to the symbolic verification engine.
inline Cochain1 realize(const CocycleSymbolic& c, const ParamSpace& params) {
  std::array<PolyOperator, 3> images{PolyOperator(params), PolyOperator(params),
                                     PolyOperator(params)};
  for (std::size_t b = 0; b < 3; ++b) {
    const Poly& h = sl2_basis()[b].coefficient();
    const Poly hp = h.derivative();
    const Poly hpp = hp.derivative();
    for (const auto& [alpha, coef] : c.B) images[b].add_term(alpha, coef * hp);
    for (const auto& [beta, coef] : c.C) images[b].add_term(beta, coef * hpp);
  }
  return Cochain1(std::move(images[0]), std::move(images[1]), std::move(images[2]));
}

} // namespace densicohom
