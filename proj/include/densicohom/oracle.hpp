#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "densicohom/errors.hpp"
#include "densicohom/exactlin.hpp"
#include "densicohom/multiindex.hpp"
#include "densicohom/params.hpp"
#include "densicohom/symcalc.hpp"

// Brute-force cross-check of the cohomology engine: finite-dimensional
// truncations of the degree-0/1 cochain spaces, exact kernels and ranks.
// Deliberately built on symcalc and exactlin alone; it never touches the
// constraint matrix or the closed-form dimension counts.

namespace densicohom {

/// Caps for the truncation: operator terms up to |alpha| = max_order,
/// coefficient degree up to max_degree; 0-cochain sources get
/// source_degree_margin extra degrees so coboundaries from slightly larger
/// sources are still recognized.
struct TruncationBox {
  long max_order = 0;
  long max_degree = 0;
  long source_degree_margin = 0;
};

struct TruncatedH1 {
  long dim = 0;             // z1_dim - b1_dim
  long z1_dim = 0;          // cocycles inside the box
  long b1_dim = 0;          // coboundaries that land inside the box
  long source_dim = 0;      // boxed 0-cochain space
  long coboundary_rank = 0; // dim of the image of the boxed 0-cochains
  std::vector<std::string> warnings;
};

namespace oracle_detail {

struct CoordKey {
  int part; // generator or basis-pair slot, 0..2
  MultiIndex alpha;
  long deg;

  friend auto operator<=>(const CoordKey&, const CoordKey&) = default;
};

using SparseColumn = std::vector<std::pair<std::size_t, Rational>>;

class CoordInterner {
public:
  std::size_t intern(CoordKey key) {
    auto [it, inserted] = index_.try_emplace(std::move(key), keys_.size());
    if (inserted) keys_.push_back(it->first);
    return it->second;
  }
  std::size_t size() const { return keys_.size(); }
  const CoordKey& key(std::size_t i) const { return keys_[i]; }

private:
  std::map<CoordKey, std::size_t> index_;
  std::vector<CoordKey> keys_;
};

inline std::vector<MultiIndex> alphas_up_to(std::size_t n, long max_order) {
  std::vector<MultiIndex> out;
  for (long level = 0; level <= max_order; ++level)
    for (auto& a : enumerate_multiindices(n, level)) out.push_back(std::move(a));
  return out;
}

inline void append_operator_coords(const PolyOperator& op, int part, CoordInterner& coords,
                                   SparseColumn& col) {
  for (const auto& [alpha, p] : op.terms())
    for (std::size_t d = 0; d < p.coefficients().size(); ++d)
      if (!is_zero(p.coefficients()[d]))
        col.emplace_back(coords.intern({part, alpha, static_cast<long>(d)}),
                         p.coefficients()[d]);
}

inline QMatrix assemble(const std::vector<SparseColumn>& cols, std::size_t nrows) {
  QMatrix m(nrows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, v] : cols[j]) m(i, j) = v;
  return m;
}

// Columns of the linearized degree-0 differential over the boxed source
// space (order <= max_order, degree <= source_degree).
struct SourceImage {
  std::vector<SparseColumn> cols;
  CoordInterner coords;
  long source_dim = 0;
};

inline SourceImage coboundary_columns(const ParamSpace& params, long max_order,
                                      long source_degree) {
  SourceImage si;
  const auto alphas = alphas_up_to(params.n(), max_order);
  for (const auto& alpha : alphas) {
    for (long d = 0; d <= source_degree; ++d) {
      PolyOperator b(params);
      b.add_term(alpha, Poly::monomial(static_cast<std::size_t>(d)));
      const Cochain1 image = differential0(b);
      SparseColumn col;
      for (int part = 0; part < 3; ++part)
        append_operator_coords(image.images()[part], part, si.coords, col);
      si.cols.push_back(std::move(col));
      ++si.source_dim;
    }
  }
  return si;
}

} // namespace oracle_detail

/// Truncated first cohomology: dim ker(differential1) restricted to the box,
/// minus the dimension of the coboundary subspace meeting the box. The
/// intersection is taken against sources with the extra degree margin, so a
/// boxed coboundary whose source sticks out by a few degrees still counts.
inline TruncatedH1 truncated_h1(const ParamSpace& params, const TruncationBox& box) {
  if (box.max_order < 0 || box.max_degree < 0 || box.source_degree_margin < 0)
    throw invalid_parameter("truncated_h1: negative cap");
  TruncatedH1 out;

  const CaseTag tag = classify(params);
  if (tag.is_integer() && box.max_order < tag.k)
    out.warnings.push_back("max_order " + std::to_string(box.max_order) +
                           " is below the cocycle level k=" + std::to_string(tag.k) +
                           "; the box cannot hold every representative");

  const auto alphas = oracle_detail::alphas_up_to(params.n(), box.max_order);

  // Z^1 inside the box
  {
    oracle_detail::CoordInterner coords;
    std::vector<oracle_detail::SparseColumn> cols;
    long domain = 0;
    for (int gen = 0; gen < 3; ++gen) {
      for (const auto& alpha : alphas) {
        for (long d = 0; d <= box.max_degree; ++d) {
          PolyOperator unit(params);
          unit.add_term(alpha, Poly::monomial(static_cast<std::size_t>(d)));
          std::array<PolyOperator, 3> images{PolyOperator(params), PolyOperator(params),
                                             PolyOperator(params)};
          images[static_cast<std::size_t>(gen)] = std::move(unit);
          const Cochain2 image = differential1(
              Cochain1(std::move(images[0]), std::move(images[1]), std::move(images[2])));
          oracle_detail::SparseColumn col;
          for (int part = 0; part < 3; ++part)
            append_operator_coords(image.images()[part], part, coords, col);
          cols.push_back(std::move(col));
          ++domain;
        }
      }
    }
    const QMatrix m = oracle_detail::assemble(cols, coords.size());
    out.z1_dim = domain - static_cast<long>(rank(m));
  }

  // B^1 intersected with the box: rank of the full source image minus the
  // rank of its projection onto out-of-box coordinates.
  {
    auto si = oracle_detail::coboundary_columns(params, box.max_order,
                                                box.max_degree + box.source_degree_margin);
    const QMatrix full = oracle_detail::assemble(si.cols, si.coords.size());
    std::vector<std::size_t> out_rows;
    for (std::size_t i = 0; i < si.coords.size(); ++i)
      if (si.coords.key(i).deg > box.max_degree) out_rows.push_back(i);
    QMatrix outside(out_rows.size(), full.cols());
    for (std::size_t r = 0; r < out_rows.size(); ++r)
      for (std::size_t j = 0; j < full.cols(); ++j) outside(r, j) = full(out_rows[r], j);

    out.source_dim = si.source_dim;
    out.coboundary_rank = static_cast<long>(rank(full));
    out.b1_dim = out.coboundary_rank - static_cast<long>(rank(outside));
  }

  out.dim = out.z1_dim - out.b1_dim;
  return out;
}

/// Dimension of the sl(2)-invariant operators inside the boxed 0-cochain
/// space (order <= max_order, degree <= max_degree + margin): the kernel of
/// the degree-0 differential, i.e. the degree-0 cohomology of the box.
inline long invariant_operator_dim(const ParamSpace& params, const TruncationBox& box) {
  if (box.max_order < 0 || box.max_degree < 0 || box.source_degree_margin < 0)
    throw invalid_parameter("invariant_operator_dim: negative cap");
  auto si = oracle_detail::coboundary_columns(params, box.max_order,
                                              box.max_degree + box.source_degree_margin);
  const QMatrix m = oracle_detail::assemble(si.cols, si.coords.size());
  return si.source_dim - static_cast<long>(rank(m));
}

/// Schedule start: order k and degree k+2 in the integer case (order 2,
/// degree 4 otherwise), margin 2. Each step grows degree and margin by 2.
inline TruncationBox default_box(const ParamSpace& params) {
  const CaseTag tag = classify(params);
  const long base = tag.is_integer() ? tag.k : 2;
  return TruncationBox{base, base + 2, 2};
}

struct OracleOutcome {
  long dim = 0;
  bool stabilized = false;
  int steps = 0;
  std::vector<std::string> warnings;
};

/// Run truncated_h1 on the growing schedule until two consecutive steps
/// agree; a run that exhausts max_steps is reported as non-stabilized
/// rather than trusted.
inline OracleOutcome stabilized_h1(const ParamSpace& params, const TruncationBox& initial,
                                   int max_steps = 5) {
  if (max_steps < 2) throw invalid_parameter("stabilized_h1: need at least two steps");
  OracleOutcome out;
  long previous = -1;
  for (int s = 1; s <= max_steps; ++s) {
    TruncationBox box = initial;
    box.max_degree += 2 * (s - 1);
    box.source_degree_margin += 2 * (s - 1);
    const TruncatedH1 t = truncated_h1(params, box);
    for (const auto& w : t.warnings) out.warnings.push_back(w);
    out.steps = s;
    out.dim = t.dim;
    if (s >= 2 && t.dim == previous) {
      out.stabilized = true;
      return out;
    }
    previous = t.dim;
  }
  out.warnings.push_back("dimension did not stabilize within " + std::to_string(max_steps) +
                         " steps");
  return out;
}

inline OracleOutcome stabilized_h1(const ParamSpace& params, int max_steps = 5) {
  return stabilized_h1(params, default_box(params), max_steps);
}

} // namespace densicohom
