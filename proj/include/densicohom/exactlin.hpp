#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "densicohom/errors.hpp"
#include "densicohom/rational.hpp"

namespace densicohom {

/// Dense matrix over the rationals, row-major.
class QMatrix {
public:
  QMatrix() = default;

  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    QMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        throw invalid_parameter("QMatrix: ragged row list");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

inline QMatrix transposed(const QMatrix& m) {
  QMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

inline std::vector<Rational> matvec(const QMatrix& m, const std::vector<Rational>& v) {
  if (v.size() != m.cols()) throw invalid_parameter("matvec: dimension mismatch");
  std::vector<Rational> out(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j)) && !is_zero(v[j])) out[i] += m(i, j) * v[j];
  return out;
}

namespace detail {

using ZRow = std::vector<Integer>;

// Clear denominators and divide out the content; row span is unchanged.
inline ZRow integer_scaled_row(const QMatrix& m, std::size_t i,
                               const std::vector<Rational>* extra = nullptr,
                               std::size_t identity_size = 0,
                               std::size_t identity_pos = 0) {
  std::size_t width = m.cols() + (extra ? 1 : 0) + identity_size;
  std::vector<Rational> row;
  row.reserve(width);
  for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
  if (extra) row.push_back((*extra)[i]);
  for (std::size_t j = 0; j < identity_size; ++j)
    row.push_back(Rational(j == identity_pos ? 1 : 0));

  Integer lcm(1);
  for (const auto& q : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
  ZRow z(width);
  Integer content(0);
  for (std::size_t j = 0; j < width; ++j) {
    z[j] = row[j].get_num() * (lcm / row[j].get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z[j].get_mpz_t());
  }
  if (content > 1)
    for (auto& e : z) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), content.get_mpz_t());
  return z;
}

// One-step fraction-free (Bareiss) forward elimination. Rows may carry
// augmented columns beyond pivot_limit; pivots are chosen as the first
// nonzero entry below the current row, scanning columns left to right.
// Every division is exact; a nonzero remainder would be a logic error.
struct ForwardResult {
  std::vector<ZRow> rows;
  std::vector<std::size_t> pivot_cols;
};

inline ForwardResult bareiss_forward(std::vector<ZRow> rows, std::size_t pivot_limit) {
  ForwardResult fr;
  const std::size_t nrows = rows.size();
  const std::size_t width = nrows ? rows.front().size() : 0;
  Integer prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_limit && r < nrows; ++c) {
    std::size_t pr = r;
    while (pr < nrows && rows[pr][c] == 0) ++pr;
    if (pr == nrows) continue;
    std::swap(rows[r], rows[pr]);
    const Integer piv = rows[r][c];
    for (std::size_t i = r + 1; i < nrows; ++i) {
      const Integer factor = rows[i][c];
      for (std::size_t j = 0; j < width; ++j) {
        Integer t = piv * rows[i][j] - factor * rows[r][j];
        Integer q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        if (rem != 0) throw std::logic_error("bareiss: inexact division");
        rows[i][j] = std::move(q);
      }
    }
    fr.pivot_cols.push_back(c);
    prev = piv;
    ++r;
  }
  fr.rows = std::move(rows);
  return fr;
}

// Rational back-substitution: unit pivots, zeros above. Rows past the
// pivot count are passed through unchanged (they matter for solve).
inline std::vector<std::vector<Rational>> reduce_upward(const ForwardResult& fr) {
  const std::size_t nrows = fr.rows.size();
  const std::size_t width = nrows ? fr.rows.front().size() : 0;
  std::vector<std::vector<Rational>> rows(nrows, std::vector<Rational>(width, Rational(0)));
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < width; ++j) rows[i][j] = Rational(fr.rows[i][j]);
  for (std::size_t t = fr.pivot_cols.size(); t-- > 0;) {
    const std::size_t p = fr.pivot_cols[t];
    const Rational inv = Rational(1) / rows[t][p];
    for (std::size_t j = 0; j < width; ++j)
      if (!is_zero(rows[t][j])) rows[t][j] *= inv;
    for (std::size_t s = 0; s < t; ++s) {
      if (is_zero(rows[s][p])) continue;
      const Rational f = rows[s][p];
      for (std::size_t j = 0; j < width; ++j)
        if (!is_zero(rows[t][j])) rows[s][j] -= f * rows[t][j];
    }
  }
  return rows;
}

// Scale to integer entries with content 1 and first nonzero entry positive.
inline void canonicalize_vector(std::vector<Rational>& v) {
  Integer lcm(1);
  for (const auto& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
  Integer content(0);
  std::vector<Integer> z(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    z[j] = v[j].get_num() * (lcm / v[j].get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z[j].get_mpz_t());
  }
  if (content == 0) return;
  int lead = 0;
  for (const auto& e : z)
    if (e != 0) {
      lead = sgn(e);
      break;
    }
  if (lead < 0) content = -content;
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = Rational(z[j] / content);
}

inline std::vector<ZRow> integer_rows(const QMatrix& m) {
  std::vector<ZRow> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(integer_scaled_row(m, i));
  return rows;
}

} // namespace detail

/// Reduced row echelon form (unit pivots, zeros above and below) together
/// with the pivot column list. Computed fraction-free, normalized at the end.
struct ReducedRowEchelon {
  QMatrix matrix;
  std::vector<std::size_t> pivot_columns;
};

inline ReducedRowEchelon reduced_row_echelon(const QMatrix& m) {
  auto fr = detail::bareiss_forward(detail::integer_rows(m), m.cols());
  auto rows = detail::reduce_upward(fr);
  ReducedRowEchelon out;
  out.matrix = QMatrix(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.matrix(i, j) = rows[i][j];
  out.pivot_columns = std::move(fr.pivot_cols);
  return out;
}

/// Exact rank over the rationals.
inline std::size_t rank(const QMatrix& m) {
  return detail::bareiss_forward(detail::integer_rows(m), m.cols()).pivot_cols.size();
}

/// Basis of the right kernel: one vector per free column in column order,
/// each scaled to integer entries with content 1 and positive leading entry.
inline std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m) {
  const auto ech = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : ech.pivot_columns) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[f] = Rational(1);
    for (std::size_t t = 0; t < ech.pivot_columns.size(); ++t)
      v[ech.pivot_columns[t]] = -ech.matrix(t, f);
    detail::canonicalize_vector(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Either an exact solution of M x = b, or a certificate y with
/// yT M = 0 and yT b != 0 proving there is none.
struct SolveOutcome {
  bool consistent = false;
  std::vector<Rational> solution;    // pivot variables set, free variables 0
  std::vector<Rational> certificate; // integer entries, content 1, leading entry positive
};

inline SolveOutcome solve_or_witness(const QMatrix& m, const std::vector<Rational>& b) {
  if (b.size() != m.rows()) throw invalid_parameter("solve_or_witness: dimension mismatch");
  const std::size_t nrows = m.rows(), ncols = m.cols();
  std::vector<detail::ZRow> rows;
  rows.reserve(nrows);
  for (std::size_t i = 0; i < nrows; ++i)
    rows.push_back(detail::integer_scaled_row(m, i, &b, nrows, i));
  auto fr = detail::bareiss_forward(std::move(rows), ncols);
  auto red = detail::reduce_upward(fr);

  SolveOutcome out;
  for (std::size_t i = fr.pivot_cols.size(); i < nrows; ++i) {
    bool zero_m = true;
    for (std::size_t j = 0; j < ncols && zero_m; ++j)
      if (!is_zero(red[i][j])) zero_m = false;
    if (zero_m && !is_zero(red[i][ncols])) {
      out.certificate.assign(red[i].begin() + ncols + 1, red[i].end());
      detail::canonicalize_vector(out.certificate);
      return out;
    }
  }
  out.consistent = true;
  out.solution.assign(ncols, Rational(0));
  for (std::size_t t = 0; t < fr.pivot_cols.size(); ++t)
    out.solution[fr.pivot_cols[t]] = red[t][ncols];
  return out;
}

} // namespace densicohom
