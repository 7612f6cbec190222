#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "densicohom/rational.hpp"

namespace densicohom {

/// Univariate polynomial over the rationals, coefficients lowest degree
/// first, no trailing zeros (the zero polynomial is the empty list).
class Poly {
public:
  Poly() = default;

  explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Poly constant(Rational c) { return Poly(std::vector<Rational>{std::move(c)}); }

  static Poly monomial(std::size_t degree, Rational coeff = Rational(1)) {
    std::vector<Rational> c(degree + 1, Rational(0));
    c[degree] = std::move(coeff);
    return Poly(std::move(c));
  }

  static Poly x() { return monomial(1); }

  bool is_zero() const { return coeffs_.empty(); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational coefficient(std::size_t d) const {
    return d < coeffs_.size() ? coeffs_[d] : Rational(0);
  }

  Poly derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<Rational> c(coeffs_.size() - 1);
    for (std::size_t d = 1; d < coeffs_.size(); ++d)
      c[d - 1] = Rational(static_cast<long>(d)) * coeffs_[d];
    return Poly(std::move(c));
  }

  Rational evaluate(const Rational& at) const {
    Rational acc(0);
    for (std::size_t d = coeffs_.size(); d-- > 0;) acc = acc * at + coeffs_[d];
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t d = 0; d < o.coeffs_.size(); ++d) coeffs_[d] += o.coeffs_[d];
    trim();
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t d = 0; d < o.coeffs_.size(); ++d) coeffs_[d] -= o.coeffs_[d];
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator-(const Poly& a) {
    std::vector<Rational> c(a.coeffs_.size());
    for (std::size_t d = 0; d < c.size(); ++d) c[d] = -a.coeffs_[d];
    return Poly(std::move(c));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(c));
  }

  friend Poly operator*(const Rational& s, const Poly& p) {
    if (densicohom::is_zero(s)) return Poly();
    std::vector<Rational> c(p.coeffs_.size());
    for (std::size_t d = 0; d < c.size(); ++d) c[d] = s * p.coeffs_[d];
    return Poly(std::move(c));
  }

  friend Poly operator*(const Poly& p, const Rational& s) { return s * p; }

  friend bool operator==(const Poly&, const Poly&) = default;

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t d = coeffs_.size(); d-- > 0;) {
      if (densicohom::is_zero(coeffs_[d])) continue;
      const bool neg = sgn(coeffs_[d]) < 0;
      Rational mag = neg ? Rational(-coeffs_[d]) : coeffs_[d];
      if (s.empty()) {
        if (neg) s += '-';
      } else {
        s += neg ? " - " : " + ";
      }
      const bool unit = mag == 1 && d > 0;
      if (!unit) s += to_string(mag);
      if (d > 0) {
        if (!unit) s += '*';
        s += var;
        if (d > 1) s += '^' + std::to_string(d);
      }
    }
    return s;
  }

private:
  void trim() {
    while (!coeffs_.empty() && densicohom::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

} // namespace densicohom
