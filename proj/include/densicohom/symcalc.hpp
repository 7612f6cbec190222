#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "densicohom/errors.hpp"
#include "densicohom/multiindex.hpp"
#include "densicohom/params.hpp"
#include "densicohom/poly.hpp"
#include "densicohom/rational.hpp"

namespace densicohom {

/// The vector field h(x) d/dx with polynomial h of degree <= 2, i.e. an
/// element of sl(2) in its realization on the line.
class Sl2Element {
public:
  explicit Sl2Element(Poly h) : h_(std::move(h)) {
    if (h_.degree() > 2) throw invalid_parameter("Sl2Element: coefficient degree > 2");
  }

  const Poly& coefficient() const { return h_; }

  static Sl2Element x1() { return Sl2Element(Poly::constant(Rational(1))); }
  static Sl2Element xx() { return Sl2Element(Poly::x()); }
  static Sl2Element xx2() { return Sl2Element(Poly::monomial(2)); }

  friend bool operator==(const Sl2Element&, const Sl2Element&) = default;

private:
  Poly h_;
};

/// Ordered basis (X_1, X_x, X_{x^2}); all cochain triples follow it.
inline const std::array<Sl2Element, 3>& sl2_basis() {
  static const std::array<Sl2Element, 3> basis = {
      Sl2Element::x1(), Sl2Element::xx(), Sl2Element::xx2()};
  return basis;
}

/// [X_f, X_g] = X_{f g' - f' g}.
inline Sl2Element commutator(const Sl2Element& a, const Sl2Element& b) {
  const Poly& f = a.coefficient();
  const Poly& g = b.coefficient();
  return Sl2Element(f * g.derivative() - f.derivative() * g);
}

/// A multilinear differential operator F |-> sum_alpha p_alpha(x) F^(alpha)
/// between weighted-density modules, stored as its nonzero terms in
/// descending lexicographic order of alpha.
class PolyOperator {
public:
  using TermMap = std::map<MultiIndex, Poly, LexDescending>;

  explicit PolyOperator(ParamSpace params) : params_(std::move(params)) {}

  PolyOperator(ParamSpace params, TermMap terms) : params_(std::move(params)) {
    for (auto& [alpha, p] : terms) add_term(alpha, std::move(p));
  }

  const ParamSpace& params() const { return params_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Poly coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Poly() : it->second;
  }

  /// Accumulates p into the alpha term; zero results are dropped so the
  /// term map stays canonical.
  void add_term(const MultiIndex& alpha, Poly p) {
    if (alpha.size() != params_.n())
      throw invalid_parameter("PolyOperator: multi-index arity mismatch");
    if (p.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(alpha, std::move(p));
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  PolyOperator& operator+=(const PolyOperator& o) {
    require_same_context(o);
    for (const auto& [alpha, p] : o.terms_) add_term(alpha, p);
    return *this;
  }

  PolyOperator& operator-=(const PolyOperator& o) {
    require_same_context(o);
    for (const auto& [alpha, p] : o.terms_) add_term(alpha, -p);
    return *this;
  }

  friend PolyOperator operator+(PolyOperator a, const PolyOperator& b) { return a += b; }
  friend PolyOperator operator-(PolyOperator a, const PolyOperator& b) { return a -= b; }

  friend PolyOperator operator*(const Rational& s, const PolyOperator& op) {
    PolyOperator out(op.params_);
    if (!densicohom::is_zero(s))
      for (const auto& [alpha, p] : op.terms_) out.terms_.emplace(alpha, s * p);
    return out;
  }

  friend bool operator==(const PolyOperator&, const PolyOperator&) = default;

private:
  void require_same_context(const PolyOperator& o) const {
    if (!(params_ == o.params_))
      throw invalid_parameter("PolyOperator: mixed parameter contexts");
  }

  ParamSpace params_;
  TermMap terms_;
};

/// Apply the operator to a concrete tuple of polynomial densities.
inline Poly apply_to_densities(const PolyOperator& op, const std::vector<Poly>& densities) {
  if (densities.size() != op.params().n())
    throw invalid_parameter("apply_to_densities: arity mismatch");
  Poly out;
  for (const auto& [alpha, p] : op.terms()) {
    Poly prod = p;
    for (std::size_t i = 0; i < densities.size(); ++i) {
      Poly fi = densities[i];
      for (int d = 0; d < alpha[i]; ++d) fi = fi.derivative();
      prod = prod * fi;
    }
    out += prod;
  }
  return out;
}

/// Lie derivative on a single density of weight w: h f' + w h' f.
inline Poly lie_derivative(const Poly& h, const Poly& f, const Rational& weight) {
  return h * f.derivative() + weight * (h.derivative() * f);
}

/// The sl(2) action on operators, X_h . A = L^mu_{X_h} o A - A o L^lambda_{X_h},
/// expanded into canonical term form. The composition with the source action
/// is carried out slot by slot with the Leibniz rule; since h is polynomial
/// the expansion terminates on its vanishing derivatives.
inline PolyOperator act_on_operator(const Sl2Element& g, const PolyOperator& op) {
  const ParamSpace& ps = op.params();
  const std::size_t n = ps.n();
  const Poly& h = g.coefficient();
  const Poly hp = h.derivative();

  PolyOperator out(ps);
  for (const auto& [alpha, p] : op.terms()) {
    // L^mu (A F) = h (p F^(alpha))' + mu h' p F^(alpha)
    out.add_term(alpha, h * p.derivative() + ps.mu() * (hp * p));
    for (std::size_t i = 0; i < n; ++i) out.add_term(alpha.raised(i), h * p);

    // - A(L^lambda F): in slot i, (h f' + lambda_i h' f)^(m) by Leibniz
    for (std::size_t i = 0; i < n; ++i) {
      const int m = alpha[i];
      Poly hj = h; // h^(j)
      for (int j = 0; j <= m; ++j) {
        if (hj.is_zero()) break;
        const Rational c(binomial(static_cast<unsigned long>(m), static_cast<unsigned long>(j)));
        out.add_term(alpha.with_slot(i, m + 1 - j), Rational(-1) * c * (hj * p));
        const Poly hj1 = hj.derivative();
        if (!hj1.is_zero())
          out.add_term(alpha.with_slot(i, m - j), Rational(-1) * c * ps.lambda(i) * (hj1 * p));
        hj = hj1;
      }
    }
  }
  return out;
}

/// A 1-cochain: its values on the ordered basis (X_1, X_x, X_{x^2}).
class Cochain1 {
public:
  Cochain1(PolyOperator at_x1, PolyOperator at_xx, PolyOperator at_xx2)
      : images_{std::move(at_x1), std::move(at_xx), std::move(at_xx2)} {
    if (!(images_[0].params() == images_[1].params() &&
          images_[0].params() == images_[2].params()))
      throw invalid_parameter("Cochain1: mixed parameter contexts");
  }

  static Cochain1 zero(const ParamSpace& ps) {
    return Cochain1(PolyOperator(ps), PolyOperator(ps), PolyOperator(ps));
  }

  const ParamSpace& params() const { return images_[0].params(); }
  const std::array<PolyOperator, 3>& images() const { return images_; }
  const PolyOperator& at_x1() const { return images_[0]; }
  const PolyOperator& at_xx() const { return images_[1]; }
  const PolyOperator& at_xx2() const { return images_[2]; }

  /// Linear extension to an arbitrary element h = c0 + c1 x + c2 x^2.
  PolyOperator value_at(const Sl2Element& g) const {
    const Poly& h = g.coefficient();
    PolyOperator out(params());
    for (std::size_t b = 0; b < 3; ++b) {
      const Rational c = h.coefficient(b);
      if (!densicohom::is_zero(c)) out += c * images_[b];
    }
    return out;
  }

  bool is_zero() const {
    return images_[0].is_zero() && images_[1].is_zero() && images_[2].is_zero();
  }

  Cochain1& operator+=(const Cochain1& o) {
    for (std::size_t b = 0; b < 3; ++b) images_[b] += o.images_[b];
    return *this;
  }

  Cochain1& operator-=(const Cochain1& o) {
    for (std::size_t b = 0; b < 3; ++b) images_[b] -= o.images_[b];
    return *this;
  }

  friend Cochain1 operator+(Cochain1 a, const Cochain1& b) { return a += b; }
  friend Cochain1 operator-(Cochain1 a, const Cochain1& b) { return a -= b; }

  friend Cochain1 operator*(const Rational& s, const Cochain1& c) {
    return Cochain1(s * c.images_[0], s * c.images_[1], s * c.images_[2]);
  }

  friend bool operator==(const Cochain1&, const Cochain1&) = default;

private:
  std::array<PolyOperator, 3> images_;
};

/// A 2-cochain on the three independent basis pairs
/// (X_1, X_x), (X_1, X_{x^2}), (X_x, X_{x^2}); antisymmetry is implicit.
class Cochain2 {
public:
  Cochain2(PolyOperator p01, PolyOperator p02, PolyOperator p12)
      : images_{std::move(p01), std::move(p02), std::move(p12)} {
    if (!(images_[0].params() == images_[1].params() &&
          images_[0].params() == images_[2].params()))
      throw invalid_parameter("Cochain2: mixed parameter contexts");
  }

  const ParamSpace& params() const { return images_[0].params(); }
  const std::array<PolyOperator, 3>& images() const { return images_; }

  bool is_zero() const {
    return images_[0].is_zero() && images_[1].is_zero() && images_[2].is_zero();
  }

  friend bool operator==(const Cochain2&, const Cochain2&) = default;

private:
  std::array<PolyOperator, 3> images_;
};

/// Degree-0 differential: (d b)(g) = g . b.
inline Cochain1 differential0(const PolyOperator& b) {
  const auto& basis = sl2_basis();
  return Cochain1(act_on_operator(basis[0], b), act_on_operator(basis[1], b),
                  act_on_operator(basis[2], b));
}

/// Degree-1 differential: (d c)(g, h) = g . c(h) - h . c(g) - c([g, h]).
/// The bracket value is taken by linear extension in the fixed basis; the
/// structure constants come from the commutator itself.
inline Cochain2 differential1(const Cochain1& c) {
  const auto& basis = sl2_basis();
  auto pair_value = [&](std::size_t a, std::size_t b) {
    PolyOperator t = act_on_operator(basis[a], c.images()[b]);
    t -= act_on_operator(basis[b], c.images()[a]);
    t -= c.value_at(commutator(basis[a], basis[b]));
    return t;
  };
  return Cochain2(pair_value(0, 1), pair_value(0, 2), pair_value(1, 2));
}

/// Constant coefficient map alpha -> Rational, in descending lex order.
using CoefficientMap = std::map<MultiIndex, Rational, LexDescending>;

/// The coboundary of the constant-coefficient operator sum_alpha D_alpha
/// F^(alpha), evaluated from its closed form: at X_h the value is
///   sum_alpha (delta - |alpha|) D_alpha h' F^(alpha)
///   - 1/2 sum_alpha sum_i alpha_i (alpha_i + 2 lambda_i - 1) D_alpha h'' F^(alpha^-i).
inline Cochain1 closed_form_coboundary(const CoefficientMap& source,
                                       const ParamSpace& params) {
  const Rational delta = params.delta();
  const Rational half = frac(1, 2);
  std::array<PolyOperator, 3> images{PolyOperator(params), PolyOperator(params),
                                     PolyOperator(params)};
  for (std::size_t b = 0; b < 3; ++b) {
    const Poly& h = sl2_basis()[b].coefficient();
    const Poly hp = h.derivative();
    const Poly hpp = hp.derivative();
    for (const auto& [alpha, d] : source) {
      if (alpha.size() != params.n())
        throw invalid_parameter("closed_form_coboundary: multi-index arity mismatch");
      images[b].add_term(alpha, (delta - Rational(alpha.degree())) * d * hp);
      for (std::size_t i = 0; i < params.n(); ++i) {
        if (alpha[i] == 0) continue; // lowered terms vanish at alpha_i = 0
        const Rational w = Rational(alpha[i]) *
                           (Rational(alpha[i]) + Rational(2) * params.lambda(i) - Rational(1));
        images[b].add_term(alpha.lowered(i), Rational(-1) * half * w * d * hpp);
      }
    }
  }
  return Cochain1(std::move(images[0]), std::move(images[1]), std::move(images[2]));
}

/// Convenience overload for an operator already in term form; rejects
/// non-constant coefficients.
inline Cochain1 closed_form_coboundary(const PolyOperator& b) {
  CoefficientMap source;
  for (const auto& [alpha, p] : b.terms()) {
    if (p.degree() > 0)
      throw invalid_parameter("closed_form_coboundary: non-constant coefficient");
    source.emplace(alpha, p.coefficient(0));
  }
  return closed_form_coboundary(source, b.params());
}

} // namespace densicohom
