#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "densicohom/errors.hpp"
#include "densicohom/rational.hpp"

namespace densicohom {

/// The module datum: n density weights lambda_1..lambda_n and a target
/// weight mu. The shift delta = mu - sum(lambda) drives the whole case
/// analysis; it is always recomputed, never stored.
class ParamSpace {
public:
  ParamSpace(std::vector<Rational> lambda, Rational mu)
      : lambda_(std::move(lambda)), mu_(std::move(mu)) {
    if (lambda_.empty()) throw invalid_parameter("ParamSpace: need at least one weight");
  }

  std::size_t n() const { return lambda_.size(); }
  const std::vector<Rational>& lambda() const { return lambda_; }
  const Rational& lambda(std::size_t slot) const { return lambda_[slot]; }
  const Rational& mu() const { return mu_; }

  Rational lambda_sum() const {
    Rational s(0);
    for (const auto& l : lambda_) s += l;
    return s;
  }

  Rational delta() const { return mu_ - lambda_sum(); }

  friend bool operator==(const ParamSpace&, const ParamSpace&) = default;

private:
  std::vector<Rational> lambda_;
  Rational mu_;
};

/// Case split on the shift. Integer means delta = k with k a non-negative
/// integer; resonant means every slot satisfies -2*lambda_i in {0,...,k-1},
/// and r is then max(-2*lambda_i).
struct CaseTag {
  enum class Kind { non_integer_shift, integer };

  Kind kind = Kind::non_integer_shift;
  long k = 0;
  bool resonant = false;
  std::optional<long> r;

  bool is_integer() const { return kind == Kind::integer; }
};

inline CaseTag classify(const ParamSpace& params) {
  const Rational d = params.delta();
  CaseTag tag;
  if (!is_integer(d) || d < 0) return tag;
  const Integer kz = d.get_num();
  if (!kz.fits_slong_p()) throw invalid_parameter("classify: shift out of range");
  tag.kind = CaseTag::Kind::integer;
  tag.k = kz.get_si();

  // resonance: every -2*lambda_i is an integer in [0, k-1]
  long rmax = -1;
  bool all_in = tag.k >= 1;
  for (std::size_t i = 0; i < params.n() && all_in; ++i) {
    const Rational t = Rational(-2) * params.lambda(i);
    if (!is_integer(t) || t < 0 || t > Rational(tag.k - 1)) {
      all_in = false;
      break;
    }
    const long ti = t.get_num().get_si();
    if (ti > rmax) rmax = ti;
  }
  if (all_in) {
    tag.resonant = true;
    tag.r = rmax;
  }
  return tag;
}

} // namespace densicohom
