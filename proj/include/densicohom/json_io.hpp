#pragma once

#include <string>

#include <json.hpp>

#include "densicohom/cohomology.hpp"
#include "densicohom/exactlin.hpp"
#include "densicohom/multiindex.hpp"
#include "densicohom/oracle.hpp"
#include "densicohom/params.hpp"
#include "densicohom/poly.hpp"
#include "densicohom/symcalc.hpp"

// JSON wire formats. Rationals travel as "p/q" strings (plain "p" for
// integers), multi-indices as arrays of non-negative integers, matrices as
// arrays of arrays of rational strings. nlohmann::json keeps object keys
// sorted, so serialization is canonical and round-trips byte for byte.

namespace densicohom {

using json = nlohmann::json;

inline json to_json(const Rational& q) { return to_string(q); }

inline json to_json(const MultiIndex& alpha) {
  json a = json::array();
  for (int e : alpha.entries()) a.push_back(e);
  return a;
}

inline json to_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const Poly& p) {
  json coeffs = json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(to_string(c));
  return coeffs;
}

inline json to_json(const PolyOperator& op) {
  json terms = json::array();
  for (const auto& [alpha, p] : op.terms())
    terms.push_back(json{{"alpha", to_json(alpha)}, {"poly", to_json(p)}});
  return terms;
}

inline json to_json(const Cochain1& c) {
  return json{{"X1", to_json(c.at_x1())},
              {"Xx", to_json(c.at_xx())},
              {"Xx2", to_json(c.at_xx2())}};
}

inline json to_json(const CoefficientMap& m) {
  json list = json::array();
  for (const auto& [alpha, coef] : m)
    list.push_back(json{{"alpha", to_json(alpha)}, {"coef", to_string(coef)}});
  return list;
}

inline json to_json(const CocycleSymbolic& c) {
  return json{{"B", to_json(c.B)}, {"C", to_json(c.C)}};
}

inline json to_json(const ParamSpace& ps) {
  json lam = json::array();
  for (const auto& l : ps.lambda()) lam.push_back(to_string(l));
  return json{{"n", ps.n()},
              {"lambda", std::move(lam)},
              {"mu", to_string(ps.mu())},
              {"delta", to_string(ps.delta())}};
}

inline json to_json(const CaseTag& tag) {
  if (!tag.is_integer()) return json{{"type", "non_integer_shift"}};
  json j{{"type", "integer"}, {"k", tag.k}, {"resonant", tag.resonant}};
  if (tag.r) j["r"] = *tag.r;
  return j;
}

namespace detail {
inline json natural_to_json(const Integer& n) {
  if (!n.fits_slong_p())
    throw invalid_parameter("json: count exceeds the integer range of the wire format");
  return json(n.get_si());
}
} // namespace detail

inline json to_json(const CohomologyReport& rep) {
  json j{{"params", to_json(rep.params)},
         {"case", to_json(rep.tag)},
         {"n_k", detail::natural_to_json(rep.n_k)},
         {"n_km1", detail::natural_to_json(rep.n_km1)},
         {"rank_lambda", detail::natural_to_json(rep.rank_lambda)},
         {"dim_h1", detail::natural_to_json(rep.dim_h1)},
         {"dim_h1_relative", detail::natural_to_json(rep.dim_h1_relative)},
         {"bound_lower", detail::natural_to_json(rep.bound_lower)},
         {"bound_upper", detail::natural_to_json(rep.bound_upper)},
         {"bounds_satisfied", rep.bounds_satisfied}};
  if (rep.rank_warning) j["rank_warning"] = true;
  return j;
}

inline json to_json(const OracleOutcome& o) {
  return json{{"dim", o.dim},
              {"stabilized", o.stabilized},
              {"steps", o.steps},
              {"warnings", o.warnings}};
}

inline MultiIndex multiindex_from_json(const json& j) {
  std::vector<int> entries;
  for (const auto& e : j) entries.push_back(e.get<int>());
  return MultiIndex(std::move(entries));
}

inline CocycleSymbolic cocycle_from_json(const json& j) {
  CocycleSymbolic c;
  for (const auto& t : j.at("B"))
    c.B.emplace(multiindex_from_json(t.at("alpha")), parse_rational(t.at("coef").get<std::string>()));
  for (const auto& t : j.at("C"))
    c.C.emplace(multiindex_from_json(t.at("alpha")), parse_rational(t.at("coef").get<std::string>()));
  return c;
}

} // namespace densicohom
