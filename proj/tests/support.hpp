#pragma once

#include <random>
#include <string>
#include <vector>

#include "apolar/apolarity.hpp"
#include "apolar/fixtures.hpp"

namespace apolar::testing {

inline std::string fixture_path(const std::string& name) { return std::string(APOLAR_TEST_FIXTURE_DIR) + "/" + name; }

inline long draw(std::mt19937_64& rng, long range) {
  return static_cast<long>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range;
}

inline mpq_class rational(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

template <CoefficientField Field>
MultiPoly<Field> random_form(const Field& field, int vars, int degree, std::mt19937_64& rng, long range = 5) {
  MultiPoly<Field> f(field, vars, degree);
  for (const auto& e : monomials(vars, degree)) f.add_term(e, field.from_int(draw(rng, range)));
  return f;
}

template <CoefficientField Field>
DualPoint<Field> random_point(const Field& field, int vars, std::mt19937_64& rng, long range = 4) {
  for (;;) {
    std::vector<typename Field::Element> c;
    bool nonzero = false;
    for (int i = 0; i < vars; ++i) {
      c.push_back(field.from_int(draw(rng, range)));
      nonzero = nonzero || !field.is_zero(c.back());
    }
    if (nonzero) return DualPoint<Field>(field, std::move(c));
  }
}

template <CoefficientField Field>
DualPoint<Field> point_of(const Field& field, std::initializer_list<long> coords) {
  std::vector<typename Field::Element> c;
  for (long v : coords) c.push_back(field.from_int(v));
  return DualPoint<Field>(field, std::move(c));
}

/// Operator action by repeated partial differentiation, independent of the
/// closed-form contraction rule.
template <CoefficientField Field>
MultiPoly<Field> differentiate_by(const MultiPoly<Field>& op, const MultiPoly<Field>& f) {
  const int out_degree = f.degree() - op.degree();
  MultiPoly<Field> out(f.field(), f.num_vars(), out_degree < 0 ? 0 : out_degree);
  if (out_degree < 0) return out;
  for (const auto& [alpha, c] : op.terms()) {
    MultiPoly<Field> g = f;
    for (int i = 0; i < f.num_vars(); ++i)
      for (int k = 0; k < alpha[i]; ++k) g = partial_derivative(g, i);
    out += g * c;
  }
  return out;
}

/// f == c g for some nonzero scalar c.
template <CoefficientField Field>
bool proportional(const MultiPoly<Field>& f, const MultiPoly<Field>& g) {
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  if (f.num_vars() != g.num_vars() || f.degree() != g.degree()) return false;
  const auto& [e0, c0] = *f.terms().begin();
  auto d0 = g.coefficient(e0);
  if (f.field().is_zero(d0)) return false;
  return f * d0 == g * c0;
}

/// Dimension of the s-th secant variety of the d-th Veronese of P^n by
/// Terracini: the span of l_i^(d-1) x_j at random l_i, at 256 bits.
inline std::size_t terracini_dimension(int d, int n, int s, std::mt19937_64& rng) {
  const ComplexField field(256);
  MonomialIndex basis(n + 1, d);
  std::vector<std::vector<Complex>> rows;
  for (int i = 0; i < s; ++i) {
    std::vector<Complex> c;
    for (int j = 0; j <= n; ++j) {
      const double v = static_cast<double>(rng() % 2000001) / 1000000.0 - 1.0;
      c.emplace_back(Real(v, 256), Real(0L, 256));
    }
    auto power = power_of_linear(DualPoint<ComplexField>(field, c), d - 1);
    for (int j = 0; j <= n; ++j) {
      Exponent unit(n + 1, 0);
      unit[j] = 1;
      rows.push_back((power * MultiPoly<ComplexField>::monomial(field, unit, field.one())).coefficients(basis));
    }
  }
  return rank(DenseMatrix<ComplexField>::from_rows(field, basis.size(), rows));
}

/// Smallest s whose secant variety fills R_d.
inline int terracini_rank(int d, int n, std::mt19937_64& rng) {
  const auto full = num_monomials(n + 1, d);
  for (int s = 1;; ++s) {
    if (terracini_dimension(d, n, s, rng) == full) return s;
  }
}

}  // namespace apolar::testing
