#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "apolar/errors.hpp"
#include "apolar/field.hpp"
#include "apolar/linalg.hpp"
#include "apolar/monomials.hpp"
#include "apolar/multipoly.hpp"

namespace apolar {

/// Matrix of T_e -> R_{d-e}, D |-> D.f in monomial bases. Rows follow
/// `monomials(n, d - e)`, columns follow `monomials(n, e)`.
template <CoefficientField Field>
DenseMatrix<Field> catalecticant_matrix(const MultiPoly<Field>& f, int e) {
  const int d = f.degree();
  if (e < 0 || e > d) {
    throw InvalidArgument("degree_out_of_range",
                          "catalecticant degree " + std::to_string(e) + " outside [0, " + std::to_string(d) + "]");
  }
  const Field& field = f.field();
  const int n = f.num_vars();
  MonomialIndex rows(n, d - e);
  MonomialIndex cols(n, e);
  DenseMatrix<Field> m(field, rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto image = apolar_apply(monomial_form(field, cols[j]), f);
    for (const auto& [gamma, c] : image.terms()) m(rows.index(gamma), j) = c;
  }
  return m;
}

/// Basis of the degree-e piece of the apolar ideal f^perp, as operators in T_e.
/// Past the socle degree every operator annihilates f.
template <CoefficientField Field>
std::vector<MultiPoly<Field>> apolar_ideal_piece(const MultiPoly<Field>& f, int e) {
  if (e < 0) throw InvalidArgument("degree_out_of_range", "negative ideal degree");
  const Field& field = f.field();
  MonomialIndex basis(f.num_vars(), e);
  std::vector<MultiPoly<Field>> out;
  if (e > f.degree()) {
    for (const auto& alpha : basis.basis()) out.push_back(monomial_form(field, alpha));
    return out;
  }
  for (const auto& v : kernel_basis(catalecticant_matrix(f, e))) {
    out.push_back(MultiPoly<Field>::from_coefficients(field, basis, v));
  }
  return out;
}

/// Hilbert function h_0..h_d of the apolar ring A^F = T / f^perp.
struct HilbertFunction {
  std::vector<int> values;

  int socle_degree() const { return static_cast<int>(values.size()) - 1; }
  bool is_symmetric() const { return std::equal(values.begin(), values.end(), values.rbegin()); }
  friend bool operator==(const HilbertFunction&, const HilbertFunction&) = default;
};

template <CoefficientField Field>
HilbertFunction hilbert_function(const MultiPoly<Field>& f) {
  if (f.is_zero()) throw InvalidArgument("zero_form", "the zero form has no apolar Gorenstein ring");
  HilbertFunction h;
  for (int e = 0; e <= f.degree(); ++e) h.values.push_back(static_cast<int>(rank(catalecticant_matrix(f, e))));
  return h;
}

/// Degree-indexed bases of the graded pieces of a homogeneous ideal in T.
template <CoefficientField Field>
struct GradedIdealPieces {
  Field field;
  int num_vars;
  std::map<int, std::vector<MultiPoly<Field>>> pieces;

  const std::vector<MultiPoly<Field>>& piece(int e) const {
    static const std::vector<MultiPoly<Field>> empty;
    auto it = pieces.find(e);
    return it == pieces.end() ? empty : it->second;
  }

  /// dim T_e - dim I_e for e = 0..top (the Hilbert function of T / I).
  std::vector<int> quotient_dimensions(int top) const {
    std::vector<int> out;
    for (int e = 0; e <= top; ++e) {
      out.push_back(static_cast<int>(num_monomials(num_vars, e)) - (e == 0 ? 0 : static_cast<int>(piece(e).size())));
    }
    return out;
  }
};

/// Raised when the inverse system of an ideal is not one-dimensional.
class SocleKernelError : public DegenerateInput {
 public:
  explicit SocleKernelError(std::size_t dimension)
      : DegenerateInput("kernel_dimension",
                        dimension == 0 ? "no form of the socle degree is annihilated by the ideal (kernel dimension 0)"
                                       : "quotient is not Gorenstein of this socle degree (kernel dimension " +
                                             std::to_string(dimension) + ")"),
        dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }

 private:
  std::size_t dimension_;
};

/// Macaulay inverse system: the unique (up to scalar) form f of degree d with
/// D.f = 0 for every stored generator D. Degrees missing from `ideal` are
/// treated as empty pieces. The result is scaled to leading coefficient 1.
template <CoefficientField Field>
MultiPoly<Field> dual_socle_generator(const GradedIdealPieces<Field>& ideal, int d) {
  if (d < 0) throw InvalidArgument("degree_out_of_range", "negative socle degree");
  const Field& field = ideal.field;
  const int n = ideal.num_vars;
  MonomialIndex top(n, d);
  // Columns of `span` are a basis of the current candidate space inside R_d.
  std::vector<std::vector<typename Field::Element>> span;
  for (std::size_t j = 0; j < top.size(); ++j) {
    std::vector<typename Field::Element> v(top.size(), field.zero());
    v[j] = field.one();
    span.push_back(std::move(v));
  }
  for (int e = d; e >= 1 && !span.empty(); --e) {
    const auto& piece = ideal.piece(e);
    if (piece.empty()) continue;
    MonomialIndex low(n, d - e);
    // Coefficient of x^gamma in D . x^beta is D_alpha * beta!/gamma! for beta = alpha + gamma.
    DenseMatrix<Field> conditions(field, piece.size() * low.size(), top.size());
    for (std::size_t p = 0; p < piece.size(); ++p) {
      if (piece[p].degree() != e || piece[p].num_vars() != n) {
        throw InvalidArgument("ideal piece of degree " + std::to_string(e) + " holds a form of another shape");
      }
      for (std::size_t g = 0; g < low.size(); ++g) {
        Exponent beta(n);
        for (const auto& [alpha, c] : piece[p].terms()) {
          for (int i = 0; i < n; ++i) beta[i] = alpha[i] + low[g][i];
          conditions(p * low.size() + g, top.index(beta)) = c * field.from_integer(falling_factorial(beta, alpha));
        }
      }
    }
    auto restricted = conditions * DenseMatrix<Field>::from_columns(field, top.size(), span);
    auto kernel = kernel_basis(restricted);
    std::vector<std::vector<typename Field::Element>> next;
    for (const auto& k : kernel) {
      std::vector<typename Field::Element> v(top.size(), field.zero());
      for (std::size_t j = 0; j < span.size(); ++j) {
        if (field.is_zero(k[j])) continue;
        for (std::size_t i = 0; i < top.size(); ++i) v[i] += k[j] * span[j][i];
      }
      next.push_back(std::move(v));
    }
    span = std::move(next);
  }
  if (span.size() != 1) throw SocleKernelError(span.size());
  return MultiPoly<Field>::from_coefficients(field, top, span.front()).normalized();
}

namespace detail {

template <CoefficientField Field>
void require_distinct(const std::vector<DualPoint<Field>>& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (projectively_equal(points[i], points[j])) {
        throw InvalidArgument("duplicate_points", "points " + std::to_string(i) + " and " + std::to_string(j) +
                                                      " coincide projectively");
      }
    }
  }
}

/// Whether a form computed in a float field is zero relative to `scale`.
template <CoefficientField Field>
bool negligible(const MultiPoly<Field>& g, const Real& scale) {
  if constexpr (Field::exact) {
    return g.is_zero();
  } else {
    return g.max_abs_coefficient() <= scale * g.field().tolerance();
  }
}

/// Degree-e piece of the ideal of a finite point set: the kernel of
/// evaluation T_e -> k^points.
template <CoefficientField Field>
std::vector<MultiPoly<Field>> vanishing_piece(const std::vector<DualPoint<Field>>& points, int e) {
  const Field& field = points.front().field();
  MonomialIndex basis(points.front().num_vars(), e);
  DenseMatrix<Field> eval(field, points.size(), basis.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      eval(i, j) = eval_poly(monomial_form(field, basis[j]), points[i]);
    }
  }
  std::vector<MultiPoly<Field>> out;
  for (const auto& v : kernel_basis(eval)) out.push_back(MultiPoly<Field>::from_coefficients(field, basis, v));
  return out;
}

}  // namespace detail

/// Apolarity of a reduced point set: (I_Gamma)_e inside (f^perp)_e for
/// 1 <= e <= d. Degrees above d need no check because f^perp contains them.
template <CoefficientField Field>
bool is_apolar(const std::vector<DualPoint<Field>>& points, const MultiPoly<Field>& f) {
  if (points.empty()) throw InvalidArgument("empty_point_set", "apolarity needs at least one point");
  for (const auto& p : points) {
    if (p.num_vars() != f.num_vars()) throw InvalidArgument("variable_mismatch", "point and form arity differ");
    require_same_backend(p.field(), f.field());
  }
  detail::require_distinct(points);
  for (int e = 1; e <= f.degree(); ++e) {
    for (const auto& op : detail::vanishing_piece(points, e)) {
      auto image = apolar_apply(op, f);
      if constexpr (Field::exact) {
        if (!image.is_zero()) return false;
      } else {
        Real scale = op.max_abs_coefficient() * f.max_abs_coefficient();
        scale *= Real(factorial(f.degree()), f.field().bits());
        if (!detail::negligible(image, scale)) return false;
      }
    }
  }
  return true;
}

/// Certified presentation target = sum lambda_i * l_i^d.
template <CoefficientField Field>
struct PowersumDecomposition {
  struct Summand {
    DualPoint<Field> point;
    typename Field::Element lambda;
  };

  MultiPoly<Field> target;
  std::vector<Summand> summands;
  /// Max coefficient of target - sum, relative to the max coefficient of
  /// target. Exactly zero on exact backends.
  Real residual;

  std::size_t size() const { return summands.size(); }
  std::string field_tag() const { return target.field().tag(); }
  std::vector<DualPoint<Field>> points() const {
    std::vector<DualPoint<Field>> out;
    for (const auto& s : summands) out.push_back(s.point);
    return out;
  }
};

/// target - sum lambda_i l_i^d, expanded term by term.
template <CoefficientField Field>
MultiPoly<Field> powersum_difference(const MultiPoly<Field>& target,
                                     const std::vector<typename PowersumDecomposition<Field>::Summand>& summands) {
  MultiPoly<Field> diff = target;
  for (const auto& s : summands) diff -= power_of_linear(s.point, target.degree()) * s.lambda;
  return diff;
}

template <CoefficientField Field>
Real relative_residual(const MultiPoly<Field>& target,
                       const std::vector<typename PowersumDecomposition<Field>::Summand>& summands) {
  auto diff = powersum_difference(target, summands);
  if constexpr (Field::exact) {
    if (!diff.is_zero()) throw Error("internal", "exact powersum residual is nonzero");
    return Real(0L, 64);
  } else {
    Real scale = target.max_abs_coefficient();
    Real err = diff.max_abs_coefficient();
    return scale.is_zero() ? err : err / scale;
  }
}

template <CoefficientField Field>
struct PowersumResult {
  std::optional<PowersumDecomposition<Field>> decomposition;
  /// When unsolvable: y with y * [l_i^d] = 0 and y * f != 0 in monomial coordinates.
  std::vector<typename Field::Element> witness;

  bool ok() const { return decomposition.has_value(); }
};

/// Solves f = sum lambda_i l_i^d for the given points. Among solutions, one
/// using as many of the points as possible is returned; zero lambdas are
/// dropped and the remaining points are put in canonical form.
template <CoefficientField Field>
PowersumResult<Field> solve_powersum(const std::vector<DualPoint<Field>>& points, const MultiPoly<Field>& f) {
  if (points.empty()) throw InvalidArgument("empty_point_set", "a powersum needs at least one point");
  for (const auto& p : points) {
    if (p.num_vars() != f.num_vars()) throw InvalidArgument("variable_mismatch", "point and form arity differ");
    require_same_backend(p.field(), f.field());
  }
  detail::require_distinct(points);
  const Field& field = f.field();
  const int d = f.degree();
  MonomialIndex basis(f.num_vars(), d);
  std::vector<std::vector<typename Field::Element>> columns;
  for (const auto& p : points) columns.push_back(power_of_linear(p, d).coefficients(basis));
  auto m = DenseMatrix<Field>::from_columns(field, basis.size(), columns);
  auto rhs = f.coefficients(basis);
  auto solved = solve_linear(m, std::span<const typename Field::Element>(rhs));
  PowersumResult<Field> out;
  if (!solved.consistent()) {
    out.witness = std::move(solved.witness);
    return out;
  }
  std::vector<typename Field::Element> lambda = std::move(*solved.solution);

  std::optional<Real> cutoff;
  if constexpr (!Field::exact) {
    Real scale(0L, field.bits());
    for (const auto& x : lambda) scale = std::max(scale, magnitude(x));
    cutoff = scale * field.tolerance();
  }
  auto is_nonzero = [&](const typename Field::Element& x) {
    if constexpr (Field::exact) {
      return !field.is_zero(x);
    } else {
      return magnitude(x) > *cutoff;
    }
  };
  auto support = [&](const std::vector<typename Field::Element>& v) {
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), is_nonzero));
  };

  // Widen the support with kernel directions: a generic combination is
  // nonzero wherever any of the particular solution or kernel vectors is.
  auto kernel = kernel_basis(m);
  if (!kernel.empty() && support(lambda) < points.size()) {
    std::size_t reachable = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      bool any = is_nonzero(lambda[i]);
      for (const auto& k : kernel) any = any || is_nonzero(k[i]);
      reachable += any ? 1 : 0;
    }
    for (long attempt = 1; attempt <= 64 && support(lambda) < reachable; ++attempt) {
      std::vector<typename Field::Element> trial = lambda;
      for (std::size_t j = 0; j < kernel.size(); ++j) {
        auto t = field.from_int(attempt * static_cast<long>(j + 1) + static_cast<long>(j * j));
        for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += t * kernel[j][i];
      }
      if (support(trial) > support(lambda)) lambda = std::move(trial);
    }
  }

  std::vector<typename PowersumDecomposition<Field>::Summand> summands;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!is_nonzero(lambda[i])) continue;
    // l = c * l_canonical, so lambda l^d = (lambda c^d) l_canonical^d.
    auto canonical = points[i].normalized();
    auto c = points[i].coords()[canonical.leading_index()];
    typename Field::Element scaled = lambda[i];
    for (int k = 0; k < d; ++k) scaled *= c;
    summands.push_back({std::move(canonical), std::move(scaled)});
  }
  Real residual = relative_residual(f, summands);
  out.decomposition = PowersumDecomposition<Field>{f, std::move(summands), std::move(residual)};
  return out;
}

/// Alexander-Hirschowitz: the number of d-th powers of linear forms needed
/// for a general form of degree d in n + 1 variables.
unsigned long generic_rank(int d, int n);

/// Specialness of cubics apolar to canonical-curve sections: the tangent
/// construction uses 2g - 4 cubes while a general cubic in g - 2 variables
/// needs generic_rank(3, g - 3).
struct SpecialnessReport {
  int genus;
  unsigned long construction_count;
  unsigned long generic_count;
  bool is_special;
  long grassmannian_dim;
  long cubic_moduli_dim;
  bool image_deficient;
};

SpecialnessReport specialness_report(int genus);

}  // namespace apolar
