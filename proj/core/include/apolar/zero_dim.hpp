#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "apolar/field.hpp"
#include "apolar/multipoly.hpp"
#include "apolar/real.hpp"

namespace apolar {

/// One point of a zero-dimensional projective scheme.
struct SolvedPoint {
  /// Scaled so that the coordinate of largest magnitude is exactly 1.
  std::vector<Complex> coords;
  /// Present when the point is rational; first nonzero coordinate is 1.
  std::optional<std::vector<mpq_class>> exact;
  int multiplicity = 1;
  /// Largest |g(q)| over the equations, relative to the coefficient size of g.
  Real residual;
};

struct ZeroDimOptions {
  /// Target precision. Elimination and root finding run at twice this.
  mpfr_prec_t bits = 256;
  /// Number of (l0, l) pairs tried before giving up on separation.
  int attempts = 8;
};

/// All points of the projective scheme cut out by n forms in n + 1
/// variables, with multiplicities summing to the product of the degrees.
///
/// The forms are put in a Macaulay matrix of degree D + 1, D = sum(d_i - 1),
/// whose quotient has dimension prod d_i when the intersection is finite.
/// The eigenvalues of multiplication by l / l0 on that quotient are the
/// values l(p) / l0(p), and the left eigenvectors recover the points. Over Q
/// the characteristic polynomial is exact, so multiplicities are exact and
/// rational points come out exactly; over C multiplicities are cluster sizes
/// at relative tolerance 2^-(bits/2).
///
/// Throws DegenerateInput("degenerate_slice") when the intersection is not
/// finite and PrecisionExhausted when points cannot be separated.
std::vector<SolvedPoint> solve_zero_dimensional(const std::vector<MultiPoly<RationalField>>& equations,
                                                const ZeroDimOptions& options = {});
std::vector<SolvedPoint> solve_zero_dimensional(const std::vector<MultiPoly<ComplexField>>& equations,
                                                const ZeroDimOptions& options = {});

/// Max |g(q)| / max|coeff g| over the equations, at q scaled to max coordinate 1.
template <CoefficientField Field>
Real relative_equation_residual(const std::vector<MultiPoly<Field>>& equations, const std::vector<Complex>& q);

/// Whether two coordinate vectors are proportional up to relative tolerance 2^-(bits/2).
bool same_projective_point(const std::vector<Complex>& a, const std::vector<Complex>& b, mpfr_prec_t bits);

/// Coordinates scaled so the entry of largest magnitude is exactly 1.
std::vector<Complex> normalize_by_largest(const std::vector<Complex>& v);

}  // namespace apolar
