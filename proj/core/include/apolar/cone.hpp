#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "apolar/apolarity.hpp"
#include "apolar/sections.hpp"
#include "apolar/zero_dim.hpp"

namespace apolar {

using CPoly = MultiPoly<ComplexField>;

/// A point of a zero-dimensional linear slice of X.
using SlicePoint = SolvedPoint;

/// All points of X cut by the given hyperplanes (codim X + #forms = N).
/// Multiplicities sum to deg X on proper slices.
std::vector<SlicePoint> linear_slice_points(const CompleteIntersection& x, const std::vector<QPoly>& forms,
                                            mpfr_prec_t bits = 256);
std::vector<SlicePoint> linear_slice_points(const CompleteIntersection& x, const std::vector<CPoly>& forms,
                                            mpfr_prec_t bits = 256);

/// A hyperplane through L tangent to the curve X at p.
struct TangentDatum {
  SlicePoint p;
  /// h2(p) h1 - h1(p) h2, scaled so its largest coefficient is 1.
  CPoly hyperplane;
  /// Multiplicity of p as a point of X meeting the pencil discriminant.
  int multiplicity = 1;
};

/// Jacobian condition for the pencil spanned by L: the determinant of the
/// gradients of the generators stacked over h_1, h_2. Degree sum (d_i - 1).
QPoly pencil_discriminant(const CompleteIntersection& x, const LinearSubspace& l);

/// Every hyperplane of the pencil through L that is tangent to the curve X,
/// sorted by the tangency point. Multiplicities sum to deg X * sum (d_i - 1)
/// for general L (18 for genus 4, 24 for genus 5).
std::vector<TangentDatum> tangent_pencil(const CompleteIntersection& x, const LinearSubspace& l, mpfr_prec_t bits = 256);

/// Definition check: H is a combination of h_1, h_2, vanishes at p and on
/// the tangent line of X at p, all to relative tolerance 2^-(bits/2).
bool check_tangent_datum(const CompleteIntersection& x, const LinearSubspace& l, const TangentDatum& datum,
                         mpfr_prec_t bits = 256);

/// Whether the hyperplane H meets the curve X at p with contact order
/// exactly 2, by a second-order expansion of the curve at p.
bool has_ordinary_contact(const CompleteIntersection& x, const std::vector<Complex>& p, const CPoly& hyperplane,
                          mpfr_prec_t bits = 256);

/// A decomposition of f_L produced by one of the geometric constructions.
struct DecompositionCertificate {
  std::string method;
  std::vector<Complex> witness_p;
  std::optional<std::vector<mpq_class>> witness_exact;
  std::variant<QPoly, CPoly> hyperplane;
  std::variant<PowersumDecomposition<RationalField>, PowersumDecomposition<ComplexField>> decomposition;
  mpfr_prec_t precision_bits;
  /// Multiplicity of p in the slice and the full slice accounting.
  int witness_multiplicity;
  std::vector<int> slice_multiplicities;

  bool exact() const { return decomposition.index() == 0; }
  std::size_t size() const;
  /// Relative residual; exactly zero for exact certificates.
  Real residual() const;
};

/// Cone construction: slices X by span(p, L), drops p and projects the
/// remaining points from p into L. Expects d - 1 summands.
DecompositionCertificate cone_decomposition(const CompleteIntersection& x, const LinearSubspace& l,
                                            const std::vector<mpq_class>& p, const QPoly& f_l, mpfr_prec_t bits = 256);

/// Tangent construction: slices X by the tangent hyperplane, requires p to
/// be a double point of the slice, and projects the other d - 2 points.
DecompositionCertificate tangent_decomposition(const CompleteIntersection& x, const LinearSubspace& l,
                                               const TangentDatum& datum, const QPoly& f_l, mpfr_prec_t bits = 256);

}  // namespace apolar
