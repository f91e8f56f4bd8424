#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "apolar/apolarity.hpp"
#include "apolar/field.hpp"
#include "apolar/linalg.hpp"
#include "apolar/multipoly.hpp"

namespace apolar {

using QPoly = MultiPoly<RationalField>;

/// A complete intersection X = Z(g_1, ..., g_c) in P^N together with rational
/// points known to lie on it.
struct CompleteIntersection {
  int ambient_dim = 0;
  std::vector<QPoly> generators;
  std::vector<std::vector<mpq_class>> witness_points;

  int num_vars() const { return ambient_dim + 1; }
  int codim() const { return static_cast<int>(generators.size()); }
  int dimension() const { return ambient_dim - codim(); }
  long degree() const;
  /// Socle degree of an Artinian reduction: sum (d_i - 1).
  int socle_degree() const;

  /// Checks generator shapes, that each witness point lies on X and that the
  /// Jacobian has full rank c there. Throws InvalidArgument on failure.
  void validate() const;
};

/// Jacobian of the generators at a point, c x (N + 1).
template <CoefficientField Field>
DenseMatrix<Field> jacobian_at(const std::vector<QPoly>& generators, const std::vector<typename Field::Element>& q,
                               const Field& field) {
  const int vars = static_cast<int>(q.size());
  DenseMatrix<Field> jac(field, generators.size(), vars);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (int j = 0; j < vars; ++j) {
      jac(i, j) = eval_poly(change_field(partial_derivative(generators[i], j), field),
                            std::span<const typename Field::Element>(q));
    }
  }
  return jac;
}

/// A linear subspace Z(h_1, ..., h_k) of P^N with a coordinate chart: the
/// pivot variables are expressed through the free ones.
class LinearSubspace {
 public:
  /// Pivots default to the lexicographically first independent columns.
  /// Throws InvalidArgument("dependent_forms") for dependent h_i and
  /// DegenerateInput("degenerate_chart") for an invalid explicit pivot set.
  static LinearSubspace from_forms(std::vector<QPoly> forms,
                                   std::optional<std::vector<std::size_t>> pivots = std::nullopt);

  int num_vars() const { return num_vars_; }
  int codim() const { return static_cast<int>(forms_.size()); }
  int chart_vars() const { return static_cast<int>(free_.size()); }
  const std::vector<QPoly>& forms() const { return forms_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<std::size_t>& free_variables() const { return free_; }

  /// For each ambient variable, its expression as a linear form in the chart variables.
  const std::vector<QPoly>& chart_images() const { return images_; }

  /// Restriction of an ambient form to L, as a form in the chart variables.
  QPoly restrict(const QPoly& f) const { return substitute_linear(f, images_); }

  /// Chart coordinates of a point of L.
  template <class T>
  std::vector<T> chart_coordinates(const std::vector<T>& ambient) const {
    std::vector<T> out;
    for (auto j : free_) out.push_back(ambient[j]);
    return out;
  }

  /// The ambient point with the given chart coordinates.
  template <class T>
  std::vector<T> lift(const std::vector<T>& chart) const {
    std::vector<T> out(num_vars_, chart.front() - chart.front());
    for (std::size_t j = 0; j < free_.size(); ++j) out[free_[j]] = chart[j];
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      for (std::size_t j = 0; j < free_.size(); ++j) {
        if (sgn(pivot_map_[i][j]) != 0) out[pivots_[i]] += scalar_as<T>(pivot_map_[i][j], chart[j]) * chart[j];
      }
    }
    return out;
  }

 private:
  template <class T>
  static T scalar_as(const mpq_class& c, const T& like);

  int num_vars_ = 0;
  std::vector<QPoly> forms_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_;
  std::vector<std::vector<mpq_class>> pivot_map_;
  std::vector<QPoly> images_;
};

template <>
inline mpq_class LinearSubspace::scalar_as<mpq_class>(const mpq_class& c, const mpq_class&) {
  return c;
}
template <>
inline Complex LinearSubspace::scalar_as<Complex>(const mpq_class& c, const Complex& like) {
  return Complex(c, like.precision());
}

/// Hilbert function prod (1 + t + ... + t^(d_i - 1)) of an Artinian complete
/// intersection with the given generator degrees.
std::vector<int> expected_hilbert_function(const std::vector<int>& degrees);

/// Pieces of (I_X + (h)) / (h) in the chart variables, degrees 1..socle.
/// Throws DegenerateInput("non_general_section") unless the quotient has
/// the expected Hilbert function and vanishes past the socle degree.
GradedIdealPieces<RationalField> ideal_pieces_after_reduction(const CompleteIntersection& x, const LinearSubspace& l);

/// The form f_L in the chart variables whose apolar ideal is the reduction.
QPoly apolar_hypersurface(const CompleteIntersection& x, const LinearSubspace& l);

/// Random L of the given codimension with integer coefficients in
/// [-range, range], drawn from `rng`; redrawn while the forms are dependent.
LinearSubspace sample_linear_subspace(int num_vars, int codim, std::mt19937_64& rng, int range = 10);

/// Sampled section with its apolar form, for codim(L) = dim X + 1.
struct SectionResult {
  LinearSubspace subspace;
  QPoly form;
  HilbertFunction hilbert;
  int attempts;
};

/// Samples L from `seed`, resampling once if the first draw is not general.
SectionResult sample_section(const CompleteIntersection& x, std::uint64_t seed, int range = 10);

}  // namespace apolar
