#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "apolar/field.hpp"
#include "apolar/linalg.hpp"
#include "apolar/real.hpp"

namespace apolar {

/// Dense univariate polynomial over Q; coefficients in ascending order with
/// no trailing zeros (the zero polynomial is empty).
class RationalUniPoly {
 public:
  RationalUniPoly() = default;
  explicit RationalUniPoly(std::vector<mpq_class> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  const mpq_class& leading() const { return coeffs_.back(); }

  mpq_class operator()(const mpq_class& x) const;
  RationalUniPoly derivative() const;
  RationalUniPoly monic() const;

  friend RationalUniPoly operator-(const RationalUniPoly& a, const RationalUniPoly& b);
  friend bool operator==(const RationalUniPoly&, const RationalUniPoly&) = default;

  /// Quotient and remainder of Euclidean division.
  static std::pair<RationalUniPoly, RationalUniPoly> divmod(const RationalUniPoly& a, const RationalUniPoly& b);

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

/// Monic greatest common divisor.
RationalUniPoly gcd(RationalUniPoly a, RationalUniPoly b);

/// Yun's algorithm: pairwise coprime squarefree factors with multiplicities,
/// f = c * prod factor_i^mult_i. Factors are monic and of positive degree.
std::vector<std::pair<RationalUniPoly, int>> squarefree_decomposition(const RationalUniPoly& f);

/// All complex roots of a polynomial with complex coefficients (ascending),
/// by Aberth-Ehrlich iteration at `bits` of precision seeded from a double
/// companion-matrix eigensolve. Returns them in no particular order.
/// `accept` is the relative size of the last correction below which a root
/// counts as converged; defaults to 2^-(3 bits / 4). Throws PrecisionExhausted
/// when some root does not settle below `accept`.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs, mpfr_prec_t bits,
                                      std::optional<Real> accept = std::nullopt);

/// A rational number x with f(x) = 0 and |x - z| small, if the continued
/// fraction expansion of Re z finds one.
std::optional<mpq_class> rational_root_near(const RationalUniPoly& f, const Complex& z);

namespace detail {

// Berkowitz over any commutative ring; ascending coefficients.
template <typename T>
std::vector<T> berkowitz(const std::vector<std::vector<T>>& m, const T& one, const T& zero) {
  const std::size_t n = m.size();
  if (n == 0) return {one};
  // Descending coefficients of the characteristic polynomial of the leading
  // (r+1) x (r+1) block, extended one row and column at a time.
  std::vector<T> poly{one, -m[0][0]};
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<T> t{one, -m[r][r]};
    std::vector<T> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = m[i][r];
    for (std::size_t k = 2; k <= r + 1; ++k) {
      T s = zero;
      for (std::size_t j = 0; j < r; ++j) s += m[r][j] * v[j];
      t.push_back(-s);
      if (k == r + 1) break;
      std::vector<T> next(r, zero);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) next[i] += m[i][j] * v[j];
      v = std::move(next);
    }
    std::vector<T> grown(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) grown[i] += t[i - j] * poly[j];
    poly = std::move(grown);
  }
  return std::vector<T>(poly.rbegin(), poly.rend());
}

}  // namespace detail

/// Characteristic polynomial det(t I - M), ascending coefficients, monic,
/// by the division-free Berkowitz algorithm.
template <CoefficientField Field>
std::vector<typename Field::Element> characteristic_polynomial(const DenseMatrix<Field>& m) {
  const Field& field = m.field();
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InvalidArgument("characteristic polynomial needs a square matrix");
  std::vector<std::vector<typename Field::Element>> rows(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i].push_back(m(i, j));
  return detail::berkowitz(rows, field.one(), field.zero());
}

/// Over Q the matrix is scaled to an integer matrix first.
std::vector<mpq_class> characteristic_polynomial(const DenseMatrix<RationalField>& m);

}  // namespace apolar
