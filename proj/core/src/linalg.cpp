#include "apolar/linalg.hpp"

#include <gmpxx.h>

namespace apolar {

namespace {

using IntRow = std::vector<mpz_class>;

// Divides the row by the gcd of its entries.
void make_primitive(IntRow& row, std::size_t from) {
  mpz_class g = 0;
  for (std::size_t j = from; j < row.size(); ++j) {
    if (sgn(row[j]) != 0) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row[j].get_mpz_t());
      if (g == 1) return;
    }
  }
  if (g <= 1) return;
  for (std::size_t j = from; j < row.size(); ++j) {
    if (sgn(row[j]) != 0) mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), g.get_mpz_t());
  }
}

// target <- (p / g) * target - (t / g) * pivot_row on columns [from, end),
// where p = pivot_row[col], t = target[col], g = gcd(p, t). Clears target[col].
void eliminate(IntRow& target, const IntRow& pivot_row, std::size_t col, std::size_t from) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), pivot_row[col].get_mpz_t(), target[col].get_mpz_t());
  mpz_class scale_target = pivot_row[col] / g;
  mpz_class scale_pivot = target[col] / g;
  mpz_class tmp;
  for (std::size_t j = from; j < target.size(); ++j) {
    const bool pivot_zero = sgn(pivot_row[j]) == 0;
    if (sgn(target[j]) != 0 && scale_target != 1) target[j] *= scale_target;
    if (!pivot_zero) {
      mpz_mul(tmp.get_mpz_t(), scale_pivot.get_mpz_t(), pivot_row[j].get_mpz_t());
      target[j] -= tmp;
    }
  }
  target[col] = 0;
  make_primitive(target, from);
}

}  // namespace

RowEchelon<RationalField> row_reduce_rational(const DenseMatrix<RationalField>& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<IntRow> a(rows, IntRow(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class lcm = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      const mpz_class& den = m(i, j).get_den();
      if (den != 1) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const mpq_class& q = m(i, j);
      if (sgn(q) == 0) continue;
      a[i][j] = q.get_num() * (lcm / q.get_den());
    }
    make_primitive(a[i], 0);
  }

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Pivot on the smallest nonzero entry to limit coefficient growth.
    std::size_t pivot_row = rows;
    std::size_t best_size = 0;
    for (std::size_t i = r; i < rows; ++i) {
      if (sgn(a[i][c]) == 0) continue;
      std::size_t size = mpz_sizeinbase(a[i][c].get_mpz_t(), 2);
      if (pivot_row == rows || size < best_size) {
        pivot_row = i;
        best_size = size;
      }
    }
    if (pivot_row == rows) continue;
    std::swap(a[r], a[pivot_row]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(a[i][c]) != 0) eliminate(a[i], a[r], c, c);
    }
    pivots.push_back(c);
    ++r;
  }

  // Back substitution, still fraction free.
  for (std::size_t k = r; k-- > 0;) {
    const std::size_t c = pivots[k];
    for (std::size_t i = 0; i < k; ++i) {
      if (sgn(a[i][c]) != 0) eliminate(a[i], a[k], c, pivots[i]);
    }
  }

  DenseMatrix<RationalField> reduced(RationalField{}, r, cols);
  for (std::size_t k = 0; k < r; ++k) {
    const mpz_class& lead = a[k][pivots[k]];
    for (std::size_t j = pivots[k]; j < cols; ++j) {
      if (sgn(a[k][j]) == 0) continue;
      mpq_class q(a[k][j], lead);
      q.canonicalize();
      reduced(k, j) = q;
    }
  }
  return RowEchelon<RationalField>{std::move(reduced), std::move(pivots)};
}

Real max_magnitude(const DenseMatrix<ComplexField>& m) {
  Real out(0L, m.field().bits());
  for (const auto& x : m.entries()) {
    Real mag = magnitude(x);
    if (mag > out) out = std::move(mag);
  }
  return out;
}

}  // namespace apolar
