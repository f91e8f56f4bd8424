#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "apolar/errors.hpp"
#include "apolar/field.hpp"

namespace apolar {

/// Row-major dense matrix over a coefficient field.
template <CoefficientField Field>
class DenseMatrix {
 public:
  using Element = typename Field::Element;

  DenseMatrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, field_.zero()) {}

  DenseMatrix(Field field, std::size_t rows, std::size_t cols, std::vector<Element> entries)
      : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw InvalidArgument("matrix has " + std::to_string(entries_.size()) + " entries, expected " +
                            std::to_string(rows_ * cols_));
    }
  }

  static DenseMatrix identity(const Field& field, std::size_t n) {
    DenseMatrix out(field, n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = field.one();
    return out;
  }

  /// Matrix whose columns are the given vectors (all of length `rows`).
  static DenseMatrix from_columns(const Field& field, std::size_t rows, const std::vector<std::vector<Element>>& cols) {
    DenseMatrix out(field, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw InvalidArgument("column has wrong length");
      for (std::size_t i = 0; i < rows; ++i) out(i, j) = cols[j][i];
    }
    return out;
  }

  static DenseMatrix from_rows(const Field& field, std::size_t cols, const std::vector<std::vector<Element>>& rows) {
    DenseMatrix out(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InvalidArgument("row has wrong length");
      for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows[i][j];
    }
    return out;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Element>& entries() const { return entries_; }

  Element& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const Element> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }

  DenseMatrix transpose() const {
    DenseMatrix out(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  std::vector<Element> apply(std::span<const Element> v) const {
    if (v.size() != cols_) throw InvalidArgument("vector length does not match matrix columns");
    std::vector<Element> out(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!field_.is_zero((*this)(i, j)) && !field_.is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
      }
    }
    return out;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix product shape mismatch");
    require_same_backend(a.field_, b.field_);
    DenseMatrix out(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.field_.is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    }
    return out;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> entries_;
};

/// Reduced row echelon form: `reduced` has `rank` rows, each with a leading 1
/// in column `pivots[k]` and zeros in every other pivot column. Pivot columns
/// are the lexicographically first independent set of columns.
template <CoefficientField Field>
struct RowEchelon {
  DenseMatrix<Field> reduced;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return pivots.size(); }
};

/// Exact rational elimination with fraction-free (primitive integer row)
/// updates; the result is converted back to the canonical rational RREF.
RowEchelon<RationalField> row_reduce_rational(const DenseMatrix<RationalField>& m);

/// Largest entry magnitude; used as the scale for floating rank decisions.
Real max_magnitude(const DenseMatrix<ComplexField>& m);

template <CoefficientField Field>
RowEchelon<Field> row_reduce(const DenseMatrix<Field>& m) {
  if constexpr (std::is_same_v<Field, RationalField>) {
    return row_reduce_rational(m);
  } else {
    const Field& field = m.field();
    DenseMatrix<Field> a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivots;
    std::optional<Real> cutoff;
    if constexpr (!Field::exact) cutoff = max_magnitude(m) * field.tolerance();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
      std::size_t pivot_row = rows;
      if constexpr (Field::exact) {
        for (std::size_t i = r; i < rows; ++i) {
          if (!field.is_zero(a(i, c))) {
            pivot_row = i;
            break;
          }
        }
      } else {
        Real best = *cutoff;
        for (std::size_t i = r; i < rows; ++i) {
          Real mag = magnitude(a(i, c));
          if (mag > best) {
            best = std::move(mag);
            pivot_row = i;
          }
        }
      }
      if (pivot_row == rows) continue;
      if (pivot_row != r) {
        for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(pivot_row, j));
      }
      typename Field::Element inv = field.one() / a(r, c);
      for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == r || field.is_zero(a(i, c))) continue;
        typename Field::Element factor = a(i, c);
        for (std::size_t j = c; j < cols; ++j) {
          if (!field.is_zero(a(r, j))) a(i, j) -= factor * a(r, j);
        }
        a(i, c) = field.zero();
      }
      pivots.push_back(c);
      ++r;
    }
    DenseMatrix<Field> reduced(field, r, cols);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < cols; ++j) reduced(i, j) = a(i, j);
    return RowEchelon<Field>{std::move(reduced), std::move(pivots)};
  }
}

template <CoefficientField Field>
std::size_t rank(const DenseMatrix<Field>& m) {
  return row_reduce(m).rank();
}

/// Right-kernel basis read off the RREF: one vector per non-pivot column j,
/// equal to e_j minus the RREF column j spread over the pivot positions.
template <CoefficientField Field>
std::vector<std::vector<typename Field::Element>> kernel_from_echelon(const RowEchelon<Field>& ech) {
  const Field& field = ech.reduced.field();
  const std::size_t cols = ech.reduced.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<std::vector<typename Field::Element>> basis;
  for (std::size_t j = 0; j < cols; ++j) {
    if (is_pivot[j]) continue;
    std::vector<typename Field::Element> v(cols, field.zero());
    v[j] = field.one();
    for (std::size_t k = 0; k < ech.pivots.size(); ++k) v[ech.pivots[k]] = -ech.reduced(k, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <CoefficientField Field>
std::vector<std::vector<typename Field::Element>> kernel_basis(const DenseMatrix<Field>& m) {
  return kernel_from_echelon(row_reduce(m));
}

/// Outcome of solve_linear: either a particular solution, or a witness y with
/// y M = 0 and y b != 0 proving that M x = b has no solution.
template <CoefficientField Field>
struct LinearSolution {
  std::optional<std::vector<typename Field::Element>> solution;
  std::vector<typename Field::Element> witness;

  bool consistent() const { return solution.has_value(); }
};

template <CoefficientField Field>
typename Field::Element dot(std::span<const typename Field::Element> a, std::span<const typename Field::Element> b,
                            const Field& field) {
  typename Field::Element s = field.zero();
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Scales a vector so that its first significant entry is 1.
template <CoefficientField Field>
void normalize_leading(std::vector<typename Field::Element>& v, const Field& field) {
  std::size_t lead = v.size();
  if constexpr (Field::exact) {
    for (std::size_t i = 0; i < v.size() && lead == v.size(); ++i)
      if (!field.is_zero(v[i])) lead = i;
  } else {
    Real largest(0L, field.bits());
    for (const auto& c : v) largest = std::max(largest, magnitude(c));
    Real cutoff = largest * field.tolerance();
    for (std::size_t i = 0; i < v.size() && lead == v.size(); ++i)
      if (magnitude(v[i]) > cutoff) lead = i;
  }
  if (lead == v.size()) return;
  typename Field::Element inv = field.one() / v[lead];
  for (auto& c : v) c *= inv;
}

template <CoefficientField Field>
LinearSolution<Field> solve_linear(const DenseMatrix<Field>& m, std::span<const typename Field::Element> b) {
  if (b.size() != m.rows()) throw InvalidArgument("right-hand side length does not match matrix rows");
  const Field& field = m.field();
  DenseMatrix<Field> aug(field, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto ech = row_reduce(aug);
  LinearSolution<Field> out;
  if (!ech.pivots.empty() && ech.pivots.back() == m.cols()) {
    // Inconsistent: pick a left-kernel vector of M that does not annihilate b.
    auto left = kernel_basis(m.transpose());
    std::optional<Real> cutoff;
    if constexpr (!Field::exact) {
      Real scale = max_magnitude(m);
      for (const auto& x : b) scale = std::max(scale, magnitude(x));
      cutoff = scale * field.tolerance();
    }
    for (auto& y : left) {
      auto yb = dot<Field>(y, b, field);
      bool nonzero;
      if constexpr (Field::exact) {
        nonzero = !field.is_zero(yb);
      } else {
        nonzero = magnitude(yb) > *cutoff;
      }
      if (nonzero) {
        normalize_leading(y, field);
        out.witness = std::move(y);
        return out;
      }
    }
    throw Error("internal", "inconsistent system without a left-kernel witness");
  }
  std::vector<typename Field::Element> x(m.cols(), field.zero());
  for (std::size_t k = 0; k < ech.pivots.size(); ++k) x[ech.pivots[k]] = ech.reduced(k, m.cols());
  out.solution = std::move(x);
  return out;
}

/// Solves A X = B for square invertible A; throws DegenerateInput otherwise.
template <CoefficientField Field>
DenseMatrix<Field> solve_square(const DenseMatrix<Field>& a, const DenseMatrix<Field>& b) {
  if (a.rows() != a.cols() || b.rows() != a.rows()) throw InvalidArgument("solve_square shape mismatch");
  const Field& field = a.field();
  const std::size_t n = a.rows();
  DenseMatrix<Field> aug(field, n, n + b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
  }
  auto ech = row_reduce(aug);
  if (ech.rank() < n || ech.pivots[n - 1] != n - 1) throw DegenerateInput("singular_matrix", "matrix is singular");
  DenseMatrix<Field> x(field, n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = ech.reduced(i, n + j);
  return x;
}

}  // namespace apolar
