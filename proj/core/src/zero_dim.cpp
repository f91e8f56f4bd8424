#include "apolar/zero_dim.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

#include "apolar/linalg.hpp"
#include "apolar/monomials.hpp"
#include "apolar/univariate.hpp"

namespace apolar {

namespace {

// Raised inside one attempt when l does not separate the points or l0
// vanishes at one of them; the caller retries with fresh probes.
struct ProbeFailure {
  std::string detail;
};

std::vector<long> probe_vector(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<long> v(n);
  for (auto& c : v) {
    do {
      c = static_cast<long>(rng() % 19) - 9;
    } while (c == 0);
  }
  return v;
}

std::size_t largest_index(const std::vector<Complex>& v) {
  std::size_t k = 0;
  Real best(0L, v.front().precision());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Real mag = abs(v[i]);
    if (mag > best) {
      best = std::move(mag);
      k = i;
    }
  }
  return k;
}

const mpq_class& adapt(const mpq_class& x, const RationalField&) { return x; }
Complex adapt(const Complex& x, const ComplexField& f) { return x.with_precision(f.bits()); }

Complex to_complex(const mpq_class& x, mpfr_prec_t bits) { return Complex(x, bits); }
Complex to_complex(const Complex& x, mpfr_prec_t bits) { return x.with_precision(bits); }

template <CoefficientField Field>
MultiPoly<ComplexField> to_complex_poly(const MultiPoly<Field>& f, const ComplexField& cf) {
  MultiPoly<ComplexField> out(cf, f.num_vars(), f.degree());
  for (const auto& [e, c] : f.terms()) out.add_term(e, to_complex(c, cf.bits()));
  return out;
}

template <CoefficientField Field>
DenseMatrix<ComplexField> to_complex_matrix(const DenseMatrix<Field>& m, const ComplexField& cf) {
  DenseMatrix<ComplexField> out(cf, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_complex(m(i, j), cf.bits());
  return out;
}

Real coefficient_scale(const MultiPoly<ComplexField>& g) {
  Real s = g.max_abs_coefficient();
  return s.is_zero() ? Real(1L, g.field().bits()) : s;
}

// R_{D+1} modulo the span of the Macaulay rows, in coordinates of the
// standard (non-pivot) monomials.
template <CoefficientField Field>
struct Quotient {
  using E = typename Field::Element;

  Field field;
  MonomialIndex basis;
  RowEchelon<Field> echelon;
  std::vector<std::size_t> standard;
  std::vector<long> standard_pos;
  std::vector<long> pivot_row;

  std::vector<E> normal_form(const MultiPoly<Field>& v) const {
    std::vector<E> out(standard.size(), field.zero());
    for (const auto& [e, c] : v.terms()) {
      const std::size_t col = basis.index(e);
      if (standard_pos[col] >= 0) {
        out[standard_pos[col]] += c;
      } else {
        const std::size_t k = static_cast<std::size_t>(pivot_row[col]);
        for (std::size_t s = 0; s < standard.size(); ++s) {
          const E& r = echelon.reduced(k, standard[s]);
          if (!field.is_zero(r)) out[s] -= c * r;
        }
      }
    }
    return out;
  }
};

template <CoefficientField Field>
Quotient<Field> build_quotient(const std::vector<MultiPoly<Field>>& eqs, const Field& field, int top) {
  const int vars = eqs.front().num_vars();
  MonomialIndex basis(vars, top);
  std::size_t rows = 0;
  for (const auto& g : eqs) rows += num_monomials(vars, top - g.degree());
  DenseMatrix<Field> mac(field, rows, basis.size());
  std::size_t r = 0;
  Exponent sum(vars);
  for (const auto& g : eqs) {
    for (const auto& m : monomials(vars, top - g.degree())) {
      for (const auto& [e, c] : g.terms()) {
        for (int i = 0; i < vars; ++i) sum[i] = e[i] + m[i];
        mac(r, basis.index(sum)) = c;
      }
      ++r;
    }
  }
  Quotient<Field> q{field, std::move(basis), row_reduce(mac), {}, {}, {}};
  const std::size_t cols = q.basis.size();
  q.standard_pos.assign(cols, -1);
  q.pivot_row.assign(cols, -1);
  for (std::size_t k = 0; k < q.echelon.pivots.size(); ++k) q.pivot_row[q.echelon.pivots[k]] = static_cast<long>(k);
  for (std::size_t j = 0; j < cols; ++j) {
    if (q.pivot_row[j] < 0) {
      q.standard_pos[j] = static_cast<long>(q.standard.size());
      q.standard.push_back(j);
    }
  }
  return q;
}

template <CoefficientField Field>
MultiPoly<Field> linear_from(const Field& field, const std::vector<long>& coeffs) {
  std::vector<typename Field::Element> c;
  for (long v : coeffs) c.push_back(field.from_int(v));
  return DualPoint<Field>(field, std::move(c)).linear_form();
}

struct Candidate {
  std::vector<Complex> coords;
  std::optional<std::vector<mpq_class>> exact;
  int multiplicity;
};

template <CoefficientField Field>
std::vector<typename Field::Element> row_times(const std::vector<typename Field::Element>& e, const DenseMatrix<Field>& z) {
  std::vector<typename Field::Element> out(z.cols(), z.field().zero());
  for (std::size_t i = 0; i < z.rows(); ++i) {
    if (z.field().is_zero(e[i])) continue;
    for (std::size_t j = 0; j < z.cols(); ++j) out[j] += e[i] * z(i, j);
  }
  return out;
}

// Left eigenvector of m for eigenvalue u, required to be unique up to scale.
template <CoefficientField Field>
std::vector<typename Field::Element> left_eigenvector(const DenseMatrix<Field>& m, const typename Field::Element& u) {
  DenseMatrix<Field> shifted = m.transpose();
  for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) -= u;
  auto kernel = kernel_basis(shifted);
  if (kernel.size() != 1) {
    throw ProbeFailure{"eigenspace of dimension " + std::to_string(kernel.size())};
  }
  return kernel.front();
}

// Largest-coordinate scaling, then Newton in the affine chart of that coordinate.
void newton_refine(std::vector<Complex>& q, const std::vector<MultiPoly<ComplexField>>& eqs,
                   const std::vector<std::vector<MultiPoly<ComplexField>>>& grads, const ComplexField& wf) {
  q = normalize_by_largest(q);
  const std::size_t k = largest_index(q);
  const std::size_t n = eqs.size();
  const Real stop = Real::pow2(-(static_cast<long>(wf.bits()) - 8), wf.bits());
  for (int iter = 0; iter < 12; ++iter) {
    DenseMatrix<ComplexField> jac(wf, n, n);
    DenseMatrix<ComplexField> rhs(wf, n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      rhs(i, 0) = -eval_poly(eqs[i], std::span<const Complex>(q));
      std::size_t col = 0;
      for (std::size_t j = 0; j < q.size(); ++j) {
        if (j == k) continue;
        jac(i, col++) = eval_poly(grads[i][j], std::span<const Complex>(q));
      }
    }
    DenseMatrix<ComplexField> delta(wf, n, 1);
    try {
      delta = solve_square(jac, rhs);
    } catch (const DegenerateInput&) {
      return;
    }
    Real largest(0L, wf.bits());
    std::size_t col = 0;
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (j == k) continue;
      q[j] += delta(col, 0);
      largest = std::max(largest, abs(delta(col, 0)));
      ++col;
    }
    if (largest <= stop) return;
  }
}

template <CoefficientField Field>
std::vector<Candidate> eigen_points(const DenseMatrix<Field>& m, const DenseMatrix<Field>& z, mpfr_prec_t bits) {
  const mpfr_prec_t work = 2 * bits;
  const ComplexField wf(work, bits / 2);
  const Real cluster_tol = Real::pow2(-static_cast<long>(bits) / 2, work);
  std::vector<Candidate> out;

  struct Root {
    Complex value;
    int multiplicity;
    std::optional<mpq_class> exact;
  };
  std::vector<Root> roots;

  if constexpr (std::is_same_v<Field, RationalField>) {
    RationalUniPoly chi(characteristic_polynomial(m));
    for (const auto& [factor, mult] : squarefree_decomposition(chi)) {
      if (factor.degree() == 1) {
        mpq_class u = -factor.coeffs()[0] / factor.coeffs()[1];
        roots.push_back({Complex(u, work), mult, u});
        continue;
      }
      std::vector<Complex> coeffs;
      for (const auto& c : factor.coeffs()) coeffs.emplace_back(c, work);
      for (auto& u : polynomial_roots(coeffs, work)) {
        auto rat = rational_root_near(factor, u);
        roots.push_back({rat ? Complex(*rat, work) : u, mult, rat});
      }
    }
  } else {
    auto chi = characteristic_polynomial(to_complex_matrix(m, wf));
    auto raw = polynomial_roots(chi, work, Real::pow2(-3 * static_cast<long>(bits) / 4, work));
    std::vector<std::vector<Complex>> clusters;
    for (auto& u : raw) {
      bool placed = false;
      for (auto& c : clusters) {
        Real scale = std::max(abs(c.front()), Real(1L, work));
        if (abs(u - c.front()) <= cluster_tol * scale) {
          c.push_back(u);
          placed = true;
          break;
        }
      }
      if (!placed) clusters.push_back({u});
    }
    for (const auto& c : clusters) {
      Complex mean(0L, work);
      for (const auto& u : c) mean += u;
      mean /= Complex(static_cast<long>(c.size()), work);
      roots.push_back({mean, static_cast<int>(c.size()), std::nullopt});
    }
  }

  // Distinct roots closer than the cluster tolerance cannot be told apart.
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      Real scale = std::max(abs(roots[i].value), Real(1L, work));
      if (abs(roots[i].value - roots[j].value) <= cluster_tol * scale) {
        throw ProbeFailure{"eigenvalues closer than 2^-" + std::to_string(bits / 2)};
      }
    }
  }

  std::optional<DenseMatrix<ComplexField>> mc, zc;
  for (const auto& root : roots) {
    if constexpr (std::is_same_v<Field, RationalField>) {
      if (root.exact) {
        auto e = left_eigenvector(m, *root.exact);
        auto p = row_times(e, z);
        normalize_leading(p, m.field());
        std::vector<Complex> coords;
        for (const auto& c : p) coords.emplace_back(c, work);
        out.push_back({normalize_by_largest(coords), p, root.multiplicity});
        continue;
      }
    }
    if (!mc) {
      mc = to_complex_matrix(m, wf);
      zc = to_complex_matrix(z, wf);
    }
    auto e = left_eigenvector(*mc, root.value);
    out.push_back({normalize_by_largest(row_times(e, *zc)), std::nullopt, root.multiplicity});
  }
  return out;
}

template <CoefficientField Field>
std::vector<SolvedPoint> solve_impl(const std::vector<MultiPoly<Field>>& input, const Field& work_field,
                                    const ZeroDimOptions& options) {
  if (input.empty()) throw InvalidArgument("no equations");
  const int vars = input.front().num_vars();
  if (static_cast<int>(input.size()) != vars - 1) {
    throw InvalidArgument("a zero-dimensional system in " + std::to_string(vars) + " variables needs " +
                          std::to_string(vars - 1) + " equations, got " + std::to_string(input.size()));
  }
  long delta = 1;
  int big_d = 0;
  std::vector<MultiPoly<Field>> eqs;
  for (const auto& g : input) {
    if (g.num_vars() != vars) throw InvalidArgument("variable_mismatch", "equations have different variable counts");
    if (g.is_zero() || g.degree() < 1) {
      throw DegenerateInput("degenerate_slice", "zero or constant equation in a zero-dimensional system");
    }
    delta *= g.degree();
    big_d += g.degree() - 1;
    MultiPoly<Field> w(work_field, vars, g.degree());
    for (const auto& [e, c] : g.terms()) w.add_term(e, adapt(c, work_field));
    eqs.push_back(std::move(w));
  }
  const mpfr_prec_t bits = options.bits;
  const ComplexField wf(2 * bits, bits / 2);

  auto quotient = build_quotient(eqs, work_field, big_d + 1);
  if (static_cast<long>(quotient.standard.size()) != delta) {
    throw DegenerateInput("degenerate_slice", "quotient has dimension " + std::to_string(quotient.standard.size()) +
                                                  " in degree " + std::to_string(big_d + 1) +
                                                  ", expected " + std::to_string(delta) + " (intersection not finite)");
  }

  std::vector<MultiPoly<ComplexField>> ceqs;
  std::vector<std::vector<MultiPoly<ComplexField>>> grads;
  for (const auto& g : eqs) {
    ceqs.push_back(to_complex_poly(g, wf));
    grads.emplace_back();
    for (int j = 0; j < vars; ++j) grads.back().push_back(partial_derivative(ceqs.back(), j));
  }

  MonomialIndex lower(vars, big_d);
  std::string last_failure;
  for (int attempt = 0; attempt < options.attempts; ++attempt) {
    auto l0 = linear_from(work_field, probe_vector(vars, 0x51ed270b27a3f1c5ULL + 2 * attempt));
    auto l = linear_from(work_field, probe_vector(vars, 0x51ed270b27a3f1c5ULL + 2 * attempt + 1));

    std::vector<std::vector<typename Field::Element>> images;
    for (const auto& beta : lower.basis()) images.push_back(quotient.normal_form(l0 * monomial_form(work_field, beta)));
    auto w = DenseMatrix<Field>::from_columns(work_field, static_cast<std::size_t>(delta), images);
    auto basis_ech = row_reduce(w);
    if (static_cast<long>(basis_ech.rank()) != delta) {
      last_failure = "probe form vanishes at a point";
      continue;
    }
    std::vector<std::vector<typename Field::Element>> p0_cols, p_cols, c_cols;
    for (auto col : basis_ech.pivots) {
      p0_cols.push_back(images[col]);
      p_cols.push_back(quotient.normal_form(l * monomial_form(work_field, lower[col])));
    }
    std::vector<typename Field::Element> l0_coeffs;
    for (int j = 0; j < vars; ++j) {
      Exponent unit(vars, 0);
      unit[j] = 1;
      l0_coeffs.push_back(l0.coefficient(unit));
    }
    auto l0_power = power_of_linear(DualPoint<Field>(work_field, l0_coeffs), big_d);
    for (int j = 0; j < vars; ++j) {
      Exponent unit(vars, 0);
      unit[j] = 1;
      c_cols.push_back(quotient.normal_form(monomial_form(work_field, unit) * l0_power));
    }
    const auto n = static_cast<std::size_t>(delta);
    auto p0 = DenseMatrix<Field>::from_columns(work_field, n, p0_cols);
    DenseMatrix<Field> mult(work_field, 0, 0), coords(work_field, 0, 0);
    try {
      mult = solve_square(p0, DenseMatrix<Field>::from_columns(work_field, n, p_cols));
      coords = solve_square(p0, DenseMatrix<Field>::from_columns(work_field, n, c_cols));
    } catch (const DegenerateInput&) {
      last_failure = "multiplication basis is singular";
      continue;
    }

    std::vector<Candidate> candidates;
    try {
      candidates = eigen_points(mult, coords, bits);
    } catch (const ProbeFailure& f) {
      last_failure = f.detail;
      continue;
    }

    std::vector<SolvedPoint> out;
    const Real accept = Real::pow2(-static_cast<long>(bits) / 2, 2 * bits);
    bool good = true;
    for (auto& c : candidates) {
      if (!c.exact && c.multiplicity == 1) newton_refine(c.coords, ceqs, grads, wf);
      c.coords = normalize_by_largest(c.coords);
      Real residual = c.exact ? Real(0L, 2 * bits) : relative_equation_residual(ceqs, c.coords);
      if (residual > accept) {
        good = false;
        last_failure = "point residual " + residual.to_string(6) + " above tolerance";
        break;
      }
      out.push_back({std::move(c.coords), std::move(c.exact), c.multiplicity, std::move(residual)});
    }
    if (!good) continue;
    long total = 0;
    for (const auto& p : out) total += p.multiplicity;
    if (total != delta) {
      last_failure = "multiplicities sum to " + std::to_string(total);
      continue;
    }
    std::sort(out.begin(), out.end(), [](const SolvedPoint& a, const SolvedPoint& b) {
      for (std::size_t i = 0; i < a.coords.size(); ++i) {
        double ar = a.coords[i].real().to_double(), br = b.coords[i].real().to_double();
        if (ar != br) return ar < br;
        double ai = a.coords[i].imag().to_double(), bi = b.coords[i].imag().to_double();
        if (ai != bi) return ai < bi;
      }
      return false;
    });
    return out;
  }
  throw PrecisionExhausted("could not separate the points of the slice (" + last_failure + ")");
}

}  // namespace

std::vector<Complex> normalize_by_largest(const std::vector<Complex>& v) {
  const std::size_t k = largest_index(v);
  if (v[k].is_zero()) throw InvalidArgument("zero_point", "cannot normalize the zero vector");
  std::vector<Complex> out;
  Complex inv = Complex(1L, v[k].precision()) / v[k];
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(i == k ? Complex(1L, v[k].precision()) : v[i] * inv);
  return out;
}

bool same_projective_point(const std::vector<Complex>& a, const std::vector<Complex>& b, mpfr_prec_t bits) {
  if (a.size() != b.size()) return false;
  auto na = normalize_by_largest(a);
  const std::size_t k = largest_index(na);
  const Real tol = Real::pow2(-static_cast<long>(bits) / 2, bits);
  Real bk = abs(b[k]);
  Real bmax(0L, bits);
  for (const auto& c : b) bmax = std::max(bmax, abs(c));
  if (bk <= bmax * tol) return false;
  Complex inv = Complex(1L, bits) / b[k];
  for (std::size_t i = 0; i < na.size(); ++i) {
    if (abs(na[i] - b[i] * inv) > tol) return false;
  }
  return true;
}

template <CoefficientField Field>
Real relative_equation_residual(const std::vector<MultiPoly<Field>>& equations, const std::vector<Complex>& q) {
  const mpfr_prec_t bits = q.front().precision();
  const ComplexField cf(bits);
  auto nq = normalize_by_largest(q);
  Real worst(0L, bits);
  for (const auto& g : equations) {
    auto cg = to_complex_poly(g, cf);
    Real value = abs(eval_poly(cg, std::span<const Complex>(nq)));
    worst = std::max(worst, value / coefficient_scale(cg));
  }
  return worst;
}

template Real relative_equation_residual(const std::vector<MultiPoly<RationalField>>&, const std::vector<Complex>&);
template Real relative_equation_residual(const std::vector<MultiPoly<ComplexField>>&, const std::vector<Complex>&);

std::vector<SolvedPoint> solve_zero_dimensional(const std::vector<MultiPoly<RationalField>>& equations,
                                                const ZeroDimOptions& options) {
  return solve_impl(equations, RationalField{}, options);
}

std::vector<SolvedPoint> solve_zero_dimensional(const std::vector<MultiPoly<ComplexField>>& equations,
                                                const ZeroDimOptions& options) {
  return solve_impl(equations, ComplexField(2 * options.bits, options.bits / 2), options);
}

}  // namespace apolar
