#include "apolar/cone.hpp"

#include <algorithm>
#include <numeric>

namespace apolar {

namespace {

Complex evaluate(const QPoly& f, const std::vector<Complex>& p) {
  const ComplexField cf(p.front().precision());
  return eval_poly(change_field(f, cf), std::span<const Complex>(p));
}

Complex evaluate(const CPoly& f, const std::vector<Complex>& p) {
  return eval_poly(f, std::span<const Complex>(p));
}

mpq_class evaluate(const QPoly& f, const std::vector<mpq_class>& p) {
  return eval_poly(f, std::span<const mpq_class>(p));
}

Real max_abs(const std::vector<Complex>& v) {
  Real out(0L, v.front().precision());
  for (const auto& c : v) out = std::max(out, abs(c));
  return out;
}

std::vector<Complex> to_complex(const std::vector<mpq_class>& v, mpfr_prec_t bits) {
  std::vector<Complex> out;
  for (const auto& c : v) out.emplace_back(c, bits);
  return out;
}

void require_on_curve_setup(const CompleteIntersection& x, const LinearSubspace& l) {
  if (l.num_vars() != x.num_vars()) throw InvalidArgument("variable_mismatch", "L and X live in different spaces");
  if (x.dimension() != 1) throw InvalidArgument("the constructions are implemented for curves only");
  if (l.codim() != 2) throw InvalidArgument("L must have codimension 2 for a curve");
}

// Projects the slice (minus p) from p into L and solves the powersum
// against f_L in the chart variables.
DecompositionCertificate finish(const LinearSubspace& l,
                                const std::optional<std::vector<mpq_class>>& p_exact,
                                const std::vector<Complex>& p_coords, const std::vector<SlicePoint>& slice,
                                std::size_t witness, const QPoly& f_l, mpfr_prec_t bits, std::string method,
                                std::variant<QPoly, CPoly> hyperplane) {
  const auto& h1 = l.forms()[0];
  const auto& h2 = l.forms()[1];
  std::vector<int> mults;
  for (const auto& s : slice) mults.push_back(s.multiplicity);

  bool all_exact = p_exact.has_value();
  for (std::size_t i = 0; i < slice.size(); ++i) {
    if (i == witness) continue;
    if (slice[i].multiplicity != 1) {
      throw DegenerateInput("improper_slice", "slice has a non-reduced point away from p (multiplicity " +
                                                  std::to_string(slice[i].multiplicity) + ")");
    }
    all_exact = all_exact && slice[i].exact.has_value();
  }

  DecompositionCertificate cert{std::move(method),
                                normalize_by_largest(p_coords),
                                std::nullopt,
                                std::move(hyperplane),
                                PowersumDecomposition<RationalField>{f_l, {}, Real(0L, 64)},
                                bits,
                                slice[witness].multiplicity,
                                std::move(mults)};
  if (p_exact) {
    auto canon = *p_exact;
    normalize_leading(canon, RationalField{});
    cert.witness_exact = std::move(canon);
  }

  try {
    if (all_exact) {
      const RationalField q;
      const auto& p = *p_exact;
      const mpq_class a1 = evaluate(h1, p), a2 = evaluate(h2, p);
      const bool use_first = abs(a1) >= abs(a2);
      std::vector<DualPoint<RationalField>> points;
      for (std::size_t i = 0; i < slice.size(); ++i) {
        if (i == witness) continue;
        const auto& s = *slice[i].exact;
        const mpq_class hq = use_first ? evaluate(h1, s) : evaluate(h2, s);
        const mpq_class& hp = use_first ? a1 : a2;
        std::vector<mpq_class> r(p.size());
        for (std::size_t j = 0; j < p.size(); ++j) r[j] = hq * p[j] - hp * s[j];
        points.emplace_back(q, l.chart_coordinates(r));
      }
      auto solved = solve_powersum(points, f_l);
      if (!solved.ok()) throw DegenerateInput("powersum_inconsistent", "projected points are not apolar to f_L");
      cert.decomposition = std::move(*solved.decomposition);
    } else {
      const mpfr_prec_t work = 2 * bits;
      const ComplexField cf(bits);
      std::vector<Complex> p = p_exact ? to_complex(*p_exact, work) : p_coords;
      for (auto& c : p) c = c.with_precision(work);
      const Complex a1 = evaluate(h1, p), a2 = evaluate(h2, p);
      const bool use_first = abs(a1) >= abs(a2);
      std::vector<DualPoint<ComplexField>> points;
      for (std::size_t i = 0; i < slice.size(); ++i) {
        if (i == witness) continue;
        std::vector<Complex> s = slice[i].exact ? to_complex(*slice[i].exact, work) : slice[i].coords;
        const Complex hq = use_first ? evaluate(h1, s) : evaluate(h2, s);
        const Complex& hp = use_first ? a1 : a2;
        std::vector<Complex> r(p.size());
        for (std::size_t j = 0; j < p.size(); ++j) r[j] = hq * p[j] - hp * s[j];
        r = normalize_by_largest(r);
        std::vector<Complex> chart;
        for (const auto& c : l.chart_coordinates(r)) chart.push_back(c.with_precision(bits));
        points.emplace_back(cf, std::move(chart));
      }
      auto solved = solve_powersum(points, change_field(f_l, cf));
      if (!solved.ok()) throw DegenerateInput("powersum_inconsistent", "projected points are not apolar to f_L");
      cert.decomposition = std::move(*solved.decomposition);
    }
  } catch (const InvalidArgument& e) {
    if (e.kind() == "duplicate_points" || e.kind() == "zero_point") {
      throw DegenerateInput("degenerate_projection", e.what());
    }
    throw;
  }
  return cert;
}

}  // namespace

std::size_t DecompositionCertificate::size() const {
  return std::visit([](const auto& d) { return d.size(); }, decomposition);
}

Real DecompositionCertificate::residual() const {
  return std::visit([](const auto& d) { return d.residual; }, decomposition);
}

std::vector<SlicePoint> linear_slice_points(const CompleteIntersection& x, const std::vector<QPoly>& forms,
                                            mpfr_prec_t bits) {
  if (x.codim() + static_cast<int>(forms.size()) != x.ambient_dim) {
    throw InvalidArgument("slice must have dimension codim X to meet X in finitely many points");
  }
  std::vector<QPoly> eqs = x.generators;
  for (const auto& h : forms) {
    if (h.degree() != 1 || h.num_vars() != x.num_vars()) throw InvalidArgument("cutting forms must be linear");
    eqs.push_back(h);
  }
  return solve_zero_dimensional(eqs, ZeroDimOptions{bits});
}

std::vector<SlicePoint> linear_slice_points(const CompleteIntersection& x, const std::vector<CPoly>& forms,
                                            mpfr_prec_t bits) {
  if (x.codim() + static_cast<int>(forms.size()) != x.ambient_dim) {
    throw InvalidArgument("slice must have dimension codim X to meet X in finitely many points");
  }
  const ComplexField cf(2 * bits, bits / 2);
  std::vector<CPoly> eqs;
  for (const auto& g : x.generators) eqs.push_back(change_field(g, cf));
  for (const auto& h : forms) {
    if (h.degree() != 1 || h.num_vars() != x.num_vars()) throw InvalidArgument("cutting forms must be linear");
    CPoly w(cf, h.num_vars(), 1);
    for (const auto& [e, c] : h.terms()) w.add_term(e, c.with_precision(2 * bits));
    eqs.push_back(std::move(w));
  }
  return solve_zero_dimensional(eqs, ZeroDimOptions{bits});
}

QPoly pencil_discriminant(const CompleteIntersection& x, const LinearSubspace& l) {
  require_on_curve_setup(x, l);
  const RationalField q;
  const int n = x.num_vars();
  // rows[i][j]: gradients of the generators, then the coefficients of h_1, h_2.
  std::vector<std::vector<QPoly>> rows;
  for (const auto& g : x.generators) {
    rows.emplace_back();
    for (int j = 0; j < n; ++j) rows.back().push_back(partial_derivative(g, j));
  }
  for (const auto& h : l.forms()) {
    rows.emplace_back();
    for (int j = 0; j < n; ++j) {
      Exponent e(n, 0);
      e[j] = 1;
      rows.back().push_back(QPoly::monomial(q, Exponent(n, 0), h.coefficient(e)));
    }
  }
  QPoly det(q, n, x.socle_degree());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    QPoly term = QPoly::monomial(q, Exponent(n, 0), inversions % 2 == 0 ? 1 : -1);
    bool zero = false;
    for (int i = 0; i < n && !zero; ++i) {
      const auto& entry = rows[i][perm[i]];
      if (entry.is_zero()) zero = true;
      else term = term * entry;
    }
    if (!zero) det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

std::vector<TangentDatum> tangent_pencil(const CompleteIntersection& x, const LinearSubspace& l, mpfr_prec_t bits) {
  auto delta = pencil_discriminant(x, l);
  if (delta.is_zero()) throw DegenerateInput("degenerate_pencil", "pencil discriminant vanishes identically");
  std::vector<QPoly> eqs = x.generators;
  eqs.push_back(delta);
  auto points = solve_zero_dimensional(eqs, ZeroDimOptions{bits});
  const ComplexField cf(2 * bits, bits / 2);
  const auto h1 = change_field(l.forms()[0], cf);
  const auto h2 = change_field(l.forms()[1], cf);
  std::vector<TangentDatum> out;
  for (auto& p : points) {
    std::vector<Complex> coords;
    for (const auto& c : p.coords) coords.push_back(c.with_precision(2 * bits));
    Complex a1 = evaluate(h1, coords), a2 = evaluate(h2, coords);
    if (std::max(abs(a1), abs(a2)) <= cf.tolerance()) {
      throw DegenerateInput("point_in_L", "L meets X at a tangency candidate");
    }
    CPoly hyperplane = h1 * a2 - h2 * a1;
    Real scale = hyperplane.max_abs_coefficient();
    Complex inv = Complex(1L, 2 * bits) / Complex(scale, Real(0L, 2 * bits));
    hyperplane *= inv;
    const int mult = p.multiplicity;
    out.push_back(TangentDatum{std::move(p), std::move(hyperplane), mult});
  }
  return out;
}

bool check_tangent_datum(const CompleteIntersection& x, const LinearSubspace& l, const TangentDatum& datum,
                         mpfr_prec_t bits) {
  const ComplexField cf(2 * bits, bits / 2);
  const Real tol = Real::pow2(-static_cast<long>(bits) / 2, 2 * bits);
  const int n = x.num_vars();
  std::vector<Complex> p;
  for (const auto& c : datum.p.coords) p.push_back(c.with_precision(2 * bits));
  p = normalize_by_largest(p);
  DenseMatrix<ComplexField> stack(cf, 3, n);
  for (int j = 0; j < n; ++j) {
    Exponent e(n, 0);
    e[j] = 1;
    stack(0, j) = datum.hyperplane.coefficient(e).with_precision(2 * bits);
    stack(1, j) = Complex(l.forms()[0].coefficient(e), 2 * bits);
    stack(2, j) = Complex(l.forms()[1].coefficient(e), 2 * bits);
  }
  if (rank(stack) != 2) return false;
  const Real hscale = datum.hyperplane.max_abs_coefficient();
  if (abs(evaluate(datum.hyperplane, p)) > tol * hscale) return false;
  auto jac = jacobian_at(x.generators, p, cf);
  auto kernel = kernel_basis(jac);
  if (kernel.size() != 2) return false;
  for (const auto& k : kernel) {
    if (abs(evaluate(datum.hyperplane, k)) > tol * hscale * max_abs(k)) return false;
  }
  return true;
}

bool has_ordinary_contact(const CompleteIntersection& x, const std::vector<Complex>& p_in, const CPoly& hyperplane,
                          mpfr_prec_t bits) {
  const mpfr_prec_t work = 2 * bits;
  const ComplexField cf(work, bits / 2);
  std::vector<Complex> p;
  for (const auto& c : p_in) p.push_back(c.with_precision(work));
  p = normalize_by_largest(p);
  const int n = x.num_vars();
  auto jac = jacobian_at(x.generators, p, cf);
  auto kernel = kernel_basis(jac);
  if (kernel.empty()) return false;
  // Tangent direction: the kernel vector with the largest part orthogonal to p.
  Complex pp(0L, work);
  for (const auto& c : p) pp += conj(c) * c;
  std::vector<Complex> v;
  Real best(-1L, work);
  for (const auto& k : kernel) {
    Complex pk(0L, work);
    for (int i = 0; i < n; ++i) pk += conj(p[i]) * k[i];
    Complex coef = pk / pp;
    std::vector<Complex> r(n);
    for (int i = 0; i < n; ++i) r[i] = k[i] - coef * p[i];
    Real size = max_abs(r);
    if (size > best) {
      best = size;
      v = std::move(r);
    }
  }
  Real vscale = max_abs(v);
  for (auto& c : v) c /= Complex(vscale, Real(0L, work));
  // Second-order term: J w = -(v^T Hess(g_i)(p) v).
  std::vector<Complex> b;
  for (const auto& g : x.generators) {
    Complex s(0L, work);
    for (int i = 0; i < n; ++i) {
      auto gi = partial_derivative(g, i);
      for (int j = 0; j < n; ++j) {
        auto gij = partial_derivative(gi, j);
        if (gij.is_zero()) continue;
        s += v[i] * v[j] * evaluate(gij, p);
      }
    }
    b.push_back(-s);
  }
  auto solved = solve_linear(jac, std::span<const Complex>(b));
  if (!solved.consistent()) return false;
  const auto& w = *solved.solution;
  Real size = max_abs(w);
  if (size < Real(1L, work)) size = Real(1L, work);
  const Real threshold = Real::pow2(-static_cast<long>(bits) / 4, work);
  return abs(evaluate(hyperplane, w)) > threshold * hyperplane.max_abs_coefficient() * size;
}

DecompositionCertificate cone_decomposition(const CompleteIntersection& x, const LinearSubspace& l,
                                            const std::vector<mpq_class>& p, const QPoly& f_l, mpfr_prec_t bits) {
  require_on_curve_setup(x, l);
  if (static_cast<int>(p.size()) != x.num_vars()) throw InvalidArgument("witness point has the wrong length");
  for (const auto& g : x.generators) {
    if (sgn(evaluate(g, p)) != 0) throw InvalidArgument("not_on_x", "witness point does not lie on X");
  }
  const mpq_class a1 = evaluate(l.forms()[0], p), a2 = evaluate(l.forms()[1], p);
  if (sgn(a1) == 0 && sgn(a2) == 0) throw DegenerateInput("point_in_L", "the witness point lies on L");
  QPoly span_form = l.forms()[1] * a1 - l.forms()[0] * a2;
  auto slice = linear_slice_points(x, {span_form}, bits);

  std::vector<mpq_class> canon = p;
  normalize_leading(canon, RationalField{});
  std::size_t witness = slice.size();
  for (std::size_t i = 0; i < slice.size(); ++i) {
    if (slice[i].exact && *slice[i].exact == canon) witness = i;
  }
  if (witness == slice.size()) throw Error("internal", "witness point missing from its own slice");
  return finish(l, p, to_complex(p, 2 * bits), slice, witness, f_l, bits, "cone", std::move(span_form));
}

DecompositionCertificate tangent_decomposition(const CompleteIntersection& x, const LinearSubspace& l,
                                               const TangentDatum& datum, const QPoly& f_l, mpfr_prec_t bits) {
  require_on_curve_setup(x, l);
  auto slice = linear_slice_points(x, std::vector<CPoly>{datum.hyperplane}, bits);
  std::size_t witness = slice.size();
  for (std::size_t i = 0; i < slice.size(); ++i) {
    if (same_projective_point(slice[i].coords, datum.p.coords, bits)) witness = i;
  }
  if (witness == slice.size()) throw Error("internal", "tangency point missing from its tangent slice");
  if (slice[witness].multiplicity != 2) {
    throw DegenerateInput("double_point_condition", "tangency point has multiplicity " +
                                                        std::to_string(slice[witness].multiplicity) +
                                                        " in its hyperplane section, expected 2");
  }
  if (!has_ordinary_contact(x, datum.p.coords, datum.hyperplane, bits)) {
    throw DegenerateInput("double_point_condition", "hyperplane has contact of order above 2 at p");
  }
  return finish(l, datum.p.exact, datum.p.coords, slice, witness, f_l, bits, "tangent", datum.hyperplane);
}

}  // namespace apolar
