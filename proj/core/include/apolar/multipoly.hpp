#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "apolar/errors.hpp"
#include "apolar/field.hpp"
#include "apolar/monomials.hpp"

namespace apolar {

/// Homogeneous form in `num_vars` variables with coefficients in `Field`.
///
/// The same type houses forms in R = k[x_0..x_n] and differential operators
/// in T = k[d_0..d_n]; which ring a value belongs to is decided by how it is
/// used (`apolar_apply(D, f)` treats its first argument as an operator).
/// Terms are kept sorted in descending lexicographic order of exponents and
/// zero coefficients are never stored.
template <CoefficientField Field>
class MultiPoly {
 public:
  using Element = typename Field::Element;
  using TermMap = std::map<Exponent, Element, std::greater<Exponent>>;

  /// The zero form of the given degree.
  MultiPoly(Field field, int num_vars, int degree)
      : field_(std::move(field)), num_vars_(num_vars), degree_(degree) {
    if (num_vars <= 0) throw InvalidArgument("a form needs at least one variable");
    if (degree < 0) throw InvalidArgument("a form has non-negative degree");
  }

  static MultiPoly monomial(const Field& field, const Exponent& exponent, const Element& coeff) {
    MultiPoly out(field, static_cast<int>(exponent.size()), total_degree(exponent));
    out.add_term(exponent, coeff);
    return out;
  }

  /// Builds a form from coefficients listed against `basis` (all of one degree).
  static MultiPoly from_coefficients(const Field& field, const MonomialIndex& basis,
                                     std::span<const Element> coeffs) {
    if (coeffs.size() != basis.size()) throw InvalidArgument("coefficient vector has wrong length");
    MultiPoly out(field, static_cast<int>(basis[0].size()), total_degree(basis[0]));
    for (std::size_t i = 0; i < coeffs.size(); ++i) out.add_term(basis[i], coeffs[i]);
    return out;
  }

  const Field& field() const { return field_; }
  int num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Element coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  /// Adds `coeff * x^exponent`, merging with an existing term.
  void add_term(const Exponent& exponent, const Element& coeff) {
    if (static_cast<int>(exponent.size()) != num_vars_) {
      throw InvalidArgument("exponent length " + std::to_string(exponent.size()) + " != " +
                            std::to_string(num_vars_) + " variables");
    }
    for (int v : exponent) {
      if (v < 0) throw InvalidArgument("negative exponent");
    }
    if (total_degree(exponent) != degree_) {
      throw InvalidArgument("term of degree " + std::to_string(total_degree(exponent)) +
                            " in a form of degree " + std::to_string(degree_));
    }
    if (field_.is_zero(coeff)) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coeff);
    if (!inserted) {
      it->second += coeff;
      if (field_.is_zero(it->second)) terms_.erase(it);
    }
  }

  std::vector<Element> coefficients(const MonomialIndex& basis) const {
    std::vector<Element> out(basis.size(), field_.zero());
    for (const auto& [e, c] : terms_) out[basis.index(e)] = c;
    return out;
  }

  MultiPoly& operator+=(const MultiPoly& rhs) {
    check_compatible(rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
  }

  MultiPoly& operator-=(const MultiPoly& rhs) {
    check_compatible(rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
  }

  MultiPoly& operator*=(const Element& scalar) {
    if (field_.is_zero(scalar)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= scalar;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Element& s) { return a *= s; }
  friend MultiPoly operator*(const Element& s, MultiPoly a) { return a *= s; }

  /// Ordinary product of forms (degrees add).
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.num_vars_ != b.num_vars_) throw InvalidArgument("variable counts differ in product");
    require_same_backend(a.field_, b.field_);
    MultiPoly out(a.field_, a.num_vars_, a.degree_ + b.degree_);
    Exponent e(a.num_vars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (int i = 0; i < a.num_vars_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.num_vars_ == b.num_vars_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// Scaled so that the leading (first in descending lex) coefficient is 1.
  MultiPoly normalized() const {
    if (terms_.empty()) return *this;
    Element inv = field_.one() / terms_.begin()->second;
    return *this * inv;
  }

  /// Largest coefficient magnitude; float fields only.
  Real max_abs_coefficient() const
    requires(!Field::exact)
  {
    Real out(0L, field_.bits());
    for (const auto& [e, c] : terms_) out = std::max(out, magnitude(c));
    return out;
  }

 private:
  void check_compatible(const MultiPoly& rhs) const {
    if (num_vars_ != rhs.num_vars_) throw InvalidArgument("variable counts differ");
    if (degree_ != rhs.degree_) throw InvalidArgument("degrees differ in a homogeneous sum");
    require_same_backend(field_, rhs.field_);
  }

  Field field_;
  int num_vars_;
  int degree_;
  TermMap terms_;
};

/// A point of the dual projective space, equivalently the linear form
/// l_a = sum a_i x_i. Equality is projective.
template <CoefficientField Field>
class DualPoint {
 public:
  using Element = typename Field::Element;

  DualPoint(Field field, std::vector<Element> coords) : field_(std::move(field)), coords_(std::move(coords)) {
    if (coords_.empty()) throw InvalidArgument("a point needs at least one coordinate");
    if (std::all_of(coords_.begin(), coords_.end(), [&](const Element& c) { return field_.is_zero(c); })) {
      throw InvalidArgument("zero_point", "all coordinates of a projective point are zero");
    }
  }

  const Field& field() const { return field_; }
  const std::vector<Element>& coords() const { return coords_; }
  int num_vars() const { return static_cast<int>(coords_.size()); }

  /// Canonical representative: first (significant) nonzero coordinate is 1.
  DualPoint normalized() const {
    std::size_t lead = leading_index();
    Element inv = field_.one() / coords_[lead];
    std::vector<Element> out = coords_;
    for (auto& c : out) c *= inv;
    if constexpr (Field::exact) {
      return DualPoint(field_, std::move(out));
    } else {
      out[lead] = field_.one();
      for (std::size_t i = 0; i < lead; ++i) out[i] = field_.zero();
      return DualPoint(field_, std::move(out));
    }
  }

  /// l_a as a degree-1 form.
  MultiPoly<Field> linear_form() const {
    MultiPoly<Field> out(field_, num_vars(), 1);
    Exponent e(num_vars(), 0);
    for (int i = 0; i < num_vars(); ++i) {
      e[i] = 1;
      out.add_term(e, coords_[i]);
      e[i] = 0;
    }
    return out;
  }

  std::size_t leading_index() const {
    if constexpr (Field::exact) {
      for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!field_.is_zero(coords_[i])) return i;
      }
      return 0;
    } else {
      Real largest(0L, field_.bits());
      for (const auto& c : coords_) largest = std::max(largest, magnitude(c));
      Real cutoff = largest * field_.tolerance();
      for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (magnitude(coords_[i]) > cutoff) return i;
      }
      return 0;
    }
  }

 private:
  Field field_;
  std::vector<Element> coords_;
};

/// Projective equality. Exact fields compare canonical forms; the complex
/// field compares them to the field tolerance, relative to the coordinates.
template <CoefficientField Field>
bool projectively_equal(const DualPoint<Field>& a, const DualPoint<Field>& b) {
  if (a.num_vars() != b.num_vars()) return false;
  auto na = a.normalized();
  auto nb = b.normalized();
  if constexpr (Field::exact) {
    return na.coords() == nb.coords();
  } else {
    Real largest(1L, a.field().bits());
    for (const auto& c : na.coords()) largest = std::max(largest, magnitude(c));
    Real cutoff = largest * a.field().tolerance();
    for (int i = 0; i < a.num_vars(); ++i) {
      if (magnitude(na.coords()[i] - nb.coords()[i]) > cutoff) return false;
    }
    return true;
  }
}

/// The contraction action of an operator D of order e on a form f of
/// degree d: d^alpha . x^beta = alpha! binom(beta, alpha) x^(beta - alpha).
/// Returns a form of degree d - e (the zero form of degree 0 when e > d).
template <CoefficientField Field>
MultiPoly<Field> apolar_apply(const MultiPoly<Field>& op, const MultiPoly<Field>& form) {
  if (op.num_vars() != form.num_vars()) {
    throw InvalidArgument("variable_mismatch", "operator has " + std::to_string(op.num_vars()) +
                                                   " variables, form has " + std::to_string(form.num_vars()));
  }
  require_same_backend(op.field(), form.field());
  const Field& field = form.field();
  if constexpr (std::is_same_v<Field, PrimeField>) {
    if (field.modulus() <= static_cast<std::uint32_t>(form.degree())) {
      throw InvalidArgument("bad_modulus", "prime " + std::to_string(field.modulus()) +
                                               " must exceed the form degree " + std::to_string(form.degree()));
    }
  }
  const int e = op.degree();
  const int d = form.degree();
  if (e > d) return MultiPoly<Field>(field, form.num_vars(), 0);
  MultiPoly<Field> out(field, form.num_vars(), d - e);
  Exponent diff(form.num_vars());
  for (const auto& [alpha, a] : op.terms()) {
    for (const auto& [beta, b] : form.terms()) {
      if (!divides(alpha, beta)) continue;
      for (int i = 0; i < form.num_vars(); ++i) diff[i] = beta[i] - alpha[i];
      out.add_term(diff, a * b * field.from_integer(falling_factorial(beta, alpha)));
    }
  }
  return out;
}

/// l_L^d expanded with multinomial coefficients.
template <CoefficientField Field>
MultiPoly<Field> power_of_linear(const DualPoint<Field>& point, int d) {
  if (d < 0) throw InvalidArgument("power must be non-negative");
  const Field& field = point.field();
  MultiPoly<Field> out(field, point.num_vars(), d);
  for (const Exponent& alpha : monomials(point.num_vars(), d)) {
    typename Field::Element term = field.from_integer(multinomial(alpha));
    for (int i = 0; i < point.num_vars(); ++i) {
      for (int k = 0; k < alpha[i]; ++k) term *= point.coords()[i];
    }
    out.add_term(alpha, term);
  }
  return out;
}

/// Value of f at a coordinate vector.
template <CoefficientField Field>
typename Field::Element eval_poly(const MultiPoly<Field>& f, std::span<const typename Field::Element> q) {
  if (static_cast<int>(q.size()) != f.num_vars()) {
    throw InvalidArgument("evaluation point has " + std::to_string(q.size()) + " coordinates, form has " +
                          std::to_string(f.num_vars()) + " variables");
  }
  const Field& field = f.field();
  // powers[i][k] = q_i^k
  std::vector<std::vector<typename Field::Element>> powers(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    powers[i].push_back(field.one());
    for (int k = 1; k <= f.degree(); ++k) powers[i].push_back(powers[i].back() * q[i]);
  }
  typename Field::Element sum = field.zero();
  for (const auto& [e, c] : f.terms()) {
    typename Field::Element term = c;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (e[i] > 0) term *= powers[i][e[i]];
    }
    sum += term;
  }
  return sum;
}

template <CoefficientField Field>
typename Field::Element eval_poly(const MultiPoly<Field>& f, const DualPoint<Field>& q) {
  return eval_poly(f, std::span<const typename Field::Element>(q.coords()));
}

/// Partial derivative with respect to variable `var` (ordinary calculus).
template <CoefficientField Field>
MultiPoly<Field> partial_derivative(const MultiPoly<Field>& f, int var) {
  if (f.degree() == 0) return MultiPoly<Field>(f.field(), f.num_vars(), 0);
  MultiPoly<Field> out(f.field(), f.num_vars(), f.degree() - 1);
  for (const auto& [e, c] : f.terms()) {
    if (e[var] == 0) continue;
    Exponent lowered = e;
    lowered[var] -= 1;
    out.add_term(lowered, c * f.field().from_int(e[var]));
  }
  return out;
}

/// x^e as a form.
template <CoefficientField Field>
MultiPoly<Field> monomial_form(const Field& field, const Exponent& e) {
  return MultiPoly<Field>::monomial(field, e, field.one());
}

/// Replaces each variable x_i by the linear form images[i]; all images share
/// one variable count, which becomes the variable count of the result.
template <CoefficientField Field>
MultiPoly<Field> substitute_linear(const MultiPoly<Field>& f, const std::vector<MultiPoly<Field>>& images) {
  if (static_cast<int>(images.size()) != f.num_vars()) throw InvalidArgument("one image per variable required");
  const int target_vars = images.front().num_vars();
  const Field& field = f.field();
  std::vector<std::vector<MultiPoly<Field>>> powers(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].degree() != 1 || images[i].num_vars() != target_vars) {
      throw InvalidArgument("substitution images must be linear forms in a common ring");
    }
    powers[i].push_back(MultiPoly<Field>::monomial(field, Exponent(target_vars, 0), field.one()));
    for (int k = 1; k <= f.degree(); ++k) powers[i].push_back(powers[i].back() * images[i]);
  }
  MultiPoly<Field> out(field, target_vars, f.degree());
  for (const auto& [e, c] : f.terms()) {
    MultiPoly<Field> term = MultiPoly<Field>::monomial(field, Exponent(target_vars, 0), c);
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (e[i] > 0) term = term * powers[i][e[i]];
    }
    out += term;
  }
  return out;
}

/// Re-expresses a rational form over another field.
template <CoefficientField Field>
MultiPoly<Field> change_field(const MultiPoly<RationalField>& f, const Field& field) {
  MultiPoly<Field> out(field, f.num_vars(), f.degree());
  for (const auto& [e, c] : f.terms()) out.add_term(e, field.from_rational(c));
  return out;
}

template <CoefficientField Field>
std::vector<typename Field::Element> change_field(const std::vector<mpq_class>& v, const Field& field) {
  std::vector<typename Field::Element> out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back(field.from_rational(c));
  return out;
}

}  // namespace apolar
