#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>
#include <type_traits>

#include "apolar/errors.hpp"
#include "apolar/real.hpp"

namespace apolar {

/// Element of Z/pZ for a prime p < 2^31. The modulus travels with the value
/// so that combining residues of different primes is caught at runtime.
class ModP {
 public:
  ModP() = default;
  ModP(std::int64_t value, std::uint32_t modulus);

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  ModP inverse() const;

  ModP& operator+=(const ModP& rhs);
  ModP& operator-=(const ModP& rhs);
  ModP& operator*=(const ModP& rhs);
  ModP& operator/=(const ModP& rhs) { return *this *= rhs.inverse(); }
  ModP operator-() const { return ModP(value_ == 0 ? 0 : modulus_ - value_, modulus_); }

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend bool operator==(const ModP& a, const ModP& b) {
    return a.value_ == b.value_ && a.modulus_ == b.modulus_;
  }

 private:
  void check(const ModP& rhs) const;

  std::uint32_t value_ = 0;
  std::uint32_t modulus_ = 0;
};

/// The rationals, with exact GMP arithmetic.
struct RationalField {
  using Element = mpq_class;
  static constexpr bool exact = true;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(long v) const { return Element(v); }
  Element from_integer(const mpz_class& v) const { return Element(v); }
  Element from_rational(const mpq_class& v) const { return v; }
  bool is_zero(const Element& x) const { return sgn(x) == 0; }

  std::string tag() const { return "Q"; }
  std::string format(const Element& x) const { return x.get_str(10); }
  Element parse(const std::string& text) const;

  bool same_backend(const RationalField&) const { return true; }
  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

/// The prime field F_p.
struct PrimeField {
  using Element = ModP;
  static constexpr bool exact = true;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }

  Element zero() const { return ModP(0, p_); }
  Element one() const { return ModP(1, p_); }
  Element from_int(long v) const { return ModP(v, p_); }
  Element from_integer(const mpz_class& v) const;
  Element from_rational(const mpq_class& v) const;
  bool is_zero(const Element& x) const { return x.is_zero(); }

  std::string tag() const { return "Fp:" + std::to_string(p_); }
  std::string format(const Element& x) const { return std::to_string(x.value()); }
  Element parse(const std::string& text) const;

  bool same_backend(const PrimeField& o) const { return p_ == o.p_; }
  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

/// The complex numbers at a fixed working precision. `tolerance_bits`
/// controls rank and zero decisions: a quantity is treated as zero when it is
/// below 2^-tolerance_bits relative to the scale of the computation.
struct ComplexField {
  using Element = Complex;
  static constexpr bool exact = false;

  explicit ComplexField(mpfr_prec_t bits = 256, long tolerance_bits = 0);

  mpfr_prec_t bits() const { return bits_; }
  long tolerance_bits() const { return tolerance_bits_; }
  Real tolerance() const { return Real::pow2(-tolerance_bits_, bits_); }

  Element zero() const { return Complex(0L, bits_); }
  Element one() const { return Complex(1L, bits_); }
  Element from_int(long v) const { return Complex(v, bits_); }
  Element from_integer(const mpz_class& v) const { return Complex(Real(v, bits_), Real(0L, bits_)); }
  Element from_rational(const mpq_class& v) const { return Complex(v, bits_); }
  bool is_zero(const Element& x) const { return x.is_zero(); }

  std::string tag() const { return "C:" + std::to_string(bits_); }
  std::string format(const Element& x) const { return x.to_string(); }
  Element parse(const std::string& text) const { return Complex::parse(text, bits_); }

  bool same_backend(const ComplexField&) const { return true; }
  friend bool operator==(const ComplexField& a, const ComplexField& b) {
    return a.bits_ == b.bits_ && a.tolerance_bits_ == b.tolerance_bits_;
  }

 private:
  mpfr_prec_t bits_;
  long tolerance_bits_;
};

template <class F>
concept CoefficientField = requires(const F& field, const typename F::Element& x) {
  { field.zero() } -> std::same_as<typename F::Element>;
  { field.one() } -> std::same_as<typename F::Element>;
  { field.is_zero(x) } -> std::same_as<bool>;
  { field.tag() } -> std::same_as<std::string>;
  { F::exact } -> std::convertible_to<bool>;
};

template <class F>
void require_same_backend(const F& a, const F& b) {
  if (!a.same_backend(b)) {
    throw BackendMismatch("coefficient fields " + a.tag() + " and " + b.tag() + " do not mix");
  }
}

/// Magnitude used for pivot selection in floating elimination.
inline Real magnitude(const Complex& z) { return abs(z); }

bool is_probable_prime(std::uint32_t n);

}  // namespace apolar
