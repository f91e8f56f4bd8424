#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace apolar {

/// Arbitrary-precision real number backed by MPFR. Every value carries its
/// own precision; binary operations produce a result at the larger of the
/// two operand precisions. Rounding is always to nearest.
class Real {
 public:
  Real();
  explicit Real(mpfr_prec_t bits);
  Real(double value, mpfr_prec_t bits);
  Real(long value, mpfr_prec_t bits);
  Real(const mpz_class& value, mpfr_prec_t bits);
  Real(const mpq_class& value, mpfr_prec_t bits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Parses a decimal (or "p/q" rational) string at the given precision.
  static Real parse(const std::string& text, mpfr_prec_t bits);

  /// 2^exponent at the given precision.
  static Real pow2(long exponent, mpfr_prec_t bits);

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  /// Copy rounded (or widened) to the given precision.
  Real with_precision(mpfr_prec_t bits) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; very negative for zero.
  long exponent2() const;

  /// Scientific notation with the requested number of significant digits.
  std::string to_string(int digits) const;
  /// Enough digits to round-trip the value at its precision.
  std::string to_string() const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real operator-() const;

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

  friend Real abs(const Real& x);
  friend Real sqrt(const Real& x);
  friend Real hypot(const Real& x, const Real& y);

  mpfr_ptr raw() { return value_; }
  mpfr_srcptr raw() const { return value_; }

 private:
  void ensure_precision_at_least(mpfr_prec_t bits);

  mpfr_t value_;
};

/// Sets the precision used by default-constructed Reals on this thread for
/// the lifetime of the guard.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(mpfr_prec_t bits);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  mpfr_prec_t saved_;
};

mpfr_prec_t default_precision();

/// Complex number with MPFR real and imaginary parts.
class Complex {
 public:
  Complex() = default;
  explicit Complex(mpfr_prec_t bits) : re_(bits), im_(bits) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  Complex(const mpq_class& value, mpfr_prec_t bits) : re_(value, bits), im_(0L, bits) {}
  Complex(long value, mpfr_prec_t bits) : re_(value, bits), im_(0L, bits) {}

  const Real& real() const { return re_; }
  const Real& imag() const { return im_; }
  mpfr_prec_t precision() const { return re_.precision(); }
  Complex with_precision(mpfr_prec_t bits) const {
    return Complex(re_.with_precision(bits), im_.with_precision(bits));
  }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);
  Complex& operator/=(const Complex& rhs);
  Complex operator-() const { return Complex(-re_, -im_); }

  friend Complex operator+(Complex lhs, const Complex& rhs) { return lhs += rhs; }
  friend Complex operator-(Complex lhs, const Complex& rhs) { return lhs -= rhs; }
  friend Complex operator*(Complex lhs, const Complex& rhs) { return lhs *= rhs; }
  friend Complex operator/(Complex lhs, const Complex& rhs) { return lhs /= rhs; }

  /// Exact equality of the stored binary values; algorithms use tolerances.
  friend bool operator==(const Complex& a, const Complex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  friend Real abs(const Complex& z) { return hypot(z.re_, z.im_); }
  friend Complex conj(const Complex& z) { return Complex(z.re_, -z.im_); }

  /// "re" when the imaginary part is zero, otherwise "re+imi" / "re-imi".
  std::string to_string(int digits) const;
  std::string to_string() const;
  /// Accepts "a", "bi", "a+bi", "a-bi", "p/q" and plain "i".
  static Complex parse(const std::string& text, mpfr_prec_t bits);

 private:
  Real re_;
  Real im_;
};

}  // namespace apolar
