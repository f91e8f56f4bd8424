#include "apolar/real.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

#include "apolar/errors.hpp"

namespace apolar {

namespace {

thread_local mpfr_prec_t thread_precision = 256;

int round_trip_digits(mpfr_prec_t bits) {
  return static_cast<int>(std::ceil(static_cast<double>(bits) * 0.30102999566398120)) + 1;
}

}  // namespace

mpfr_prec_t default_precision() { return thread_precision; }

ScopedPrecision::ScopedPrecision(mpfr_prec_t bits) : saved_(thread_precision) {
  thread_precision = bits;
}

ScopedPrecision::~ScopedPrecision() { thread_precision = saved_; }

Real::Real() : Real(default_precision()) {}

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(double value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(long value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const mpz_class& value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::parse(const std::string& text, mpfr_prec_t bits) {
  if (text.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) {
      throw InvalidArgument("parse_error", "cannot parse real number '" + text + "'");
    }
    q.canonicalize();
    return Real(q, bits);
  }
  Real out(bits);
  char* end = nullptr;
  if (!text.empty()) mpfr_strtofr(out.value_, text.c_str(), &end, 10, MPFR_RNDN);
  if (text.empty() || end == nullptr || *end != '\0') {
    throw InvalidArgument("parse_error", "cannot parse real number '" + text + "'");
  }
  return out;
}

Real Real::pow2(long exponent, mpfr_prec_t bits) {
  Real out(bits);
  mpfr_set_ui_2exp(out.value_, 1, exponent, MPFR_RNDN);
  return out;
}

Real Real::with_precision(mpfr_prec_t bits) const {
  Real out(bits);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

long Real::exponent2() const {
  if (is_zero()) return mpfr_get_emin();
  return mpfr_get_exp(value_);
}

std::string Real::to_string(int digits) const {
  if (digits < 1) digits = 1;
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Re", digits - 1, value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

std::string Real::to_string() const { return to_string(round_trip_digits(precision())); }

void Real::ensure_precision_at_least(mpfr_prec_t bits) {
  if (precision() < bits) mpfr_prec_round(value_, bits, MPFR_RNDN);
}

Real& Real::operator+=(const Real& rhs) {
  ensure_precision_at_least(rhs.precision());
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  ensure_precision_at_least(rhs.precision());
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  ensure_precision_at_least(rhs.precision());
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  ensure_precision_at_least(rhs.precision());
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real out(*this);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

Real abs(const Real& x) {
  Real out(x);
  mpfr_abs(out.value_, out.value_, MPFR_RNDN);
  return out;
}

Real sqrt(const Real& x) {
  Real out(x);
  mpfr_sqrt(out.value_, out.value_, MPFR_RNDN);
  return out;
}

Real hypot(const Real& x, const Real& y) {
  Real out(std::max(x.precision(), y.precision()));
  mpfr_hypot(out.value_, x.value_, y.value_, MPFR_RNDN);
  return out;
}

Complex& Complex::operator+=(const Complex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& rhs) {
  if (im_.is_zero() && rhs.im_.is_zero()) {
    re_ *= rhs.re_;
    return *this;
  }
  Real re = re_ * rhs.re_ - im_ * rhs.im_;
  Real im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Complex& Complex::operator/=(const Complex& rhs) {
  if (rhs.is_zero()) throw InvalidArgument("division_by_zero", "complex division by zero");
  if (rhs.im_.is_zero()) {
    re_ /= rhs.re_;
    im_ /= rhs.re_;
    return *this;
  }
  Real denom = rhs.re_ * rhs.re_ + rhs.im_ * rhs.im_;
  Real re = (re_ * rhs.re_ + im_ * rhs.im_) / denom;
  Real im = (im_ * rhs.re_ - re_ * rhs.im_) / denom;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string Complex::to_string(int digits) const {
  if (im_.is_zero()) return re_.to_string(digits);
  std::string im = im_.to_string(digits);
  if (im.front() != '-') im.insert(im.begin(), '+');
  return re_.to_string(digits) + im + "i";
}

std::string Complex::to_string() const {
  return to_string(round_trip_digits(precision()));
}

Complex Complex::parse(const std::string& text, mpfr_prec_t bits) {
  if (text.empty()) throw InvalidArgument("parse_error", "empty complex number");
  if (text.back() != 'i') return Complex(Real::parse(text, bits), Real(0L, bits));
  std::string body = text.substr(0, text.size() - 1);
  // The split point is the last sign that is not at the start and does not
  // belong to an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_part = [&](const std::string& s) {
    if (s.empty() || s == "+") return Real(1L, bits);
    if (s == "-") return Real(-1L, bits);
    return Real::parse(s[0] == '+' ? s.substr(1) : s, bits);
  };
  if (split == std::string::npos) return Complex(Real(0L, bits), imag_part(body));
  return Complex(Real::parse(body.substr(0, split), bits), imag_part(body.substr(split)));
}

}  // namespace apolar
