#include "apolar/field.hpp"

namespace apolar {

ModP::ModP(std::int64_t value, std::uint32_t modulus) : modulus_(modulus) {
  if (modulus == 0) throw InvalidArgument("ModP requires a nonzero modulus");
  std::int64_t r = value % static_cast<std::int64_t>(modulus);
  if (r < 0) r += modulus;
  value_ = static_cast<std::uint32_t>(r);
}

void ModP::check(const ModP& rhs) const {
  if (modulus_ != rhs.modulus_ || modulus_ == 0) {
    throw BackendMismatch("residues modulo " + std::to_string(modulus_) + " and " +
                          std::to_string(rhs.modulus_) + " do not mix");
  }
}

ModP& ModP::operator+=(const ModP& rhs) {
  check(rhs);
  std::uint64_t s = std::uint64_t{value_} + rhs.value_;
  if (s >= modulus_) s -= modulus_;
  value_ = static_cast<std::uint32_t>(s);
  return *this;
}

ModP& ModP::operator-=(const ModP& rhs) {
  check(rhs);
  value_ = value_ >= rhs.value_ ? value_ - rhs.value_ : modulus_ - (rhs.value_ - value_);
  return *this;
}

ModP& ModP::operator*=(const ModP& rhs) {
  check(rhs);
  value_ = static_cast<std::uint32_t>((std::uint64_t{value_} * rhs.value_) % modulus_);
  return *this;
}

ModP ModP::inverse() const {
  if (value_ == 0) throw InvalidArgument("division_by_zero", "inverse of zero modulo p");
  std::int64_t a = value_, m = modulus_, x0 = 1, x1 = 0;
  while (m != 0) {
    std::int64_t q = a / m;
    std::int64_t t = a - q * m;
    a = m;
    m = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return ModP(x0, modulus_);
}

bool is_probable_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; std::uint64_t{d} * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

RationalField::Element RationalField::parse(const std::string& text) const {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw InvalidArgument("parse_error", "cannot parse rational '" + text + "'");
  }
  if (q.get_den() == 0) throw InvalidArgument("parse_error", "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_probable_prime(p)) {
    throw InvalidArgument("bad_modulus", std::to_string(p) + " is not a prime below 2^31");
  }
}

PrimeField::Element PrimeField::from_integer(const mpz_class& v) const {
  mpz_class r = v % p_;
  if (r < 0) r += p_;
  return ModP(static_cast<std::int64_t>(r.get_ui()), p_);
}

PrimeField::Element PrimeField::from_rational(const mpq_class& v) const {
  ModP den = from_integer(v.get_den());
  if (den.is_zero()) {
    throw InvalidArgument("bad_modulus", "denominator of " + v.get_str() + " vanishes modulo " +
                                             std::to_string(p_));
  }
  return from_integer(v.get_num()) / den;
}

PrimeField::Element PrimeField::parse(const std::string& text) const {
  return from_rational(RationalField{}.parse(text));
}

ComplexField::ComplexField(mpfr_prec_t bits, long tolerance_bits)
    : bits_(bits), tolerance_bits_(tolerance_bits > 0 ? tolerance_bits : static_cast<long>(bits / 2)) {
  if (bits < 32) throw InvalidArgument("precision must be at least 32 bits");
}

}  // namespace apolar
