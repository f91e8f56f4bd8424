#include "apolar/monomials.hpp"

#include <numeric>

#include "apolar/errors.hpp"

namespace apolar {

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

namespace {

void enumerate(int var, int remaining, Exponent& current, std::vector<Exponent>& out) {
  const int n = static_cast<int>(current.size());
  if (var == n - 1) {
    current[var] = remaining;
    out.push_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[var] = k;
    enumerate(var + 1, remaining - k, current, out);
  }
  current[var] = 0;
}

}  // namespace

std::vector<Exponent> monomials(int num_vars, int degree) {
  if (num_vars <= 0) throw InvalidArgument("monomials need at least one variable");
  std::vector<Exponent> out;
  if (degree < 0) return out;
  out.reserve(num_monomials(num_vars, degree));
  Exponent current(num_vars, 0);
  enumerate(0, degree, current, out);
  return out;
}

std::size_t num_monomials(int num_vars, int degree) {
  if (degree < 0) return 0;
  return binomial(num_vars - 1 + degree, degree).get_ui();
}

MonomialIndex::MonomialIndex(int num_vars, int degree) : basis_(monomials(num_vars, degree)) {
  for (std::size_t i = 0; i < basis_.size(); ++i) lookup_.emplace(basis_[i], i);
}

std::size_t MonomialIndex::index(const Exponent& e) const {
  auto it = lookup_.find(e);
  if (it == lookup_.end()) throw InvalidArgument("exponent outside the monomial basis");
  return it->second;
}

mpz_class factorial(int n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

mpz_class exponent_factorial(const Exponent& alpha) {
  mpz_class out = 1;
  for (int a : alpha) out *= factorial(a);
  return out;
}

mpz_class falling_factorial(const Exponent& beta, const Exponent& alpha) {
  mpz_class out = 1;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] > beta[i]) return 0;
    for (int k = 0; k < alpha[i]; ++k) out *= beta[i] - k;
  }
  return out;
}

mpz_class multinomial(const Exponent& alpha) {
  return factorial(total_degree(alpha)) / exponent_factorial(alpha);
}

bool divides(const Exponent& alpha, const Exponent& beta) {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] > beta[i]) return false;
  }
  return true;
}

}  // namespace apolar
