#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <vector>

namespace apolar {

/// Exponent vector of a monomial; entries are non-negative.
using Exponent = std::vector<int>;

int total_degree(const Exponent& e);

/// All exponent vectors of the given total degree, in descending
/// lexicographic order (x_0^d first). This is the canonical basis ordering
/// for every matrix built from monomials.
std::vector<Exponent> monomials(int num_vars, int degree);

/// binom(num_vars - 1 + degree, degree).
std::size_t num_monomials(int num_vars, int degree);

/// Position of each exponent in `monomials(num_vars, degree)`.
class MonomialIndex {
 public:
  MonomialIndex(int num_vars, int degree);

  std::size_t size() const { return basis_.size(); }
  const std::vector<Exponent>& basis() const { return basis_; }
  const Exponent& operator[](std::size_t i) const { return basis_[i]; }
  /// Throws InvalidArgument if the exponent is not of this degree/arity.
  std::size_t index(const Exponent& e) const;

 private:
  std::vector<Exponent> basis_;
  std::map<Exponent, std::size_t> lookup_;
};

mpz_class factorial(int n);
mpz_class binomial(long n, long k);

/// prod_i alpha_i!
mpz_class exponent_factorial(const Exponent& alpha);

/// prod_i beta_i! / (beta_i - alpha_i)!, i.e. alpha! * binom(beta, alpha).
/// Zero unless beta >= alpha componentwise.
mpz_class falling_factorial(const Exponent& beta, const Exponent& alpha);

/// d! / prod_i alpha_i! with d = |alpha|.
mpz_class multinomial(const Exponent& alpha);

bool divides(const Exponent& alpha, const Exponent& beta);

}  // namespace apolar
