#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "apolar/univariate.hpp"

namespace apolar {

RationalUniPoly::RationalUniPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void RationalUniPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

mpq_class RationalUniPoly::operator()(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RationalUniPoly RationalUniPoly::derivative() const {
  std::vector<mpq_class> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * static_cast<long>(i));
  return RationalUniPoly(std::move(out));
}

RationalUniPoly RationalUniPoly::monic() const {
  if (is_zero()) return *this;
  std::vector<mpq_class> out = coeffs_;
  mpq_class lead = leading();
  for (auto& c : out) c /= lead;
  return RationalUniPoly(std::move(out));
}

RationalUniPoly operator-(const RationalUniPoly& a, const RationalUniPoly& b) {
  std::vector<mpq_class> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
  return RationalUniPoly(std::move(out));
}

std::pair<RationalUniPoly, RationalUniPoly> RationalUniPoly::divmod(const RationalUniPoly& a,
                                                                    const RationalUniPoly& b) {
  if (b.is_zero()) throw InvalidArgument("division by the zero polynomial");
  if (a.degree() < b.degree()) return {RationalUniPoly(), a};
  std::vector<mpq_class> rem = a.coeffs_;
  std::vector<mpq_class> quo(a.coeffs_.size() - b.coeffs_.size() + 1);
  const std::size_t db = b.coeffs_.size() - 1;
  for (std::size_t k = quo.size(); k-- > 0;) {
    mpq_class q = rem[k + db] / b.leading();
    quo[k] = q;
    if (sgn(q) == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs_[j];
  }
  rem.resize(db);
  return {RationalUniPoly(std::move(quo)), RationalUniPoly(std::move(rem))};
}

RationalUniPoly gcd(RationalUniPoly a, RationalUniPoly b) {
  while (!b.is_zero()) {
    auto r = RationalUniPoly::divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

std::vector<std::pair<RationalUniPoly, int>> squarefree_decomposition(const RationalUniPoly& f) {
  if (f.degree() < 1) return {};
  std::vector<std::pair<RationalUniPoly, int>> out;
  RationalUniPoly df = f.derivative();
  RationalUniPoly b = gcd(f, df);
  RationalUniPoly c = RationalUniPoly::divmod(f, b).first;
  RationalUniPoly d = RationalUniPoly::divmod(df, b).first - c.derivative();
  for (int mult = 1; c.degree() > 0; ++mult) {
    RationalUniPoly a = gcd(c, d);
    if (a.degree() > 0) out.emplace_back(a, mult);
    c = RationalUniPoly::divmod(c, a).first;
    d = RationalUniPoly::divmod(d, a).first - c.derivative();
  }
  return out;
}

namespace {

std::vector<std::complex<double>> companion_seeds(const std::vector<Complex>& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  bool finite = true;
  for (int i = 0; i < n; ++i) {
    std::complex<double> c(monic[i].real().to_double(), monic[i].imag().to_double());
    finite = finite && std::isfinite(c.real()) && std::isfinite(c.imag());
    comp(i, n - 1) = -c;
    if (i > 0) comp(i, i - 1) = 1.0;
  }
  std::vector<std::complex<double>> seeds;
  if (finite) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    if (solver.info() == Eigen::Success) {
      for (int i = 0; i < n; ++i) seeds.push_back(solver.eigenvalues()(i));
    }
  }
  bool usable = static_cast<int>(seeds.size()) == n;
  for (const auto& s : seeds) usable = usable && std::isfinite(s.real()) && std::isfinite(s.imag());
  if (!usable) {
    // Circle seeds on a Cauchy-type radius.
    double radius = 1.0;
    for (int i = 0; i < n; ++i) {
      double mag = std::abs(std::complex<double>(monic[i].real().to_double(), monic[i].imag().to_double()));
      if (std::isfinite(mag)) radius = std::max(radius, 1.0 + mag);
    }
    seeds.clear();
    for (int k = 0; k < n; ++k) seeds.push_back(std::polar(radius, 2.0 * M_PI * k / n + 0.4));
  }
  // Aberth needs pairwise distinct starting values.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      double scale = 1.0 + std::abs(seeds[i]);
      if (std::abs(seeds[i] - seeds[j]) < 1e-9 * scale) {
        seeds[i] += std::polar(1e-6 * scale, 1.0 + i);
        j = -1;
      }
    }
  }
  return seeds;
}

// p(z) and p'(z) by Horner.
void horner(const std::vector<Complex>& c, const Complex& z, Complex& value, Complex& slope, mpfr_prec_t bits) {
  value = Complex(0L, bits);
  slope = Complex(0L, bits);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    slope = slope * z + value;
    value = value * z + *it;
  }
}

}  // namespace

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs, mpfr_prec_t bits, std::optional<Real> accept) {
  std::size_t top = coeffs.size();
  while (top > 0 && coeffs[top - 1].is_zero()) --top;
  if (top <= 1) {
    if (top == 0) throw InvalidArgument("the zero polynomial has no finite root set");
    return {};
  }
  const int n = static_cast<int>(top) - 1;
  std::vector<Complex> monic;
  Complex lead = coeffs[n];
  for (int i = 0; i <= n; ++i) {
    Complex c = coeffs[i] / lead;
    monic.push_back(c.with_precision(bits));
  }
  monic[n] = Complex(1L, bits);
  if (n == 1) return {-monic[0]};

  const Real limit = accept ? *accept : Real::pow2(-3 * static_cast<long>(bits) / 4, bits);
  const Real floor_scale = Real::pow2(-static_cast<long>(bits) / 4, bits);
  std::vector<Complex> z;
  for (const auto& s : companion_seeds(monic)) z.emplace_back(Real(s.real(), bits), Real(s.imag(), bits));

  std::vector<bool> done(n, false);
  std::vector<Real> last_step(n, Real(1L, bits));
  const int max_iter = 400 + 20 * n;
  Complex value(bits), slope(bits);
  for (int iter = 0; iter < max_iter; ++iter) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      horner(monic, z[i], value, slope, bits);
      if (value.is_zero()) {
        done[i] = true;
        last_step[i] = Real(0L, bits);
        continue;
      }
      Complex ratio = value / slope;
      Complex repulsion(0L, bits);
      for (int j = 0; j < n; ++j) {
        if (j != i) repulsion += Complex(1L, bits) / (z[i] - z[j]);
      }
      Complex step = ratio / (Complex(1L, bits) - ratio * repulsion);
      z[i] -= step;
      last_step[i] = abs(step);
      Real scale = std::max(abs(z[i]), floor_scale);
      if (last_step[i] <= limit * scale) done[i] = true;
      all_done = all_done && done[i];
    }
    if (all_done) break;
  }
  for (int i = 0; i < n; ++i) {
    Real scale = std::max(abs(z[i]), floor_scale);
    if (!done[i] && last_step[i] > limit * scale) {
      throw PrecisionExhausted("root iteration did not settle at " + std::to_string(bits) + " bits (degree " +
                               std::to_string(n) + ")");
    }
  }
  return z;
}

std::optional<mpq_class> rational_root_near(const RationalUniPoly& f, const Complex& z) {
  const mpfr_prec_t bits = z.precision();
  Real re = z.real();
  Real tol = Real::pow2(-static_cast<long>(bits) / 2, bits) * std::max(abs(re), Real(1L, bits));
  if (abs(z.imag()) > tol) return std::nullopt;
  mpq_class x;
  mpfr_get_q(x.get_mpq_t(), re.raw());
  // Convergents h/k of the continued fraction of x.
  mpz_class h_prev = 0, h = 1, k_prev = 1, k = 0;
  mpq_class rest = x;
  mpz_class bound = 1;
  bound <<= static_cast<unsigned long>(bits / 4);
  for (int step = 0; step < static_cast<int>(bits); ++step) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    mpz_class h_next = a * h + h_prev, k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    if (k > bound) break;
    mpq_class candidate(h, k);
    candidate.canonicalize();
    if (sgn(f(candidate)) == 0) return candidate;
    mpq_class frac = rest - mpq_class(a);
    if (sgn(frac) == 0) break;
    rest = 1 / frac;
  }
  return std::nullopt;
}

std::vector<mpq_class> characteristic_polynomial(const DenseMatrix<RationalField>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InvalidArgument("characteristic polynomial needs a square matrix");
  mpz_class den = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m(i, j).get_den_mpz_t());
  std::vector<std::vector<mpz_class>> scaled(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled[i][j] = m(i, j).get_num() * (den / m(i, j).get_den());
  // det(t - M) = den^-n det(den t - den M).
  auto chi = detail::berkowitz(scaled, mpz_class(1), mpz_class(0));
  std::vector<mpq_class> out(n + 1);
  mpz_class power = 1;
  for (std::size_t k = n + 1; k-- > 0;) {
    out[k] = mpq_class(chi[k], power);
    out[k].canonicalize();
    power *= den;
  }
  return out;
}

}  // namespace apolar
