#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "apolar/cone.hpp"
#include "apolar/fixtures.hpp"
#include "support.hpp"

using namespace apolar;
using apolar::testing::fixture_path;
using apolar::testing::proportional;
using apolar::testing::random_form;
using apolar::testing::random_point;

namespace {

constexpr mpfr_prec_t kBits = 256;
constexpr double kResidualTol = 1e-40;
constexpr double kMacaulaySeconds = 60.0;
constexpr double kHilbertSeconds = 30.0;
constexpr double kConeSeconds = 120.0;

const RationalField Q;

struct Verdict {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <CoefficientField Field>
GradedIdealPieces<Field> apolar_pieces(const MultiPoly<Field>& f) {
  GradedIdealPieces<Field> ideal{f.field(), f.num_vars(), {}};
  for (int e = 1; e <= f.degree(); ++e) ideal.pieces[e] = apolar_ideal_piece(f, e);
  return ideal;
}

double relative_residual(const DecompositionCertificate& cert, const QPoly& f_l) {
  if (cert.exact()) {
    const auto& d = std::get<PowersumDecomposition<RationalField>>(cert.decomposition);
    return powersum_difference(f_l, d.summands).is_zero() ? 0.0 : 1.0;
  }
  const auto& d = std::get<PowersumDecomposition<ComplexField>>(cert.decomposition);
  const ComplexField cf(cert.precision_bits);
  CPoly sum(cf, f_l.num_vars(), f_l.degree());
  for (const auto& s : d.summands) sum += power_of_linear(s.point, f_l.degree()) * s.lambda;
  auto target = change_field(f_l, cf);
  return ((sum - target).max_abs_coefficient() / target.max_abs_coefficient()).to_double();
}

struct Curve {
  const char* file;
  long degree;
  std::vector<int> hilbert;
  long dual_degree;
};

const std::vector<Curve> kCurves{
    {"genus4_canonical.json", 6, {1, 2, 2, 1}, 18},
    {"genus5_canonical.json", 8, {1, 3, 3, 1}, 24},
};

Verdict macaulay_roundtrip() {
  Timer timer;
  std::mt19937_64 rng(1001);
  const PrimeField fp(101);
  int q_ok = 0, fp_ok = 0, q_total = 0, fp_total = 0;
  while (q_total < 200 || fp_total < 200) {
    const int vars = 1 + static_cast<int>(rng() % 6);
    const int d = 1 + static_cast<int>(rng() % 4);
    if (q_total < 200) {
      auto f = random_form(Q, vars, d, rng);
      if (!f.is_zero()) {
        ++q_total;
        q_ok += proportional(dual_socle_generator(apolar_pieces(f), d), f) ? 1 : 0;
      }
    }
    if (fp_total < 200) {
      auto g = random_form(fp, vars, d, rng);
      if (!g.is_zero()) {
        ++fp_total;
        fp_ok += proportional(dual_socle_generator(apolar_pieces(g), d), g) ? 1 : 0;
      }
    }
  }
  const double t = timer.seconds();
  std::ostringstream s;
  s << "Q " << q_ok << "/200, F_101 " << fp_ok << "/200, " << t << " s (limit " << kMacaulaySeconds << ")";
  return {q_ok == 200 && fp_ok == 200 && t < kMacaulaySeconds, s.str()};
}

Verdict apolarity_lemma() {
  std::mt19937_64 rng(1002);
  int agree = 0, constructed = 0, constructed_ok = 0, apolar_count = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int vars = 2 + static_cast<int>(rng() % 3);
    const int d = 2 + static_cast<int>(rng() % 3);
    const int s = 1 + static_cast<int>(rng() % 6);
    std::vector<DualPoint<RationalField>> pts;
    while (static_cast<int>(pts.size()) < s) {
      auto p = random_point(Q, vars, rng, 3);
      bool fresh = true;
      for (const auto& q : pts) fresh = fresh && !projectively_equal(p, q);
      if (fresh) pts.push_back(p);
    }
    const bool build = trial % 2 == 0;
    QPoly f(Q, vars, d);
    if (build) {
      for (const auto& p : pts) f += power_of_linear(p, d) * mpq_class(1 + static_cast<long>(rng() % 7));
    }
    if (!build || f.is_zero()) f = random_form(Q, vars, d, rng, 3);
    if (f.is_zero()) f.add_term(Exponent(monomials(vars, d).front()), 1);
    const bool apolar = is_apolar(pts, f);
    auto solved = solve_powersum(pts, f);
    const bool exact = solved.ok() && solved.decomposition->residual.is_zero() &&
                       powersum_difference(f, solved.decomposition->summands).is_zero();
    agree += (apolar == solved.ok() && (!solved.ok() || exact)) ? 1 : 0;
    apolar_count += apolar ? 1 : 0;
    if (build) {
      ++constructed;
      constructed_ok += (apolar && exact) ? 1 : 0;
    }
  }
  std::ostringstream s;
  s << "agree " << agree << "/200, constructed " << constructed_ok << "/" << constructed << " exact, " << apolar_count
    << " apolar verdicts";
  return {agree == 200 && constructed_ok == constructed, s.str()};
}

unsigned long binomial(unsigned long n, unsigned long k) {
  unsigned long r = 1;
  for (unsigned long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Verdict alexander_hirschowitz() {
  bool ok = true;
  std::ostringstream s;
  for (int d = 3; d <= 6; ++d) {
    for (int n = 1; n <= 10; ++n) {
      const unsigned long dim = binomial(n + d, n);
      unsigned long expected = (dim + n) / (n + 1);
      if ((d == 4 && n >= 2 && n <= 4) || (d == 3 && n == 4)) ++expected;
      ok = ok && generic_rank(d, n) == expected;
    }
  }
  for (int n = 0; n <= 10; ++n) ok = ok && generic_rank(2, n) == static_cast<unsigned long>(n + 1);
  const bool table = ok && generic_rank(3, 4) == 8 && generic_rank(4, 2) == 6 && generic_rank(4, 3) == 10 &&
                     generic_rank(4, 4) == 15;
  s << "table " << (table ? "ok" : "mismatch") << "; Terracini d=3:";
  std::mt19937_64 rng(1003);
  bool terracini = true;
  for (int n = 1; n <= 4; ++n) {
    const int r = apolar::testing::terracini_rank(3, n, rng);
    s << " n=" << n << "->" << r;
    terracini = terracini && r == static_cast<int>(generic_rank(3, n));
  }
  return {table && terracini, s.str()};
}

Verdict section_hilbert() {
  Timer timer;
  std::ostringstream s;
  bool ok = true;
  for (const auto& c : kCurves) {
    auto x = load_fixture(fixture_path(c.file));
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto section = sample_section(x, seed);
      good += (section.hilbert.values == c.hilbert && hilbert_function(section.form).values == c.hilbert) ? 1 : 0;
    }
    ok = ok && good == 20;
    s << c.file << " " << good << "/20; ";
  }
  const double t = timer.seconds();
  s << t << " s (limit " << kHilbertSeconds << ")";
  return {ok && t < kHilbertSeconds, s.str()};
}

Verdict cone_construction() {
  Timer timer;
  std::ostringstream s;
  bool ok = true;
  for (const auto& c : kCurves) {
    auto x = load_fixture(fixture_path(c.file));
    int good = 0;
    double worst = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      auto section = sample_section(x, seed);
      const auto& p = x.witness_points[(seed - 1) % x.witness_points.size()];
      try {
        auto cert = cone_decomposition(x, section.subspace, p, section.form, kBits);
        const double r = std::max(cert.residual().to_double(), relative_residual(cert, section.form));
        worst = std::max(worst, r);
        const bool exact_ok = !cert.exact() || r == 0.0;
        good += (cert.size() == static_cast<std::size_t>(c.degree - 1) && r <= kResidualTol && exact_ok) ? 1 : 0;
      } catch (const Error& e) {
        s << "[" << c.file << " seed " << seed << ": " << e.what() << "] ";
      }
    }
    ok = ok && good == 10;
    s << c.file << " " << good << "/10 with " << c.degree - 1 << " summands, worst residual " << worst << "; ";
  }
  const double t = timer.seconds();
  s << t << " s (limit " << kConeSeconds << ")";
  return {ok && t < kConeSeconds, s.str()};
}

Verdict tangent_construction() {
  std::ostringstream s;
  bool ok = true;
  for (const auto& c : kCurves) {
    auto x = load_fixture(fixture_path(c.file));
    int good = 0, tried = 0;
    double worst = 0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto section = sample_section(x, seed);
      for (const auto& datum : tangent_pencil(x, section.subspace, kBits)) {
        ++tried;
        try {
          auto cert = tangent_decomposition(x, section.subspace, datum, section.form, kBits);
          const double r = std::max(cert.residual().to_double(), relative_residual(cert, section.form));
          worst = std::max(worst, r);
          good += (cert.size() == static_cast<std::size_t>(c.degree - 2) && cert.witness_multiplicity == 2 &&
                   r <= kResidualTol)
                      ? 1
                      : 0;
        } catch (const Error& e) {
          s << "[" << c.file << " seed " << seed << ": " << e.what() << "] ";
        }
      }
    }
    ok = ok && tried > 0 && good == tried;
    s << c.file << " " << good << "/" << tried << " tangent data with " << c.degree - 2
      << " summands and p of multiplicity 2, worst residual " << worst << "; ";
  }
  return {ok, s.str()};
}

Verdict dual_degree() {
  std::ostringstream s;
  bool ok = true;
  for (const auto& c : kCurves) {
    auto x = load_fixture(fixture_path(c.file));
    s << c.file << " totals";
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto section = sample_section(x, seed);
      auto data = tangent_pencil(x, section.subspace, kBits);
      long total = 0;
      bool checked = true;
      for (const auto& t : data) {
        total += t.multiplicity;
        checked = checked && check_tangent_datum(x, section.subspace, t, kBits);
      }
      s << " " << total << "(" << data.size() << " points)";
      ok = ok && checked && total == c.dual_degree;
    }
    s << " expected " << c.dual_degree << "; ";
  }
  return {ok, s.str()};
}

Verdict specialness() {
  bool ok = true;
  for (long g = 4; g <= 30; ++g) {
    const long ceiling = (g * (g - 1) + 5) / 6;
    ok = ok && ((2 * g - 4 < ceiling) == (g >= 11));
    ok = ok && specialness_report(static_cast<int>(g)).is_special == (g >= 11);
  }
  auto g10 = specialness_report(10);
  auto g8 = specialness_report(8);
  std::ostringstream s;
  s << "g=10 (" << g10.construction_count << ", " << g10.generic_count << "), g=8 " << g8.grassmannian_dim << " vs "
    << g8.cubic_moduli_dim;
  ok = ok && g10.construction_count == 16 && g10.generic_count == 15 && g8.grassmannian_dim == 12 &&
       g8.cubic_moduli_dim == 20 && g8.image_deficient;
  return {ok, s.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"C1 Macaulay roundtrip", macaulay_roundtrip},
      {"C2 Apolarity Lemma equivalence", apolarity_lemma},
      {"C3 Alexander-Hirschowitz table", alexander_hirschowitz},
      {"C4 Section Hilbert function", section_hilbert},
      {"C5 Cone construction", cone_construction},
      {"C6 Tangent construction", tangent_construction},
      {"C7 Dual-degree count", dual_degree},
      {"C8 Specialness arithmetic", specialness},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
