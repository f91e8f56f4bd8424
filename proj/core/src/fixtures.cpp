#include "apolar/fixtures.hpp"

#include <fstream>
#include <random>

#include "apolar/json_io.hpp"

namespace apolar {

CompleteIntersection load_fixture(const std::string& path) { return fixture_from_json(read_json_file(path)); }

void save_fixture(const CompleteIntersection& x, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("bad_output", "cannot write " + path);
  out << fixture_to_json(x).dump(2) << '\n';
}

std::vector<QPoly> forms_through_points(int num_vars, int degree, const std::vector<std::vector<mpq_class>>& points) {
  const RationalField q;
  MonomialIndex basis(num_vars, degree);
  DenseMatrix<RationalField> eval(q, points.size(), basis.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      eval(i, j) = eval_poly(monomial_form(q, basis[j]), std::span<const mpq_class>(points[i]));
    }
  }
  std::vector<QPoly> out;
  for (const auto& v : kernel_basis(eval)) out.push_back(QPoly::from_coefficients(q, basis, v));
  return out;
}

namespace {

QPoly primitive(const QPoly& f) {
  mpz_class lcm = 1, g = 0;
  for (const auto& [e, c] : f.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& [e, c] : f.terms()) {
    mpz_class v = c.get_num() * (lcm / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  if (g == 0) return f;
  mpq_class scale(lcm, g);
  scale.canonicalize();
  return f * scale;
}

}  // namespace

CompleteIntersection generate_fixture(int ambient_dim, const std::vector<int>& degrees,
                                      std::vector<std::vector<mpq_class>> witnesses, std::uint64_t seed) {
  const RationalField q;
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 50; ++attempt) {
    CompleteIntersection x;
    x.ambient_dim = ambient_dim;
    x.witness_points = witnesses;
    for (int d : degrees) {
      auto system = forms_through_points(ambient_dim + 1, d, witnesses);
      if (system.empty()) throw InvalidArgument("no form of degree " + std::to_string(d) + " passes through the points");
      QPoly g(q, ambient_dim + 1, d);
      for (const auto& f : system) g += f * mpq_class(static_cast<long>(rng() % 7) - 3);
      if (g.is_zero()) g = system.front();
      x.generators.push_back(primitive(g));
    }
    try {
      x.validate();
      std::mt19937_64 probe(seed ^ 0xa5a5a5a5ULL);
      auto l = sample_linear_subspace(x.num_vars(), x.dimension() + 1, probe);
      ideal_pieces_after_reduction(x, l);
      return x;
    } catch (const Error&) {
    }
  }
  throw DegenerateInput("degenerate_fixture", "no complete intersection through the points after 50 draws");
}

}  // namespace apolar
