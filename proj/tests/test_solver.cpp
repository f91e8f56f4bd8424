#include <doctest.h>

#include "apolar/univariate.hpp"
#include "apolar/zero_dim.hpp"
#include "support.hpp"

using namespace apolar;
using apolar::testing::draw;

namespace {

const RationalField Q;

RationalUniPoly from_roots(const std::vector<std::pair<mpq_class, int>>& roots) {
  std::vector<mpq_class> c{1};
  for (const auto& [r, m] : roots) {
    for (int k = 0; k < m; ++k) {
      std::vector<mpq_class> next(c.size() + 1);
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i + 1] += c[i];
        next[i] -= r * c[i];
      }
      c = std::move(next);
    }
  }
  return RationalUniPoly(std::move(c));
}

QPoly linear(std::initializer_list<long> coeffs) {
  std::vector<mpq_class> c;
  for (long v : coeffs) c.emplace_back(v);
  return DualPoint<RationalField>(Q, std::move(c)).linear_form();
}

bool contains_exact(const std::vector<SolvedPoint>& pts, const std::vector<mpq_class>& p, int multiplicity) {
  for (const auto& s : pts) {
    if (!s.exact) continue;
    DualPoint<RationalField> a(Q, *s.exact), b(Q, p);
    if (projectively_equal(a, b)) return s.multiplicity == multiplicity;
  }
  return false;
}

}  // namespace

TEST_CASE("characteristic polynomial over Q agrees with the field-generic Berkowitz") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    DenseMatrix<RationalField> m(Q, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = apolar::testing::rational(draw(rng, 9), 1 + static_cast<long>(rng() % 6));
    std::vector<std::vector<mpq_class>> rows(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows[i].push_back(m(i, j));
    auto generic = detail::berkowitz(rows, mpq_class(1), mpq_class(0));
    CHECK(characteristic_polynomial(m) == generic);
    // Cayley-Hamilton.
    auto chi = characteristic_polynomial(m);
    DenseMatrix<RationalField> acc(Q, n, n), power = DenseMatrix<RationalField>::identity(Q, n);
    for (std::size_t k = 0; k < chi.size(); ++k) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) acc(i, j) += chi[k] * power(i, j);
      power = power * m;
    }
    for (const auto& x : acc.entries()) CHECK(sgn(x) == 0);
  }
}

TEST_CASE("squarefree decomposition recovers multiplicities") {
  auto f = from_roots({{mpq_class(1, 2), 3}, {-2, 1}, {5, 2}});
  auto parts = squarefree_decomposition(f);
  std::map<int, int> degree_of;
  for (const auto& [g, m] : parts) degree_of[m] = g.degree();
  CHECK(degree_of == std::map<int, int>{{1, 1}, {2, 1}, {3, 1}});
  for (const auto& [g, m] : parts) {
    if (m == 3) CHECK(sgn(g(mpq_class(1, 2))) == 0);
    if (m == 2) CHECK(sgn(g(mpq_class(5))) == 0);
  }
}

TEST_CASE("polynomial roots and rational recognition") {
  auto f = from_roots({{mpq_class(3, 7), 1}, {-4, 1}, {mpq_class(11, 5), 1}});
  std::vector<mpq_class> g_coeffs{2, 0, 1};  // x^2 + 2
  std::vector<mpq_class> coeffs = f.coeffs();
  RationalUniPoly g(g_coeffs);
  std::vector<Complex> c;
  for (const auto& x : coeffs) c.emplace_back(x, 256);
  auto roots = polynomial_roots(c, 256);
  REQUIRE(roots.size() == 3);
  int rational = 0;
  for (const auto& z : roots) {
    auto r = rational_root_near(f, z);
    REQUIRE(r);
    CHECK(sgn(f(*r)) == 0);
    ++rational;
  }
  CHECK(rational == 3);
  std::vector<Complex> gc;
  for (const auto& x : g_coeffs) gc.emplace_back(x, 256);
  for (const auto& z : polynomial_roots(gc, 256)) {
    CHECK_FALSE(rational_root_near(g, z));
    CHECK(std::abs(std::abs(z.imag().to_double()) - std::sqrt(2.0)) < 1e-15);
  }
}

TEST_CASE("zero-dimensional solve: rational points of a conic and a line") {
  // x^2 + y^2 - z^2 and x - z meet in (1:0:1) twice.
  QPoly conic(Q, 3, 2);
  conic.add_term({2, 0, 0}, 1);
  conic.add_term({0, 2, 0}, 1);
  conic.add_term({0, 0, 2}, -1);
  auto tangent = solve_zero_dimensional({conic, linear({1, 0, -1})});
  REQUIRE(tangent.size() == 1);
  CHECK(tangent[0].multiplicity == 2);
  CHECK(contains_exact(tangent, {1, 0, 1}, 2));

  auto secant = solve_zero_dimensional({conic, linear({0, 1, 0})});
  REQUIRE(secant.size() == 2);
  CHECK(contains_exact(secant, {1, 0, 1}, 1));
  CHECK(contains_exact(secant, {-1, 0, 1}, 1));
}

TEST_CASE("zero-dimensional solve: irrational points are refined") {
  // x^2 - 2 z^2 = 0, y = z: points (+-sqrt 2 : 1 : 1).
  QPoly q(Q, 3, 2);
  q.add_term({2, 0, 0}, 1);
  q.add_term({0, 0, 2}, -2);
  auto pts = solve_zero_dimensional({q, linear({0, 1, -1})});
  REQUIRE(pts.size() == 2);
  for (const auto& p : pts) {
    CHECK_FALSE(p.exact);
    CHECK(p.multiplicity == 1);
    CHECK(p.residual.to_double() < 1e-70);
    const double ratio = (p.coords[0] / p.coords[2]).real().to_double();
    CHECK(std::abs(std::abs(ratio) - std::sqrt(2.0)) < 1e-14);
  }
}

TEST_CASE("zero-dimensional solve: Bezout count for random systems") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 4; ++trial) {
    auto f = apolar::testing::random_form(Q, 3, 2, rng, 3);
    auto g = apolar::testing::random_form(Q, 3, 3, rng, 3);
    auto pts = solve_zero_dimensional({f, g});
    long total = 0;
    for (const auto& p : pts) {
      total += p.multiplicity;
      CHECK(relative_equation_residual(std::vector<QPoly>{f, g}, p.coords).to_double() < 1e-60);
    }
    CHECK(total == 6);
  }
}

TEST_CASE("zero-dimensional solve: non-finite intersections are degenerate") {
  auto l = linear({1, 1, 0});
  CHECK_THROWS_AS(solve_zero_dimensional({l * l, l}), DegenerateInput);
  CHECK_THROWS_AS(solve_zero_dimensional({l}), InvalidArgument);
}

TEST_CASE("zero-dimensional solve over C matches the rational solve") {
  std::mt19937_64 rng(33);
  const ComplexField cf(512);
  auto f = apolar::testing::random_form(Q, 3, 2, rng, 3);
  auto g = apolar::testing::random_form(Q, 3, 2, rng, 3);
  auto exact = solve_zero_dimensional({f, g});
  auto floating = solve_zero_dimensional(std::vector<MultiPoly<ComplexField>>{change_field(f, cf), change_field(g, cf)});
  REQUIRE(exact.size() == floating.size());
  for (const auto& p : exact) {
    bool found = false;
    for (const auto& q : floating) found = found || same_projective_point(p.coords, q.coords, 256);
    CHECK(found);
  }
}
