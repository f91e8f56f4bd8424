#include <doctest.h>

#include "apolar/cone.hpp"
#include "support.hpp"

using namespace apolar;
using apolar::testing::fixture_path;

namespace {

const RationalField Q;

QPoly linear(std::initializer_list<long> coeffs) {
  std::vector<mpq_class> c;
  for (long v : coeffs) c.emplace_back(v);
  return DualPoint<RationalField>(Q, std::move(c)).linear_form();
}

long total_multiplicity(const std::vector<SlicePoint>& pts) {
  long total = 0;
  for (const auto& p : pts) total += p.multiplicity;
  return total;
}

// Relative distance between f_L and the certificate's sum, recomputed from
// the summands at the certificate precision.
double recomputed_residual(const DecompositionCertificate& cert, const QPoly& f_l) {
  if (cert.exact()) {
    const auto& d = std::get<PowersumDecomposition<RationalField>>(cert.decomposition);
    QPoly sum(Q, f_l.num_vars(), f_l.degree());
    for (const auto& s : d.summands) sum += power_of_linear(s.point, f_l.degree()) * s.lambda;
    return sum == f_l ? 0.0 : 1.0;
  }
  const auto& d = std::get<PowersumDecomposition<ComplexField>>(cert.decomposition);
  const ComplexField cf(cert.precision_bits);
  CPoly sum(cf, f_l.num_vars(), f_l.degree());
  for (const auto& s : d.summands) sum += power_of_linear(s.point, f_l.degree()) * s.lambda;
  auto target = change_field(f_l, cf);
  return ((sum - target).max_abs_coefficient() / target.max_abs_coefficient()).to_double();
}

bool certificate_points_apolar(const DecompositionCertificate& cert, const QPoly& f_l) {
  if (cert.exact()) {
    return is_apolar(std::get<PowersumDecomposition<RationalField>>(cert.decomposition).points(), f_l);
  }
  const auto& d = std::get<PowersumDecomposition<ComplexField>>(cert.decomposition);
  return is_apolar(d.points(), change_field(f_l, ComplexField(cert.precision_bits)));
}

struct Curve {
  std::string file;
  long degree;
  long tangent_total;
};

}  // namespace

TEST_CASE("linear slices meet X in deg X points") {
  for (const auto& c : {Curve{"genus4_canonical.json", 6, 18}, Curve{"genus5_canonical.json", 8, 24},
                        Curve{"elliptic_quartic.json", 4, 8}}) {
    CAPTURE(c.file);
    auto x = load_fixture(fixture_path(c.file));
    std::mt19937_64 rng(61);
    std::vector<QPoly> forms;
    for (int i = 0; i < x.ambient_dim - x.codim(); ++i) forms.push_back(apolar::testing::random_form(Q, x.num_vars(), 1, rng, 7));
    auto pts = linear_slice_points(x, forms);
    CHECK(total_multiplicity(pts) == c.degree);
    for (const auto& p : pts) CHECK(relative_equation_residual(x.generators, p.coords).to_double() < 1e-60);
  }
  auto coplanar = load_fixture(fixture_path("genus4_coplanar.json"));
  auto plane = linear_slice_points(coplanar, {linear({0, 0, 0, 1})});
  REQUIRE(plane.size() == 6);
  for (const auto& p : plane) {
    REQUIRE(p.exact);
    CHECK(p.multiplicity == 1);
  }
  CHECK_THROWS_AS(linear_slice_points(coplanar, std::vector<QPoly>{}), InvalidArgument);
}

TEST_CASE("tangent pencils have the expected degree") {
  for (const auto& c : {Curve{"genus4_canonical.json", 6, 18}, Curve{"genus5_canonical.json", 8, 24}}) {
    CAPTURE(c.file);
    auto x = load_fixture(fixture_path(c.file));
    auto section = sample_section(x, 3);
    auto delta = pencil_discriminant(x, section.subspace);
    CHECK(delta.degree() == x.socle_degree());
    auto data = tangent_pencil(x, section.subspace);
    long total = 0;
    for (const auto& t : data) {
      total += t.multiplicity;
      CHECK(check_tangent_datum(x, section.subspace, t));
    }
    CHECK(total == c.tangent_total);
  }
}

TEST_CASE("cone construction gives deg X - 1 summands") {
  for (const auto& c : {Curve{"genus4_canonical.json", 6, 18}, Curve{"genus5_canonical.json", 8, 24}}) {
    CAPTURE(c.file);
    auto x = load_fixture(fixture_path(c.file));
    auto section = sample_section(x, 5);
    for (std::size_t w = 0; w < 2; ++w) {
      auto cert = cone_decomposition(x, section.subspace, x.witness_points[w], section.form);
      CHECK(cert.method == "cone");
      CHECK(cert.size() == static_cast<std::size_t>(c.degree - 1));
      CHECK(cert.witness_multiplicity == 1);
      long total = 0;
      for (int m : cert.slice_multiplicities) total += m;
      CHECK(total == c.degree);
      CHECK(cert.residual().to_double() <= 1e-40);
      CHECK(recomputed_residual(cert, section.form) <= 1e-40);
      CHECK(certificate_points_apolar(cert, section.form));
    }
  }
}

TEST_CASE("tangent construction gives deg X - 2 summands") {
  for (const auto& c : {Curve{"genus4_canonical.json", 6, 18}, Curve{"genus5_canonical.json", 8, 24}}) {
    CAPTURE(c.file);
    auto x = load_fixture(fixture_path(c.file));
    auto section = sample_section(x, 7);
    auto data = tangent_pencil(x, section.subspace);
    int done = 0;
    for (const auto& t : data) {
      if (t.multiplicity != 1 || done == 2) continue;
      auto cert = tangent_decomposition(x, section.subspace, t, section.form);
      CHECK(cert.method == "tangent");
      CHECK(cert.size() == static_cast<std::size_t>(c.degree - 2));
      CHECK(cert.witness_multiplicity == 2);
      CHECK(has_ordinary_contact(x, t.p.coords, t.hyperplane));
      CHECK(cert.residual().to_double() <= 1e-40);
      CHECK(recomputed_residual(cert, section.form) <= 1e-40);
      CHECK(certificate_points_apolar(cert, section.form));
      ++done;
    }
    CHECK(done == 2);
  }
}

TEST_CASE("cone construction is exact when the slice is rational") {
  auto x = load_fixture(fixture_path("genus4_coplanar.json"));
  std::mt19937_64 rng(62);
  int checked = 0;
  for (int trial = 0; trial < 6 && checked < 3; ++trial) {
    QPoly h = apolar::testing::random_form(Q, 4, 1, rng, 9);
    LinearSubspace l = LinearSubspace::from_forms({linear({0, 0, 0, 1}), h});
    QPoly f(Q, 2, 3);
    try {
      f = apolar_hypersurface(x, l);
    } catch (const DegenerateInput&) {
      continue;
    }
    auto cert = cone_decomposition(x, l, x.witness_points[1], f);
    REQUIRE(cert.exact());
    CHECK(cert.size() == 5);
    CHECK(cert.residual().is_zero());
    CHECK(recomputed_residual(cert, f) == 0.0);
    CHECK(certificate_points_apolar(cert, f));
    ++checked;
  }
  CHECK(checked == 3);
}

TEST_CASE("cone construction error paths") {
  auto x = load_fixture(fixture_path("genus4_canonical.json"));
  auto section = sample_section(x, 1);
  try {
    cone_decomposition(x, section.subspace, {1, 2, 3, 5}, section.form);
    FAIL("point off X accepted");
  } catch (const InvalidArgument& e) {
    CHECK(e.kind() == "not_on_x");
  }
  // L through the witness e0.
  auto through = LinearSubspace::from_forms({linear({0, 1, 0, 0}), linear({0, 0, 1, 0})});
  try {
    cone_decomposition(x, through, x.witness_points[0], section.form);
    FAIL("point in L accepted");
  } catch (const DegenerateInput& e) {
    CHECK(e.kind() == "point_in_L");
  }
  CHECK_THROWS_AS(cone_decomposition(x, LinearSubspace::from_forms({linear({1, 1, 1, 1})}), x.witness_points[0],
                                     section.form),
                  InvalidArgument);
}

TEST_CASE("ordinary contact detection") {
  // Conic x0^2 + x1^2 = x2^2 in x3 = 0 viewed inside P^3 as a curve.
  CompleteIntersection conic{3, {linear({1, 0, 0, 0}) * linear({1, 0, 0, 0}) + linear({0, 1, 0, 0}) * linear({0, 1, 0, 0}) -
                                     linear({0, 0, 1, 0}) * linear({0, 0, 1, 0}),
                                 linear({0, 0, 0, 1})},
                             {{1, 0, 1, 0}}};
  const ComplexField cf(512);
  std::vector<Complex> p{Complex(1L, 512), Complex(0L, 512), Complex(1L, 512), Complex(0L, 512)};
  // x0 - x2 is tangent at (1:0:1:0) with contact 2.
  CHECK(has_ordinary_contact(conic, p, change_field(linear({1, 0, -1, 0}), cf)));

  // x1 x2^2 = x0^3 has a flex at (0:0:1:0) with tangent x1 = 0.
  QPoly x0 = linear({1, 0, 0, 0}), x1 = linear({0, 1, 0, 0}), x2 = linear({0, 0, 1, 0});
  CompleteIntersection cubic{3, {x1 * x2 * x2 - x0 * x0 * x0, linear({0, 0, 0, 1})}, {{0, 0, 1, 0}}};
  CHECK_NOTHROW(cubic.validate());
  std::vector<Complex> flex{Complex(0L, 512), Complex(0L, 512), Complex(1L, 512), Complex(0L, 512)};
  CHECK_FALSE(has_ordinary_contact(cubic, flex, change_field(x1, cf)));
  CHECK_FALSE(has_ordinary_contact(cubic, flex, change_field(linear({0, 1, 0, 1}), cf)));
  std::vector<Complex> ordinary{Complex(1L, 512), Complex(1L, 512), Complex(1L, 512), Complex(0L, 512)};
  // Tangent at (1:1:1:0): gradient (-3, 1, 2, *).
  CHECK(has_ordinary_contact(cubic, ordinary, change_field(linear({-3, 1, 2, 0}), cf)));
}
