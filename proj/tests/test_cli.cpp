#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "apolar/json_io.hpp"
#include "cli.hpp"
#include "support.hpp"

using namespace apolar;
using apolar::testing::fixture_path;
using Json = nlohmann::json;

namespace {

const RationalField Q;

struct Outcome {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Outcome run(const std::vector<std::string>& args, const std::map<std::string, std::string>& env = {}) {
  std::ostringstream out, err;
  auto lookup = [&env](const char* name) -> const char* {
    auto it = env.find(name);
    return it == env.end() ? nullptr : it->second.c_str();
  };
  const int code = cli::run_command(args, out, err, lookup);
  return {code, out.str(), err.str()};
}

std::string write_json(const std::string& name, const Json& j) {
  std::ofstream(name) << j.dump(2);
  return name;
}

QPoly sum_of_cubes() {
  QPoly f(Q, 2, 3);
  f.add_term({3, 0}, 1);
  f.add_term({0, 3}, 8);
  return f;
}

}  // namespace

TEST_CASE("rank and special subcommands") {
  auto r = run({"rank", "--d", "3", "--n", "4"});
  CHECK(r.code == 0);
  CHECK(r.json() == Json{{"rank", 8}});
  auto s = run({"special", "--genus", "11"});
  REQUIRE(s.code == 0);
  CHECK(s.json().at("construction") == 18);
  CHECK(s.json().at("generic") == 19);
  CHECK(s.json().at("special") == true);
  auto t = run({"special", "--genus", "10"});
  CHECK(t.json().at("special") == false);
}

TEST_CASE("perp, hf and dual-socle on a sum of cubes") {
  const auto poly = write_json("cli_cubes.json", poly_to_json(sum_of_cubes()));
  auto perp = run({"perp", poly, "--degree", "2"});
  REQUIRE(perp.code == 0);
  REQUIRE(perp.json().at("basis").size() == 1);
  auto g = poly_from_json(perp.json().at("basis")[0], Q);
  CHECK(apolar::testing::proportional(g, QPoly::monomial(Q, {1, 1}, 1)));

  auto hf = run({"hf", poly});
  REQUIRE(hf.code == 0);
  CHECK(hf.json().at("hilbert") == Json::array({1, 2, 2, 1}));
  CHECK(hf.json().at("symmetric") == true);

  auto fp = run({"--field", "Fp:101", "hf", poly});
  REQUIRE(fp.code == 0);
  CHECK(fp.json().at("hilbert") == Json::array({1, 2, 2, 1}));

  GradedIdealPieces<RationalField> ideal{Q, 2, {}};
  for (int e = 1; e <= 3; ++e) ideal.pieces[e] = apolar_ideal_piece(sum_of_cubes(), e);
  const auto ideal_file = write_json("cli_ideal.json", ideal_to_json(ideal));
  auto dual = run({"dual-socle", ideal_file, "--socle", "3"});
  REQUIRE(dual.code == 0);
  CHECK(apolar::testing::proportional(poly_from_json(dual.json().at("form"), Q), sum_of_cubes()));
  std::remove(poly.c_str());
  std::remove(ideal_file.c_str());
}

TEST_CASE("verify accepts apolar point sets and rejects others") {
  const auto poly = write_json("cli_verify_poly.json", poly_to_json(sum_of_cubes()));
  const auto good = write_json("cli_good.json", Json{{"points", Json::array({Json::array({"1", "0"}), Json::array({"0", "1"})})}});
  const auto bad = write_json("cli_bad.json", Json{{"points", Json::array({Json::array({"1", "1"}), Json::array({"0", "1"})})}});
  auto ok = run({"verify", poly, good});
  REQUIRE(ok.code == 0);
  CHECK(ok.json().at("verified") == true);
  auto no = run({"verify", poly, bad});
  REQUIRE(no.code == 0);
  CHECK(no.json().at("apolar") == false);
  CHECK(no.json().at("verified") == false);
  CHECK(no.json().at("certificate").is_null());
  for (const auto& f : {poly, good, bad}) std::remove(f.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"rank"}).code == 1);
  CHECK(run({"--precision", "12", "rank", "--d", "3", "--n", "2"}).code == 1);
  CHECK(run({"--field", "Fp:100", "hf", fixture_path("genus4_canonical.json")}).code == 1);
  auto missing = run({"hf", "no_such_file.json"});
  CHECK(missing.code == 1);
  CHECK(missing.json().contains("error"));

  auto zero = write_json("cli_zero.json", poly_to_json(QPoly(Q, 2, 3)));
  CHECK(run({"hf", zero}).code == 1);
  std::remove(zero.c_str());

  GradedIdealPieces<RationalField> everything{Q, 2, {}};
  everything.pieces[1] = {QPoly::monomial(Q, {1, 0}, 1), QPoly::monomial(Q, {0, 1}, 1)};
  auto ideal = write_json("cli_all.json", ideal_to_json(everything));
  auto degenerate = run({"dual-socle", ideal, "--socle", "3"});
  CHECK(degenerate.code == 2);
  CHECK(degenerate.json().at("error").at("kind") == "kernel_dimension");
  std::remove(ideal.c_str());

  auto low = run({"--precision", "64", "decompose", fixture_path("genus5_canonical.json"), "--method", "tangent"});
  CHECK(low.code == 3);
  CHECK(low.json().at("error").at("kind") == "precision_exhausted");

  auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("decompose") != std::string::npos);
}

TEST_CASE("flags override the environment, which overrides defaults") {
  const auto fixture = fixture_path("genus4_canonical.json");
  auto by_default = run({"section", fixture});
  auto by_env = run({"section", fixture}, {{"APOLAR_SEED", "9"}});
  auto by_flag = run({"--seed", "4", "section", fixture}, {{"APOLAR_SEED", "9"}});
  auto flag_after = run({"section", fixture, "--seed", "4"}, {{"APOLAR_SEED", "9"}});
  REQUIRE(by_default.code == 0);
  CHECK(by_default.json().at("seed") == 1);
  CHECK(by_env.json().at("seed") == 9);
  CHECK(by_flag.json().at("seed") == 4);
  CHECK(flag_after.out == by_flag.out);
  CHECK(by_env.json().at("form") != by_flag.json().at("form"));

  CHECK(run({"rank", "--d", "3", "--n", "2"}, {{"APOLAR_PRECISION", "8"}}).code == 1);
  CHECK(run({"--precision", "128", "rank", "--d", "3", "--n", "2"}, {{"APOLAR_PRECISION", "8"}}).code == 0);
  CHECK(run({"rank", "--d", "3", "--n", "2"}, {{"APOLAR_TOL", "tiny"}}).code == 1);
}

TEST_CASE("output is byte-identical across runs") {
  const auto fixture = fixture_path("genus4_canonical.json");
  for (const std::string method : {"cone", "tangent"}) {
    auto a = run({"--seed", "3", "decompose", fixture, "--method", method});
    auto b = run({"--seed", "3", "decompose", fixture, "--method", method});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("decompose output verifies") {
  const auto fixture = fixture_path("genus4_canonical.json");
  for (const std::string method : {"cone", "tangent"}) {
    CAPTURE(method);
    auto d = run({"decompose", fixture, "--method", method});
    REQUIRE(d.code == 0);
    const auto j = d.json();
    CHECK(j.at("method") == method);
    CHECK(j.at("summands").size() == (method == "cone" ? 5u : 4u));
    const auto cert = write_json("cli_cert.json", j);
    auto v = run({"verify", cert, cert});
    REQUIRE(v.code == 0);
    CHECK(v.json().at("verified") == true);
    std::remove(cert.c_str());
  }
  auto exact = run({"decompose", fixture_path("genus4_coplanar.json"), "--method", "cone"});
  CHECK(exact.code == 0);
  auto tangents = run({"tangents", fixture});
  REQUIRE(tangents.code == 0);
  CHECK(tangents.json().at("total_multiplicity") == 18);
  CHECK(tangents.json().at("all_checked") == true);
  CHECK(run({"--field", "C", "section", fixture}).code == 1);
}

TEST_CASE("JSON round trips") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = apolar::testing::random_form(Q, 3, 3, rng);
    f.add_term({1, 1, 1}, mpq_class(1, 7));
    CHECK(poly_from_json(Json::parse(poly_to_json(f).dump()), Q) == f);
  }
  const ComplexField cf(256);
  auto c = change_field(sum_of_cubes(), cf) * cf.parse("0.5+1.25i");
  auto back = poly_from_json(Json::parse(poly_to_json(c).dump()), cf);
  CHECK((back - c).max_abs_coefficient().to_double() < 1e-70);

  auto f = apolar::testing::random_form(Q, 3, 3, rng);
  GradedIdealPieces<RationalField> ideal{Q, 3, {}};
  for (int e = 1; e <= 3; ++e) ideal.pieces[e] = apolar_ideal_piece(f, e);
  auto ideal_back = ideal_from_json(Json::parse(ideal_to_json(ideal).dump()), Q);
  for (int e = 1; e <= 3; ++e) CHECK(ideal_back.piece(e) == ideal.piece(e));

  auto x = load_fixture(fixture_path("genus5_canonical.json"));
  auto y = fixture_from_json(fixture_to_json(x));
  REQUIRE(y.generators.size() == x.generators.size());
  for (std::size_t i = 0; i < x.generators.size(); ++i) CHECK(y.generators[i] == x.generators[i]);
  CHECK(y.witness_points == x.witness_points);

  CHECK_THROWS_AS(poly_from_json(Json{{"vars", 2}, {"degree", 1}, {"terms", {{{"exp", {2, 0}}, {"coeff", "1"}}}}}, Q),
                  InvalidArgument);
}

TEST_CASE("genus-5 tangent certificate at seed 7") {
  auto d = run({"decompose", fixture_path("genus5_canonical.json"), "--method", "tangent", "--seed", "7"});
  REQUIRE(d.code == 0);
  const auto j = d.json();
  CHECK(j.at("summands").size() == 6u);
  CHECK(j.at("witness_multiplicity") == 2);
  CHECK(std::stod(j.at("residual").get<std::string>()) <= 1e-40);
  const auto cert = write_json("cli_cert5.json", j);
  auto v = run({"verify", cert, cert});
  REQUIRE(v.code == 0);
  CHECK(v.json().at("verified") == true);
  std::remove(cert.c_str());
}
