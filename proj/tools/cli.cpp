#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

#include "apolar/cone.hpp"
#include "apolar/fixtures.hpp"
#include "apolar/json_io.hpp"

namespace apolar::cli {

namespace {

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& detail) : Error("usage", detail) {}
};

template <typename T>
T parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    T value;
    if constexpr (std::is_same_v<T, double>) {
      value = std::stod(text, &used);
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!text.empty() && text.front() == '-') throw std::invalid_argument(text);
      value = static_cast<T>(std::stoull(text, &used));
    } else {
      value = static_cast<T>(std::stoll(text, &used));
    }
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + what + " '" + text + "'");
  }
}

void check_config(const RunConfig& c) {
  if (c.precision < 64 || c.precision > 1 << 16) throw UsageError("precision must lie in [64, 65536] bits");
  if (!(c.tolerance > 0.0)) throw UsageError("tolerance must be positive");
  if (c.pivot_bits < 0) throw UsageError("pivot bits must be non-negative");
}

template <class Fn>
Json with_field(const RunConfig& c, Fn&& fn) {
  if (c.field == "Q") return fn(RationalField{});
  if (c.field.rfind("Fp:", 0) == 0) {
    const auto p = parse_number<std::uint32_t>(c.field.substr(3), "prime");
    return fn(PrimeField(p));
  }
  if (c.field == "C" || c.field.rfind("C:", 0) == 0) {
    const mpfr_prec_t bits = c.field == "C" ? c.precision : parse_number<long>(c.field.substr(2), "bit count");
    if (bits < 64) throw UsageError("complex backend needs at least 64 bits");
    return fn(ComplexField(bits, c.pivot_bits > 0 ? c.pivot_bits : bits / 2));
  }
  throw UsageError("unknown field '" + c.field + "' (expected Q, Fp:<p> or C:<bits>)");
}

void require_rational(const RunConfig& c, const std::string& command) {
  if (c.field != "Q") throw UsageError(command + " works over Q; got --field " + c.field);
}

Json error_json(const std::string& kind, const std::string& detail) {
  return {{"error", {{"kind", kind}, {"detail", detail}}}};
}

bool within_tolerance(const DecompositionCertificate& cert, const RunConfig& c) {
  return cert.exact() || cert.residual() <= Real(c.tolerance, cert.precision_bits);
}

Json certificate_with_context(const DecompositionCertificate& cert, const LinearSubspace& l, const RunConfig& c) {
  Json out = certificate_to_json(cert);
  out["subspace"] = subspace_to_json(l);
  out["seed"] = c.seed;
  return out;
}

struct Tracer {
  std::ostream& err;
  bool on;
  void operator()(const std::string& line) const {
    if (on) err << "[apolar] " << line << '\n';
  }
};

Json decompose(const std::string& path, const std::string& method, bool all_tangents, std::size_t witness,
               const RunConfig& c, const Tracer& log) {
  require_rational(c, "decompose");
  auto x = load_fixture(path);
  auto section = sample_section(x, c.seed);
  log("section found after " + std::to_string(section.attempts) + " draw(s)");

  if (method == "cone") {
    if (all_tangents) throw UsageError("--all-tangents needs --method tangent");
    if (witness >= x.witness_points.size()) {
      throw UsageError("fixture has " + std::to_string(x.witness_points.size()) + " witness points, asked for #" +
                       std::to_string(witness));
    }
    auto cert = cone_decomposition(x, section.subspace, x.witness_points[witness], section.form, c.precision);
    if (!within_tolerance(cert, c)) {
      throw PrecisionExhausted("cone certificate residual " + cert.residual().to_string(6) + " above tolerance");
    }
    return certificate_with_context(cert, section.subspace, c);
  }

  auto data = tangent_pencil(x, section.subspace, c.precision);
  log(std::to_string(data.size()) + " tangent data in the pencil");
  Json certificates = Json::array();
  Json failures = Json::array();
  int total = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    total += data[i].multiplicity;
    try {
      auto cert = tangent_decomposition(x, section.subspace, data[i], section.form, c.precision);
      if (!within_tolerance(cert, c)) {
        throw PrecisionExhausted("tangent certificate residual " + cert.residual().to_string(6) + " above tolerance");
      }
      Json j = certificate_with_context(cert, section.subspace, c);
      j["tangent_index"] = i;
      j["tangent_multiplicity"] = data[i].multiplicity;
      if (!all_tangents) return j;
      certificates.push_back(std::move(j));
    } catch (const DegenerateInput& e) {
      log("tangent datum " + std::to_string(i) + ": " + e.what());
      failures.push_back({{"tangent_index", i}, {"kind", e.kind()}, {"detail", e.what()}});
    }
  }
  if (!all_tangents) {
    throw DegenerateInput("no_ordinary_tangent", "no tangent datum gave an ordinary double point");
  }
  return {{"certificates", certificates},
          {"failures", failures},
          {"tangent_data", data.size()},
          {"total_multiplicity", total},
          {"subspace", subspace_to_json(section.subspace)},
          {"seed", c.seed}};
}

Json tangents(const std::string& path, const RunConfig& c) {
  require_rational(c, "tangents");
  auto x = load_fixture(path);
  auto section = sample_section(x, c.seed);
  auto data = tangent_pencil(x, section.subspace, c.precision);
  Json list = Json::array();
  int total = 0;
  bool checked = true;
  for (const auto& t : data) {
    list.push_back(tangent_datum_to_json(t));
    total += t.multiplicity;
    checked = checked && check_tangent_datum(x, section.subspace, t, c.precision);
  }
  return {{"tangents", list},
          {"total_multiplicity", total},
          {"all_checked", checked},
          {"subspace", subspace_to_json(section.subspace)},
          {"seed", c.seed}};
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  RunConfig config;
  CLI::App app{"Apolarity toolkit: apolar ideals, Macaulay duality and powersum certificates", "apolar"};
  app.set_help_all_flag("--help-all", "Expand all help");
  app.require_subcommand(1);
  app.fallthrough();

  std::string seed_text, precision_text, tol_text;
  auto* field_opt = app.add_option("--field", config.field, "Coefficient field: Q, Fp:<p> or C:<bits>");
  auto* precision_opt = app.add_option("--precision", precision_text, "Working precision in bits (default 256)");
  auto* tol_opt = app.add_option("--tol", tol_text, "Relative residual tolerance (default 1e-40)");
  auto* seed_opt = app.add_option("--seed", seed_text, "Random seed (default 1)");
  app.add_option("--pivot-bits", config.pivot_bits, "Float rank threshold 2^-bits; 0 means precision/2");
  app.add_flag("-v,--verbose", config.verbose, "Log progress to standard error");

  std::string poly_path, second_path;
  int degree = 0, socle = 0, rank_d = 0, rank_n = 0, genus = 0;
  std::string method = "cone";
  bool all_tangents = false;
  std::size_t witness = 0;

  auto* perp = app.add_subcommand("perp", "Piece of the apolar ideal in one degree");
  perp->add_option("poly", poly_path, "Form (JSON)")->required();
  perp->add_option("--degree", degree, "Degree of the piece")->required();

  auto* hf = app.add_subcommand("hf", "Hilbert function of the apolar algebra");
  hf->add_option("poly", poly_path, "Form (JSON)")->required();

  auto* dual = app.add_subcommand("dual-socle", "Dual socle generator of an ideal given by its pieces");
  dual->add_option("ideal", poly_path, "Ideal pieces (JSON)")->required();
  dual->add_option("--socle", socle, "Socle degree")->required();

  auto* verify = app.add_subcommand("verify", "Apolarity check and powersum certificate for a point set");
  verify->add_option("poly", poly_path, "Form, or a certificate carrying its target (JSON)")->required();
  verify->add_option("points", second_path, "Points, {\"points\": ...} or a certificate (JSON)")->required();

  auto* rank = app.add_subcommand("rank", "Generic Waring rank");
  rank->add_option("--d", rank_d, "Degree")->required();
  rank->add_option("--n", rank_n, "Projective dimension (variables - 1)")->required();

  auto* special = app.add_subcommand("special", "Specialness arithmetic for canonical curves");
  special->add_option("--genus", genus, "Genus")->required();

  auto* section = app.add_subcommand("section", "Apolar cubic of a seeded linear section");
  section->add_option("fixture", poly_path, "Fixture (JSON)")->required();

  auto* decomp = app.add_subcommand("decompose", "Powersum certificate by the cone or tangent construction");
  decomp->add_option("fixture", poly_path, "Fixture (JSON)")->required();
  decomp->add_option("--method", method, "cone or tangent")->check(CLI::IsMember({"cone", "tangent"}));
  decomp->add_flag("--all-tangents", all_tangents, "Certify every tangent datum of the pencil");
  decomp->add_option("--witness", witness, "Witness point used as p by the cone construction");

  auto* tan = app.add_subcommand("tangents", "Tangent hyperplanes of the pencil through a seeded L");
  tan->add_option("fixture", poly_path, "Fixture (JSON)")->required();

  std::vector<std::string> argv_store{"apolar"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      throw UsageError(e.what());
    }

    auto pick = [&](CLI::Option* opt, const std::string& flag, const char* var) -> std::optional<std::string> {
      if (opt->count() > 0) return flag;
      if (const char* v = env(var); v != nullptr && *v != '\0') return std::string(v);
      return std::nullopt;
    };
    if (auto v = pick(seed_opt, seed_text, "APOLAR_SEED")) config.seed = parse_number<std::uint64_t>(*v, "seed");
    if (auto v = pick(precision_opt, precision_text, "APOLAR_PRECISION")) {
      config.precision = parse_number<long>(*v, "precision");
    }
    if (auto v = pick(tol_opt, tol_text, "APOLAR_TOL")) config.tolerance = parse_number<double>(*v, "tolerance");
    check_config(config);
    const Tracer log{err, config.verbose};

    Json result;
    if (*perp) {
      if (degree < 0) throw UsageError("--degree must be non-negative");
      result = with_field(config, [&](const auto& field) {
        auto f = poly_from_json(read_json_file(poly_path), field);
        Json basis = Json::array();
        for (const auto& g : apolar_ideal_piece(f, degree)) basis.push_back(poly_to_json(g));
        return Json{{"degree", degree}, {"basis", basis}, {"field", field.tag()}};
      });
    } else if (*hf) {
      result = with_field(config, [&](const auto& field) {
        auto h = hilbert_function(poly_from_json(read_json_file(poly_path), field));
        Json j = hilbert_to_json(h);
        j["symmetric"] = h.is_symmetric();
        return j;
      });
    } else if (*dual) {
      result = with_field(config, [&](const auto& field) {
        auto ideal = ideal_from_json(read_json_file(poly_path), field);
        return Json{{"form", poly_to_json(dual_socle_generator(ideal, socle))}};
      });
    } else if (*verify) {
      const Json points_json = read_json_file(second_path);
      if (field_opt->count() == 0 && points_json.is_object() && points_json.contains("field")) {
        config.field = points_json.at("field").get<std::string>();
      }
      result = with_field(config, [&](const auto& field) {
        using F = std::decay_t<decltype(field)>;
        Json target = read_json_file(poly_path);
        if (target.is_object() && target.contains("target")) target = Json(target.at("target"));
        auto f = poly_from_json(target, field);
        auto points = points_from_json(points_json, field);
        const bool apolar = is_apolar(points, f);
        auto solved = solve_powersum(points, f);
        Json j{{"apolar", apolar}, {"solvable", solved.ok()}, {"field", field.tag()}};
        bool residual_ok = false;
        if (solved.ok()) {
          j["certificate"] = decomposition_to_json(*solved.decomposition);
          if constexpr (F::exact) {
            residual_ok = true;
          } else {
            residual_ok = solved.decomposition->residual <= Real(config.tolerance, field.bits());
          }
        } else {
          j["certificate"] = nullptr;
        }
        j["residual_ok"] = residual_ok;
        j["verified"] = apolar && solved.ok() && residual_ok;
        return j;
      });
    } else if (*rank) {
      result = {{"rank", generic_rank(rank_d, rank_n)}};
    } else if (*special) {
      auto r = specialness_report(genus);
      result = {{"genus", r.genus},
                {"construction", r.construction_count},
                {"generic", r.generic_count},
                {"special", r.is_special},
                {"grassmannian_dim", r.grassmannian_dim},
                {"cubic_moduli_dim", r.cubic_moduli_dim},
                {"image_deficient", r.image_deficient}};
    } else if (*section) {
      require_rational(config, "section");
      auto x = load_fixture(poly_path);
      auto s = sample_section(x, config.seed);
      result = {{"subspace", subspace_to_json(s.subspace)},
                {"form", poly_to_json(s.form)},
                {"hilbert", s.hilbert.values},
                {"attempts", s.attempts},
                {"seed", config.seed}};
    } else if (*decomp) {
      result = decompose(poly_path, method, all_tangents, witness, config, log);
    } else if (*tan) {
      result = tangents(poly_path, config);
    }
    out << result.dump() << '\n';
    return kOk;
  } catch (const DegenerateInput& e) {
    out << error_json(e.kind(), e.what()).dump() << '\n';
    return kDegenerate;
  } catch (const PrecisionExhausted& e) {
    out << error_json(e.kind(), e.what()).dump() << '\n';
    return kPrecision;
  } catch (const Error& e) {
    out << error_json(e.kind(), e.what()).dump() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    out << error_json("internal", e.what()).dump() << '\n';
    return kUsage;
  }
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return run_command(args, out, err, [](const char* name) { return std::getenv(name); });
}

}  // namespace apolar::cli
