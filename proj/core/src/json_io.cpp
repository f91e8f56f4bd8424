#include "apolar/json_io.hpp"

#include <fstream>

namespace apolar {

namespace {

Json complex_coords(const std::vector<Complex>& v, mpfr_prec_t bits) {
  Json out = Json::array();
  const int digits = static_cast<int>(static_cast<double>(bits) * 0.30103) + 1;
  for (const auto& c : v) out.push_back(c.with_precision(bits).to_string(digits));
  return out;
}

Json rational_coords(const std::vector<mpq_class>& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(c.get_str());
  return out;
}

}  // namespace

Json certificate_to_json(const DecompositionCertificate& c) {
  Json out = std::visit([](const auto& d) { return decomposition_to_json(d); }, c.decomposition);
  out["method"] = c.method;
  out["witness_p"] = c.witness_exact ? rational_coords(*c.witness_exact) : complex_coords(c.witness_p, c.precision_bits);
  out["hyperplane"] = std::visit(
      [&](const auto& h) {
        if constexpr (std::is_same_v<std::decay_t<decltype(h)>, QPoly>) {
          return poly_to_json(h);
        } else {
          CPoly rounded(ComplexField(c.precision_bits), h.num_vars(), h.degree());
          for (const auto& [e, v] : h.terms()) rounded.add_term(e, v.with_precision(c.precision_bits));
          return poly_to_json(rounded);
        }
      },
      c.hyperplane);
  out["precision_bits"] = c.precision_bits;
  out["witness_multiplicity"] = c.witness_multiplicity;
  out["slice_multiplicities"] = c.slice_multiplicities;
  return out;
}

Json hilbert_to_json(const HilbertFunction& h) { return {{"hilbert", h.values}, {"socle_degree", h.socle_degree()}}; }

Json subspace_to_json(const LinearSubspace& l) {
  Json forms = Json::array();
  for (const auto& h : l.forms()) forms.push_back(poly_to_json(h));
  return {{"forms", forms}, {"pivots", l.pivots()}, {"free", l.free_variables()}};
}

Json fixture_to_json(const CompleteIntersection& x) {
  Json gens = Json::array();
  for (const auto& g : x.generators) gens.push_back(poly_to_json(g));
  Json wits = Json::array();
  for (const auto& w : x.witness_points) wits.push_back(rational_coords(w));
  return {{"ambient_dim", x.ambient_dim}, {"generators", gens}, {"witness_points", wits}};
}

CompleteIntersection fixture_from_json(const Json& j) {
  const RationalField q;
  CompleteIntersection x;
  x.ambient_dim = detail::member(j, "ambient_dim").get<int>();
  for (const auto& g : detail::member(j, "generators")) x.generators.push_back(poly_from_json(g, q));
  if (j.contains("witness_points")) {
    for (const auto& w : j.at("witness_points")) {
      std::vector<mpq_class> p;
      for (const auto& c : w) p.push_back(detail::scalar_from_json(c, q));
      x.witness_points.push_back(std::move(p));
    }
  }
  x.validate();
  return x;
}

Json tangent_datum_to_json(const TangentDatum& t) {
  const mpfr_prec_t bits = t.hyperplane.field().bits() / 2;
  CPoly rounded(ComplexField(bits), t.hyperplane.num_vars(), 1);
  for (const auto& [e, v] : t.hyperplane.terms()) rounded.add_term(e, v.with_precision(bits));
  return {{"p", t.p.exact ? rational_coords(*t.p.exact) : complex_coords(t.p.coords, bits)},
          {"hyperplane", poly_to_json(rounded)},
          {"multiplicity", t.multiplicity}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("bad_input", "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidArgument("bad_json", path + ": " + e.what());
  }
}

}  // namespace apolar
