#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "apolar/apolarity.hpp"
#include "apolar/cone.hpp"
#include "apolar/sections.hpp"

namespace apolar {

using Json = nlohmann::json;

namespace detail {

template <CoefficientField Field>
typename Field::Element scalar_from_json(const Json& j, const Field& field) {
  if (j.is_string()) return field.parse(j.get<std::string>());
  if (j.is_number_integer()) return field.from_int(j.get<long>());
  throw InvalidArgument("bad_json", "scalar must be a string or an integer, got " + j.dump());
}

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument("bad_json", std::string("missing key \"") + key + "\"");
  return j.at(key);
}

}  // namespace detail

/// {"vars": n, "degree": d, "terms": [{"exp": [...], "coeff": "..."}]}
template <CoefficientField Field>
Json poly_to_json(const MultiPoly<Field>& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exp", e}, {"coeff", f.field().format(c)}});
  return {{"vars", f.num_vars()}, {"degree", f.degree()}, {"terms", terms}};
}

template <CoefficientField Field>
MultiPoly<Field> poly_from_json(const Json& j, const Field& field) {
  const int vars = detail::member(j, "vars").get<int>();
  const int degree = detail::member(j, "degree").get<int>();
  MultiPoly<Field> f(field, vars, degree);
  const Json& terms = detail::member(j, "terms");
  if (!terms.is_array()) throw InvalidArgument("bad_json", "\"terms\" must be an array");
  for (const auto& t : terms) {
    f.add_term(detail::member(t, "exp").get<Exponent>(), detail::scalar_from_json(detail::member(t, "coeff"), field));
  }
  return f;
}

template <CoefficientField Field>
Json coords_to_json(const std::vector<typename Field::Element>& coords, const Field& field) {
  Json out = Json::array();
  for (const auto& c : coords) out.push_back(field.format(c));
  return out;
}

template <CoefficientField Field>
Json point_to_json(const DualPoint<Field>& p) {
  return {{"coords", coords_to_json(p.coords(), p.field())}};
}

/// Accepts {"coords": [...]} or a bare coordinate array.
template <CoefficientField Field>
DualPoint<Field> point_from_json(const Json& j, const Field& field) {
  const Json& arr = j.is_array() ? j : detail::member(j, "coords");
  std::vector<typename Field::Element> coords;
  for (const auto& c : arr) coords.push_back(detail::scalar_from_json(c, field));
  return DualPoint<Field>(field, std::move(coords));
}

/// Accepts a list of points, {"points": [...]}, or a certificate whose
/// summands carry the points.
template <CoefficientField Field>
std::vector<DualPoint<Field>> points_from_json(const Json& j, const Field& field) {
  std::vector<DualPoint<Field>> out;
  if (j.is_array()) {
    for (const auto& p : j) out.push_back(point_from_json(p, field));
  } else if (j.is_object() && j.contains("points")) {
    for (const auto& p : j.at("points")) out.push_back(point_from_json(p, field));
  } else if (j.is_object() && j.contains("summands")) {
    for (const auto& s : j.at("summands")) out.push_back(point_from_json(detail::member(s, "point"), field));
  } else {
    throw InvalidArgument("bad_json", "expected a point list, {\"points\": ...} or a certificate");
  }
  return out;
}

template <CoefficientField Field>
Json decomposition_to_json(const PowersumDecomposition<Field>& d) {
  Json summands = Json::array();
  for (const auto& s : d.summands) {
    summands.push_back({{"point", coords_to_json(s.point.coords(), s.point.field())},
                        {"lambda", d.target.field().format(s.lambda)}});
  }
  std::string residual = Field::exact ? "0" : d.residual.to_string(6);
  return {{"target", poly_to_json(d.target)}, {"summands", summands}, {"residual", residual}, {"field", d.field_tag()}};
}

Json certificate_to_json(const DecompositionCertificate& c);

template <CoefficientField Field>
Json ideal_to_json(const GradedIdealPieces<Field>& ideal) {
  Json pieces = Json::array();
  for (const auto& [e, basis] : ideal.pieces) {
    Json b = Json::array();
    for (const auto& f : basis) b.push_back(poly_to_json(f));
    pieces.push_back({{"degree", e}, {"basis", b}});
  }
  return {{"vars", ideal.num_vars}, {"pieces", pieces}};
}

/// {"vars": n, "pieces": [{"degree": e, "basis": [<poly>...]}]}
template <CoefficientField Field>
GradedIdealPieces<Field> ideal_from_json(const Json& j, const Field& field) {
  GradedIdealPieces<Field> out{field, detail::member(j, "vars").get<int>(), {}};
  for (const auto& piece : detail::member(j, "pieces")) {
    const int e = detail::member(piece, "degree").get<int>();
    auto& basis = out.pieces[e];
    for (const auto& f : detail::member(piece, "basis")) {
      auto poly = poly_from_json(f, field);
      if (poly.num_vars() != out.num_vars || poly.degree() != e) {
        throw InvalidArgument("bad_json", "ideal piece of degree " + std::to_string(e) + " holds a form of another shape");
      }
      basis.push_back(std::move(poly));
    }
  }
  return out;
}

Json hilbert_to_json(const HilbertFunction& h);

Json subspace_to_json(const LinearSubspace& l);

/// {"ambient_dim": N, "generators": [<poly>...], "witness_points": [[...]...]}
Json fixture_to_json(const CompleteIntersection& x);
CompleteIntersection fixture_from_json(const Json& j);

Json tangent_datum_to_json(const TangentDatum& t);

/// Reads and parses a JSON file; throws InvalidArgument("bad_json") on failure.
Json read_json_file(const std::string& path);

}  // namespace apolar
