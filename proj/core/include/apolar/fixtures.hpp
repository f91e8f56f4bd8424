#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "apolar/sections.hpp"

namespace apolar {

CompleteIntersection load_fixture(const std::string& path);
void save_fixture(const CompleteIntersection& x, const std::string& path);

/// Forms of degree d in `num_vars` variables vanishing at every point.
std::vector<QPoly> forms_through_points(int num_vars, int degree, const std::vector<std::vector<mpq_class>>& points);

/// A complete intersection of the given degrees in P^N through the witness
/// points. Each generator is a seeded integer combination of the forms of its
/// degree through the points, made primitive; draws are repeated until the
/// Jacobian has full rank at every witness and a random Artinian reduction
/// has the complete-intersection Hilbert function.
CompleteIntersection generate_fixture(int ambient_dim, const std::vector<int>& degrees,
                                      std::vector<std::vector<mpq_class>> witnesses, std::uint64_t seed);

}  // namespace apolar
