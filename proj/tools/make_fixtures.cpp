// Regenerates the golden fixtures in data/fixtures.
//
//   apolar-make-fixtures <output-dir>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "apolar/fixtures.hpp"

namespace {

using Points = std::vector<std::vector<mpq_class>>;

Points points(std::initializer_list<std::initializer_list<long>> rows) {
  Points out;
  for (const auto& r : rows) {
    std::vector<mpq_class> p;
    for (long v : r) p.emplace_back(v);
    out.push_back(std::move(p));
  }
  return out;
}

// (1 - t^2 : 2t : 1 + t^2 : 0) lies on the conic x0^2 + x1^2 = x2^2 in x3 = 0.
Points conic_points(std::initializer_list<long> params) {
  Points out;
  for (long t : params) out.push_back({mpq_class(1 - t * t), mpq_class(2 * t), mpq_class(1 + t * t), mpq_class(0)});
  return out;
}

struct Recipe {
  const char* file;
  int ambient_dim;
  std::vector<int> degrees;
  Points witnesses;
  std::uint64_t seed;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: " << argv[0] << " <output-dir>\n";
    return 1;
  }
  const std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);

  const std::vector<Recipe> recipes = {
      {"genus4_canonical.json", 3, {2, 3},
       points({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 1, 1}, {1, -1, 2, -2}}), 1},
      {"genus5_canonical.json", 4, {2, 2, 2},
       points({{1, 0, 0, 0, 0},
               {0, 1, 0, 0, 0},
               {0, 0, 1, 0, 0},
               {0, 0, 0, 1, 0},
               {0, 0, 0, 0, 1},
               {1, 1, 1, 1, 1},
               {1, -1, 2, -2, 1},
               {2, 1, -1, 1, -1}}),
       1},
      {"elliptic_quartic.json", 3, {2, 2},
       points({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 1, 1}, {1, -1, 2, -2}}), 1},
      // All six points of X on the plane x3 = 0 are witnesses, so slices by
      // that plane are rational.
      {"genus4_coplanar.json", 3, {2, 3}, conic_points({0, 1, -1, 2, -2, 3}), 1},
  };

  for (const auto& s : recipes) {
    try {
      auto x = apolar::generate_fixture(s.ambient_dim, s.degrees, s.witnesses, s.seed);
      apolar::save_fixture(x, (dir / s.file).string());
      std::cerr << "wrote " << (dir / s.file).string() << '\n';
    } catch (const apolar::Error& e) {
      std::cerr << s.file << ": " << e.what() << '\n';
      return 2;
    }
  }
  return 0;
}
