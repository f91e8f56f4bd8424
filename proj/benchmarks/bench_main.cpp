#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "apolar/apolarity.hpp"
#include "apolar/cone.hpp"
#include "apolar/fixtures.hpp"
#include "apolar/univariate.hpp"

using namespace apolar;

namespace {

const RationalField Q;

std::string fixture(const char* name) { return std::string(APOLAR_BENCH_FIXTURE_DIR) + "/" + name; }

QPoly random_form(int vars, int degree, std::mt19937_64& rng) {
  QPoly f(Q, vars, degree);
  for (const auto& e : monomials(vars, degree)) f.add_term(e, static_cast<long>(rng() % 11) - 5);
  return f;
}

void BM_RowReduce(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  DenseMatrix<RationalField> m(Q, n, n + 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n + 2; ++j) m(i, j) = static_cast<long>(rng() % 21) - 10;
  for (auto _ : state) benchmark::DoNotOptimize(row_reduce(m).rank());
}
BENCHMARK(BM_RowReduce)->Arg(10)->Arg(20)->Arg(40);

void BM_ApolarIdeal(benchmark::State& state) {
  std::mt19937_64 rng(2);
  auto f = random_form(static_cast<int>(state.range(0)), 4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(apolar_ideal_piece(f, 2).size());
}
BENCHMARK(BM_ApolarIdeal)->Arg(3)->Arg(5)->Arg(6);

void BM_CharacteristicPolynomial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  DenseMatrix<RationalField> m(Q, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = mpq_class(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 7));
      m(i, j).canonicalize();
    }
  for (auto _ : state) benchmark::DoNotOptimize(characteristic_polynomial(m).size());
}
BENCHMARK(BM_CharacteristicPolynomial)->Arg(8)->Arg(16)->Arg(24);

void BM_Section(benchmark::State& state) {
  auto x = load_fixture(fixture(state.range(0) == 4 ? "genus4_canonical.json" : "genus5_canonical.json"));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sample_section(x, seed++).attempts);
}
BENCHMARK(BM_Section)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Cone(benchmark::State& state) {
  auto x = load_fixture(fixture(state.range(0) == 4 ? "genus4_canonical.json" : "genus5_canonical.json"));
  auto s = sample_section(x, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cone_decomposition(x, s.subspace, x.witness_points[0], s.form).size());
  }
}
BENCHMARK(BM_Cone)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_TangentPencil(benchmark::State& state) {
  auto x = load_fixture(fixture(state.range(0) == 4 ? "genus4_canonical.json" : "genus5_canonical.json"));
  auto s = sample_section(x, 1);
  for (auto _ : state) benchmark::DoNotOptimize(tangent_pencil(x, s.subspace).size());
}
BENCHMARK(BM_TangentPencil)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Tangent(benchmark::State& state) {
  auto x = load_fixture(fixture(state.range(0) == 4 ? "genus4_canonical.json" : "genus5_canonical.json"));
  auto s = sample_section(x, 1);
  auto data = tangent_pencil(x, s.subspace);
  for (auto _ : state) benchmark::DoNotOptimize(tangent_decomposition(x, s.subspace, data.front(), s.form).size());
}
BENCHMARK(BM_Tangent)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
