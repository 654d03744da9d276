#include <benchmark/benchmark.h>

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "excon/elaborate.hpp"
#include "excon/homological.hpp"
#include "excon/linalg.hpp"
#include "excon/nc_tensor.hpp"
#include "excon/presentation.hpp"

namespace {

using namespace excon;

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(EXCON_CORPUS_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Environment& corpus(const std::string& file) {
  static std::map<std::string, Environment> cache;
  auto it = cache.find(file);
  if (it == cache.end()) it = cache.emplace(file, elaborate(parse_presentation(slurp(file)))).first;
  return it->second;
}

// Entries in [-9, 9]; fixed seed so every run sees the same matrices.
Matrix random_matrix(const Field& f, std::size_t n) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> dist(-9, 9);
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = f.from_int(dist(rng));
  }
  return m;
}

void BM_RankRationals(benchmark::State& state) {
  const Matrix m = random_matrix(Field::rationals(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_RankRationals)->Arg(16)->Arg(32)->Arg(64);

void BM_RankPrime(benchmark::State& state) {
  const Matrix m = random_matrix(Field::prime(101), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_RankPrime)->Arg(16)->Arg(32)->Arg(64);

void BM_Elaborate(benchmark::State& state) {
  const std::string text = slurp("tri_subring.exc");
  for (auto _ : state) benchmark::DoNotOptimize(elaborate(parse_presentation(text)));
}
BENCHMARK(BM_Elaborate)->Unit(benchmark::kMillisecond);

void BM_BuildNcTensor(benchmark::State& state, const std::string& file, const std::string& name) {
  const ExactContext& ctx = corpus(file).context(name).context;
  for (auto _ : state) benchmark::DoNotOptimize(build_nc_tensor(ctx));
}
BENCHMARK_CAPTURE(BM_BuildNcTensor, morita_zero, std::string("morita_zero.exc"), std::string("morita_zero"))
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BuildNcTensor, pure_loops, std::string("pure.exc"), std::string("pure_loops"))
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BuildNcTensor, tri_subring, std::string("tri_subring.exc"), std::string("tri_subring"))
    ->Unit(benchmark::kMillisecond);

void BM_TorTriSubring(benchmark::State& state) {
  const Environment& env = corpus("tri_subring.exc");
  const Module& t = env.module("S_R").module;
  const Module& s = env.module("R_S").module;
  const auto degree = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tor(t, s, degree));
}
BENCHMARK(BM_TorTriSubring)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_Theorem1(benchmark::State& state, const std::string& file, const std::string& name) {
  const ExactContext& ctx = corpus(file).context(name).context;
  const auto bound = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(theorem1_criterion(ctx, bound));
}
BENCHMARK_CAPTURE(BM_Theorem1, morita_zero, std::string("morita_zero.exc"), std::string("morita_zero"))
    ->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Theorem1, pure_plane, std::string("pure.exc"), std::string("pure_plane"))
    ->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
