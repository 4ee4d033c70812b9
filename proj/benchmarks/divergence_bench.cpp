// Microbenchmarks for the divergence kernels and the descriptor pipeline.
// The stein/airm pair quantifies the cost gap that motivates using the
// closed-form divergence everywhere in the classifier.

#include <benchmark/benchmark.h>

#include <vector>

#include "rdc/descriptor.hpp"
#include "rdc/divergence.hpp"
#include "rdc/image.hpp"
#include "rdc/rng.hpp"
#include "rdc/spd_matrix.hpp"

namespace {

Eigen::MatrixXd random_matrix(int rows, int cols, rdc::Xoshiro256StarStar& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

std::vector<rdc::SpdMatrix> random_spd_pool(int count, int dim, std::uint64_t seed) {
  rdc::Xoshiro256StarStar rng(seed);
  std::vector<rdc::SpdMatrix> pool;
  pool.reserve(count);
  for (int i = 0; i < count; ++i) {
    const Eigen::MatrixXd g = random_matrix(dim, dim, rng);
    pool.push_back(
        rdc::SpdMatrix::validate(g * g.transpose() + Eigen::MatrixXd::Identity(dim, dim)));
  }
  return pool;
}

void BM_Stein(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const auto pool = random_spd_pool(64, dim, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rdc::stein(pool[i % 64], pool[(i + 31) % 64]));
    ++i;
  }
}
BENCHMARK(BM_Stein)->Arg(2)->Arg(8)->Arg(14);

void BM_Airm(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const auto pool = random_spd_pool(64, dim, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rdc::airm(pool[i % 64], pool[(i + 31) % 64]));
    ++i;
  }
}
BENCHMARK(BM_Airm)->Arg(2)->Arg(8)->Arg(14);

void BM_BregmanLogdet(benchmark::State& state) {
  const auto pool = random_spd_pool(64, 14, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rdc::bregman_logdet(pool[i % 64], pool[(i + 31) % 64]));
    ++i;
  }
}
BENCHMARK(BM_BregmanLogdet);

void BM_JsSymmetrized(benchmark::State& state) {
  const auto pool = random_spd_pool(64, 14, 4);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rdc::js_symmetrized(pool[i % 64], pool[(i + 31) % 64]));
    ++i;
  }
}
BENCHMARK(BM_JsSymmetrized);

void BM_PairwiseStein(benchmark::State& state) {
  const auto pool = random_spd_pool(static_cast<int>(state.range(0)), 14, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rdc::pairwise_stein(pool, 1));
  }
}
BENCHMARK(BM_PairwiseStein)->Arg(50)->Arg(200);

void BM_Describe(benchmark::State& state) {
  rdc::Xoshiro256StarStar rng(6);
  rdc::Image image;
  image.width = 32;
  image.height = 64;
  image.pixels.resize(32 * 64 * 3);
  for (auto& byte : image.pixels) byte = static_cast<std::uint8_t>(rng.below(256));
  const auto mask = rdc::ForegroundMask::all_foreground(32, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rdc::describe(image, mask));
  }
}
BENCHMARK(BM_Describe);

}  // namespace

BENCHMARK_MAIN();
