// Microbenchmarks for the hot paths: spatial index queries, minimax plane
// fitting, dyadic cell construction, and the truncated transform.

#include <benchmark/benchmark.h>

#include "urect/cubes.hpp"
#include "urect/flatness.hpp"
#include "urect/generators.hpp"
#include "urect/riesz.hpp"
#include "urect/rng.hpp"

namespace {

urect::DiscreteMeasure plane_cloud(std::size_t count) {
  urect::GeneratorSpec spec;
  spec.kind = urect::GeneratorSpec::Kind::FlatPlane;
  spec.d = 3;
  spec.n = 2;
  spec.count = count;
  spec.seed = 2;
  return urect::generate(spec);
}

void bm_kdtree_ball(benchmark::State& state) {
  const auto mu = plane_cloud(static_cast<std::size_t>(state.range(0)));
  urect::Rng rng(1, "bench-ball");
  for (auto _ : state) {
    urect::Vec c(3);
    c << rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), 0.0;
    benchmark::DoNotOptimize(mu.support_in(urect::Ball(c, 0.2)));
  }
}
BENCHMARK(bm_kdtree_ball)->Arg(10000)->Arg(100000);

void bm_ball_mass(benchmark::State& state) {
  const auto mu = plane_cloud(static_cast<std::size_t>(state.range(0)));
  urect::Rng rng(1, "bench-mass");
  for (auto _ : state) {
    urect::Vec c(3);
    c << rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), 0.0;
    benchmark::DoNotOptimize(mu.ball_mass(urect::Ball(c, 0.2)));
  }
}
BENCHMARK(bm_ball_mass)->Arg(10000)->Arg(100000);

void bm_minimax_fit(benchmark::State& state) {
  urect::Rng rng(3, "bench-fit");
  std::vector<urect::Vec> pts;
  for (int i = 0; i < state.range(0); ++i) {
    urect::Vec p(3);
    p << rng.unit(), rng.unit(), 0.1 * rng.unit();
    pts.push_back(p);
  }
  for (auto _ : state) benchmark::DoNotOptimize(urect::minimax_fit(pts, 2));
}
BENCHMARK(bm_minimax_fit)->Arg(100)->Arg(1000)->Arg(10000);

void bm_beta_ball(benchmark::State& state) {
  const auto mu = plane_cloud(100000);
  const urect::Ball b(urect::Vec::Zero(3), 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(urect::beta_m(mu, b, 2));
}
BENCHMARK(bm_beta_ball);

void bm_build_cubes(benchmark::State& state) {
  const auto mu = plane_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(urect::build_cubes(mu, 0, 4));
}
BENCHMARK(bm_build_cubes)->Arg(10000)->Arg(100000);

void bm_riesz_truncated(benchmark::State& state) {
  const auto mu = plane_cloud(static_cast<std::size_t>(state.range(0)));
  const urect::Vec z0 = urect::Vec::Zero(3);
  for (auto _ : state)
    benchmark::DoNotOptimize(urect::riesz_truncated(mu, z0, 0.05, 0.8));
}
BENCHMARK(bm_riesz_truncated)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
