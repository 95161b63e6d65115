#include <benchmark/benchmark.h>

#include <random>

#include "lacuna/normlab.hpp"
#include "lacuna/operators.hpp"

using namespace lacuna;

namespace {
Field random_field(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Field f{g, std::vector<cplx>(g.points())};
  for (auto& v : f.values) v = cplx{gauss(rng), gauss(rng)};
  return f;
}
}  // namespace

static void BM_transform_roundtrip(benchmark::State& state) {
  Grid g = make_grid(2, static_cast<int>(state.range(0)));
  Field f = random_field(g, 1);
  for (auto _ : state) {
    Field back = inverse_transform(forward_transform(f));
    benchmark::DoNotOptimize(back.values.data());
  }
  state.SetItemsProcessed(state.iterations() * g.points());
}
BENCHMARK(BM_transform_roundtrip)->Arg(64)->Arg(128)->Arg(256);

static void BM_hilbert_dir(benchmark::State& state) {
  Grid g = make_grid(2, static_cast<int>(state.range(0)));
  Field f = random_field(g, 2);
  Direction w = direction_from({1.0, 0.37});
  for (auto _ : state) {
    Field out = hilbert_dir(f, w, HalfspaceConvention::sign);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(BM_hilbert_dir)->Arg(64)->Arg(256);

static void BM_strong_maximal(benchmark::State& state) {
  Grid g = make_grid(2, static_cast<int>(state.range(0)));
  Field f = random_field(g, 3);
  for (auto _ : state) {
    Field out = strong_maximal(f);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(BM_strong_maximal)->Arg(32)->Arg(64)->Arg(128);

static void BM_norm_estimate(benchmark::State& state) {
  Grid g = make_grid(2, 32);
  DirectionSet dirs;
  dirs.dims = 2;
  for (int k = 1; k <= static_cast<int>(state.range(0)); ++k)
    dirs.members.push_back(direction_from({1.0, std::ldexp(1.0, -k)}));
  OpFamily fam = halfspace_family(dirs, HalfspaceConvention::sign);
  EstimatorOptions opt;
  opt.iters = 10;
  opt.restarts = 2;
  for (auto _ : state) {
    auto rep = estimate_maximal_norm(fam, g, opt);
    benchmark::DoNotOptimize(rep.estimate);
  }
}
BENCHMARK(BM_norm_estimate)->Arg(2)->Arg(8);

BENCHMARK_MAIN();
