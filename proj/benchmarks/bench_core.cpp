#include <benchmark/benchmark.h>

#include <vector>

#include "hdl/dirichlet.hpp"
#include "hdl/domain.hpp"
#include "hdl/group.hpp"
#include "hdl/morphism.hpp"
#include "hdl/paths.hpp"
#include "hdl/rng.hpp"

using namespace hdl;

static void group_mul(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<double> c(2 * n + 1, 0.3);
    GroupPoint a = GroupPoint::from_coords(c);
    const GroupPoint b = a;
    for (auto _ : state) {
        a = hdl::group_mul(a, b);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(group_mul)->Arg(1)->Arg(4);

static void philox_normals(benchmark::State& state) {
    const NormalStream s(RngSpec{1, 0});
    std::vector<double> out(static_cast<std::size_t>(state.range(0)));
    std::uint64_t block = 0;
    for (auto _ : state) {
        s.fill(block, out);
        block += out.size() / 2;
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(philox_normals)->Arg(1 << 12);

static void hbm_path(benchmark::State& state) {
    const auto grid = uniform_grid(1.0, 1.0 / static_cast<double>(state.range(0)));
    std::uint64_t i = 0;
    for (auto _ : state) {
        auto p = simulate_hbm(GroupPoint::identity(1), grid, RngSpec{2, 0}.substream(i++));
        benchmark::DoNotOptimize(p.coords.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(hbm_path)->Arg(1000);

static void run_to_exit(benchmark::State& state) {
    const Domain ball = Domain::ball(GroupPoint::identity(1), 1.0);
    ExitOptions opt;
    opt.dt = 1e-3;
    std::uint64_t i = 0;
    for (auto _ : state) {
        auto r = hdl::run_to_exit(GroupPoint::identity(1), ball, opt, RngSpec{3, 0}.substream(i++));
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(run_to_exit);

static void morphism_check(benchmark::State& state) {
    const auto pts = sample_points(1, 1000, 2.0, RngSpec{4, 0});
    const GroupMap f = map_from_id("dilation:2", 1);
    for (auto _ : state) {
        auto r = is_harmonic_morphism(f, pts);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(morphism_check);

BENCHMARK_MAIN();
