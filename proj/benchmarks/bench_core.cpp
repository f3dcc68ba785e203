#include <benchmark/benchmark.h>

#include "grs/reach.hpp"
#include "grs/rng.hpp"
#include "grs/scenario.hpp"

using namespace grs;

namespace {

Mat academic_g0() {
    Mat g(3, 3);
    g << 10.0, 3.0, 0.0, 2.0, 7.0, 0.0, 0.0, 0.0, 2.5;
    return g;
}

void BM_Svd3x3(benchmark::State& state) {
    const Mat a = academic_g0();
    for (auto _ : state) {
        benchmark::DoNotOptimize(svd(a));
    }
}
BENCHMARK(BM_Svd3x3);

void BM_DirectionGain(benchmark::State& state) {
    const ScenarioConfig scenario = load_scenario("academic3d");
    const GvsGeometry geom = geometry(scenario.snapshot);
    std::mt19937_64 rng(1);
    const Vec d = geom.image_basis() * sample_unit_sphere(geom.rank, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(direction_gain(geom, scenario.snapshot, 0.7, d));
    }
}
BENCHMARK(BM_DirectionGain);

void BM_SampleBallInput(benchmark::State& state) {
    const ScenarioConfig scenario = load_scenario("academic3d");
    const SurrogateSystem sys = make_surrogate(SurrogateKind::Ball, scenario.snapshot);
    std::mt19937_64 rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_input(sys, rng));
    }
}
BENCHMARK(BM_SampleBallInput);

void BM_SampleCrossPolytopeInput(benchmark::State& state) {
    const ScenarioConfig scenario = load_scenario("academic3d");
    const SurrogateSystem sys = make_surrogate(SurrogateKind::Polygon, scenario.snapshot);
    std::mt19937_64 rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_input(sys, rng));
    }
}
BENCHMARK(BM_SampleCrossPolytopeInput);

void BM_MonteCarloReachBall(benchmark::State& state) {
    const ScenarioConfig scenario = load_scenario("quadrocopter");
    const SurrogateSystem sys = make_surrogate(SurrogateKind::Ball, scenario.snapshot);
    ReachConfig cfg = scenario.reach;
    cfg.horizon = 0.05;
    cfg.input_hold = 0.0025;
    cfg.n_trajectories = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(monte_carlo_reach(sys, scenario.x0, cfg, 1));
    }
    state.SetItemsProcessed(state.iterations() * cfg.n_trajectories);
}
BENCHMARK(BM_MonteCarloReachBall)->Arg(16)->Arg(128);

void BM_Hull2d(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::vector<Eigen::Vector2d> points;
    for (int i = 0; i < 4096; ++i) {
        const Vec p = sample_unit_ball(2, rng);
        points.emplace_back(p(0), p(1));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(hull2d(points));
    }
}
BENCHMARK(BM_Hull2d);

void BM_GreedySteer(benchmark::State& state) {
    const ScenarioConfig scenario = load_scenario("quadrocopter");
    const SurrogateSystem sys = make_surrogate(SurrogateKind::Ball, scenario.snapshot);
    Vec target(2);
    target << -15.0, -10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(greedy_steer(sys, target, 0.25, 1e-3));
    }
}
BENCHMARK(BM_GreedySteer);

}  // namespace

BENCHMARK_MAIN();
