#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "brfd/convergence.hpp"
#include "brfd/norms.hpp"
#include "brfd/problems.hpp"
#include "brfd/scheme.hpp"
#include "brfd/trisolve.hpp"

namespace {

brfd::InteriorGridFunction random_interior(const brfd::Mesh& m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(m.num_nodes());
    for (double& x : v) x = dist(rng);
    return brfd::InteriorGridFunction(std::move(v));
}

void BM_Laplacian(benchmark::State& state) {
    const brfd::Mesh m(0.0, 1.0, static_cast<int>(state.range(0)));
    std::mt19937_64 rng(1u);
    const brfd::InteriorGridFunction v = random_interior(m, rng);
    for (auto _ : state) benchmark::DoNotOptimize(brfd::laplacian(v, m));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Laplacian)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ThomasSolve(benchmark::State& state) {
    const brfd::Mesh m(0.0, 1.0, static_cast<int>(state.range(0)));
    std::mt19937_64 rng(2u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    brfd::GridFunction phi(m.num_nodes());
    for (std::size_t j = 0; j < phi.size(); ++j) phi[j] = dist(rng);
    const brfd::Tridiagonal t = brfd::assemble_step_operator(m, 0.01, phi);
    std::vector<double> rhs(static_cast<std::size_t>(m.J()));
    for (double& x : rhs) x = dist(rng);
    for (auto _ : state) benchmark::DoNotOptimize(brfd::solve(t, rhs));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ThomasSolve)->Arg(100)->Arg(1000)->Arg(10000);

void BM_SeminormH1(benchmark::State& state) {
    const brfd::Mesh m(0.0, 1.0, static_cast<int>(state.range(0)));
    std::mt19937_64 rng(3u);
    const brfd::InteriorGridFunction v = random_interior(m, rng);
    for (auto _ : state) benchmark::DoNotOptimize(brfd::seminorm_h1(v, m));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SeminormH1)->Arg(1000)->Arg(100000);

void BM_RelaxationRun(benchmark::State& state) {
    const int Jp1 = static_cast<int>(state.range(0));
    const brfd::Problem p = brfd::catalog_problem("mms_exp_sine_gsin", 0.0, 1.0);
    const brfd::Mesh m(0.0, 1.0, Jp1 - 1);
    const brfd::TimeGrid tg(1.0, Jp1);
    for (auto _ : state)
        benchmark::DoNotOptimize(brfd::run(p, m, tg, brfd::SchemeVariant::brfd(), tg.N()));
    state.SetItemsProcessed(state.iterations() * Jp1 * Jp1);
}
BENCHMARK(BM_RelaxationRun)->Arg(40)->Arg(160)->Arg(640);

void BM_NewtonRun(benchmark::State& state) {
    const int Jp1 = static_cast<int>(state.range(0));
    const brfd::Problem p = brfd::catalog_problem("mms_exp_sine_gsin", 0.0, 1.0);
    const brfd::Mesh m(0.0, 1.0, Jp1 - 1);
    const brfd::TimeGrid tg(1.0, Jp1);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            brfd::run(p, m, tg, brfd::SchemeVariant::crank_nicolson(), tg.N()));
    state.SetItemsProcessed(state.iterations() * Jp1 * Jp1);
}
BENCHMARK(BM_NewtonRun)->Arg(40)->Arg(160);

void BM_RefinementStudy(benchmark::State& state) {
    const brfd::Problem p = brfd::catalog_problem("mms_exp_sine_gsin", 0.0, 1.0);
    brfd::RefinementPlan plan;
    plan.base_interior_nodes = 19;
    plan.base_steps = 20;
    plan.levels = 4;
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            brfd::refinement_study(p, 0.0, 1.0, 1.0, plan, brfd::SchemeVariant::brfd(), jobs));
}
BENCHMARK(BM_RefinementStudy)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
