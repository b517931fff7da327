#include <benchmark/benchmark.h>

#include "qdrive/dqs.hpp"
#include "qdrive/encode.hpp"
#include "qdrive/gradients.hpp"
#include "qdrive/oracle.hpp"
#include "qdrive/rng.hpp"

using namespace qdrive;

namespace {

QubitState random_state(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> amps(std::uint64_t{1} << n);
    for (auto& a : amps) {
        a = cplx{rng.normal(), rng.normal()};
    }
    QubitState s(n, std::move(amps));
    s.normalize();
    return s;
}

void BM_ApplyHadamard(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    QubitState s = random_state(n, 1);
    for (auto _ : state) {
        apply_gate(s, GateOp::h(0));
        benchmark::DoNotOptimize(s.amps().data());
    }
}
BENCHMARK(BM_ApplyHadamard)->Arg(6)->Arg(10)->Arg(14);

void BM_Qft(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    QubitState s = random_state(n, 2);
    for (auto _ : state) {
        qft(s);
        benchmark::DoNotOptimize(s.amps().data());
    }
}
BENCHMARK(BM_Qft)->Arg(6)->Arg(10);

void BM_TrotterEvolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SpatialGrid grid{n, 10.0};
    const auto protocol = linear_ramp(50, 3.152, Constraints{});
    const QubitState psi0 = to_register(gaussian_state(1.0, 0.0, grid));
    for (auto _ : state) {
        QubitState s = psi0;
        trotter_evolve(s, protocol, grid);
        benchmark::DoNotOptimize(s.amps().data());
    }
}
BENCHMARK(BM_TrotterEvolve)->Arg(6)->Arg(8)->Arg(10);

void BM_SomEvolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SpatialGrid grid{n, 10.0};
    const auto protocol = linear_ramp(50, 3.152, Constraints{});
    const auto psi0 = gaussian_state(1.0, 0.0, grid);
    for (auto _ : state) {
        auto out = som_evolve(psi0, protocol);
        benchmark::DoNotOptimize(out.amps.data());
    }
}
BENCHMARK(BM_SomEvolve)->Arg(6)->Arg(10);

void BM_GradShift(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    ExpansionSetup setup;
    setup.n = n;
    const ControlProblem problem = make_expansion_problem(setup);
    Rng rng(3);
    const auto u = random_feasible_protocol(problem.bounds, 50, rng);
    for (auto _ : state) {
        auto g = grad_shift(problem, u);
        benchmark::DoNotOptimize(g.du.data());
    }
}
BENCHMARK(BM_GradShift)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
