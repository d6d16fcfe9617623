// Serial references against the OpenMP kernels.
#include "ftnlab/dynamics.hpp"
#include "ftnlab/freefermion.hpp"
#include "ftnlab/model.hpp"
#include "ftnlab/quasiprob.hpp"
#include "ftnlab/series.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace ftnlab;

namespace {

PhaseSeries random_series(std::size_t terms) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    PhaseSeries f;
    for (std::size_t i = 0; i < terms; ++i) f.add_term(u(rng), {u(rng), u(rng)});
    return f;
}

constexpr std::int64_t kPoints = 1 << 16;

void BM_GridSerial(benchmark::State& st) {
    const PhaseSeries f = random_series(static_cast<std::size_t>(st.range(0)));
    std::vector<Complex> out(kPoints);
    for (auto _ : st) {
        kernels::evaluate_grid_serial(f, 1, 1e-3, out);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * kPoints * st.range(0));
}

void BM_GridOmp(benchmark::State& st) {
    const PhaseSeries f = random_series(static_cast<std::size_t>(st.range(0)));
    std::vector<Complex> out(kPoints);
    for (auto _ : st) {
        kernels::evaluate_grid(f, 1, 1e-3, out);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * kPoints * st.range(0));
}

BENCHMARK(BM_GridSerial)->Arg(16)->Arg(256)->Arg(1024);
BENCHMARK(BM_GridOmp)->Arg(16)->Arg(256)->Arg(1024);

void BM_FfReference(benchmark::State& st) {
    const ModeSet ms = solve_modes({static_cast<int>(st.range(0)), 1.0, 1.0, 0.0});
    double t = 0.0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(ff_mh_entry_reference(ms, 1, t));
        t += 1e-3;
    }
}

void BM_FfFactorised(benchmark::State& st) {
    const ModeSet ms = solve_modes({static_cast<int>(st.range(0)), 1.0, 1.0, 0.0});
    double t = 0.0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(ff_mh_entry(ms, 1, t));
        t += 1e-3;
    }
}

void BM_FfTraceGrid(benchmark::State& st) {
    const ModeSet ms = solve_modes({static_cast<int>(st.range(0)), 1.0, 1.0, 0.0});
    const FreeFermionKdTrace tr(ms, 1);
    std::vector<Complex> out(kPoints);
    for (auto _ : st) {
        tr.kd_mm_grid(1, 1e-3, out);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * kPoints);
}

BENCHMARK(BM_FfReference)->Arg(50)->Arg(200);
BENCHMARK(BM_FfFactorised)->Arg(50)->Arg(200);
BENCHMARK(BM_FfTraceGrid)->Arg(50)->Arg(200);

struct ExactFixture {
    Spectrum spec;
    QuantumState rho;
    Probe z{1, Axis::Z};
    explicit ExactFixture(int N) : spec(spectral_decompose(build_hamiltonian({N, 1.0, 1.0, 0.0}))), rho(ground_state(spec)) {}
};

void BM_DenseKdTable(benchmark::State& st) {
    const ExactFixture fx(static_cast<int>(st.range(0)));
    double t = 0.0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(kd_table(fx.rho, fx.spec, fx.z, fx.z, t).mh[3]);
        t += 1e-3;
    }
}

void BM_ExactTracePoint(benchmark::State& st) {
    const ExactFixture fx(static_cast<int>(st.range(0)));
    const ExactKdTrace tr(fx.rho, fx.spec, fx.z, fx.z);
    double t = 0.0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(tr.kd_mm(t));
        t += 1e-3;
    }
}

BENCHMARK(BM_DenseKdTable)->Arg(6)->Arg(8);
BENCHMARK(BM_ExactTracePoint)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
