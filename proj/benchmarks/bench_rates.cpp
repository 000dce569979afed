#include <benchmark/benchmark.h>

#include "metarates/oracle.hpp"
#include "metarates/picard.hpp"
#include "metarates/sampling.hpp"

namespace {

using namespace metarates;

void BM_eta(benchmark::State& state) {
    const auto phi = lp_modulus(2);
    for (auto _ : state) {
        auto v = eta(phi, 2, 1, 1);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_eta);

// the 2^(m-1) tower: m bignum additions with operands up to m bits
void BM_omega_tower(benchmark::State& state) {
    const auto omega = nonexpansive_omega(lp_modulus(2), 2, 1);
    const auto g = Counterfunction::constant(1);
    const Rat eps(4096, state.range(0) * 1024);  // scales ceil(K/eta)
    for (auto _ : state) {
        auto v = omega(eps, g);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_omega_tower)->Arg(1)->Arg(4)->Arg(16);

void BM_min_witness(benchmark::State& state) {
    const auto s = SequenceSource::oscillating(1, Rat(1, 2), Rat(1, 2));
    const auto g = Counterfunction::identity();
    OracleLimits lim;
    lim.scan_cap = 100000;
    const Rat eps(1, state.range(0));
    for (auto _ : state) {
        auto r = min_witness(s, eps, g, lim);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_min_witness)->Arg(8)->Arg(64);

void BM_orbit_steps(benchmark::State& state) {
    Scenario s;
    s.space = LpSpace{1, 2};
    s.map = SelfMap::slow_quadratic();
    s.certificate = FixedBallCertificate{{Rat(0)}, Rat(1, 2), Rat(1), Point{0.99}};
    for (auto _ : state) {
        PicardOrbit orbit(s, 1u << 20);
        benchmark::DoNotOptimize(orbit.at(state.range(0)));
    }
}
BENCHMARK(BM_orbit_steps)->Arg(10000)->Arg(100000);

void BM_modulus_sampler(benchmark::State& state) {
    const LpSpace space{static_cast<int>(state.range(0)), 3};
    const auto phi = lp_modulus(3);
    const Rat eps(1, 2);
    for (auto _ : state) {
        UnitBallPairSampler sampler(space, to_double(eps), to_double(phi(eps)), 42);
        auto report = verify_modulus(sampler, phi, eps, 1000);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_modulus_sampler)->Arg(2)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
