#include <benchmark/benchmark.h>

#include <mmpfloer/mmp.hpp>
#include <mmpfloer/potential.hpp>

#include <random>

using namespace mmpfloer;
namespace nv = mmpfloer::novikov;
using Cplx = std::complex<double>;

namespace {

nv::Series random_series(std::mt19937& rng, size_t nterms, const Rational& trunc) {
    std::uniform_int_distribution<int> num(0, 63);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<nv::Series::Term> terms;
    for (size_t i = 0; i < nterms; ++i)
        terms.push_back({Rational(num(rng), 8), {coef(rng), coef(rng)}});
    return nv::make_series<Cplx>(std::move(terms), trunc);
}

void bm_series_mul(benchmark::State& state) {
    std::mt19937 rng(1);
    const Rational T(8);
    auto a = random_series(rng, size_t(state.range(0)), T);
    auto b = random_series(rng, size_t(state.range(0)), T);
    for (auto _ : state) benchmark::DoNotOptimize(nv::mul(a, b));
}
BENCHMARK(bm_series_mul)->Arg(8)->Arg(32)->Arg(128);

void bm_vertex_enumeration(benchmark::State& state) {
    // hexagon with rational constants, a dense 2-d case
    auto P = polytope::from_facets(
        2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {-1, -1}, {1, 1}},
        {rat(0), rat(0), rat(-3), rat(-3), rat(-5), rat(1, 2)});
    for (auto _ : state) benchmark::DoNotOptimize(polytope::vertices(P));
}
BENCHMARK(bm_vertex_enumeration);

void bm_polygon_transitions(benchmark::State& state) {
    QVector lengths;
    for (long i = 0; i < state.range(0); ++i) lengths.push_back(Rational(10 + 3 * i, 2));
    for (auto _ : state) benchmark::DoNotOptimize(mmp::polygon_transition_times(lengths));
}
BENCHMARK(bm_polygon_transitions)->Arg(5)->Arg(7)->Arg(9);

void bm_newton_lift(benchmark::State& state) {
    auto W0 = potential::exceptional_model(3, 1, rat(1, 2), Rational(6));
    auto W = W0;
    W.terms.push_back({rat(3, 4), {1, -1, 0}, {0.3, 0.1}});
    W.terms.push_back({rat(7, 8), {0, 2, -1}, {-0.2, 0.4}});
    W = potential::make_potential(W.dim, W.terms, Rational(6));
    auto seeds = potential::critical_points_leading(W0);
    for (auto _ : state)
        for (const auto& s : seeds)
            benchmark::DoNotOptimize(potential::newton_lift(W, s, Rational(5)));
}
BENCHMARK(bm_newton_lift);

}  // namespace
