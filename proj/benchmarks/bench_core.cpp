#include <benchmark/benchmark.h>

#include "sv/poly.hpp"

using namespace sv;

static void BM_PolyMul(benchmark::State& state) {
    auto tab = std::make_shared<ParamTable>();
    std::vector<std::string> vars;
    for (int k = 1; k <= 8; ++k) {
        vars.push_back("a" + std::to_string(k));
        tab->declare_real(vars.back());
    }
    Rng rng(0);
    Poly p(GaussRat(), tab), q(GaussRat(), tab);
    for (int t = 0; t < static_cast<int>(state.range(0)); ++t) {
        Poly tp(rng.gauss(5, 3), tab), tq(rng.gauss(5, 3), tab);
        for (auto& v : vars)
            if (rng.int_in(0, 2) == 0) {
                tp = tp * Poly::var(v, tab);
                tq = tq * Poly::var(v, tab, static_cast<int>(rng.int_in(1, 2)));
            }
        p += tp;
        q += tq;
    }
    for (auto _ : state) {
        Poly r = p * q;
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_PolyMul)->Arg(8)->Arg(32);

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
