// Microbenchmarks for the hot paths: monomial rewriting, F2 linear
// algebra, the full spectral-sequence run, and subgroup closure.

#include "swdual/f2.hpp"
#include "swdual/page.hpp"
#include "swdual/stabilizer.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>
#include <vector>

using namespace swdual;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const Presentation& g24() {
    static Presentation p =
        Presentation::load_json(slurp(std::string(SWDUAL_DATA_DIR) + "/g24.json"), 4, 16);
    return p;
}

const DifferentialSet& diffs() {
    static DifferentialSet d = DifferentialSet::load_json(
        slurp(std::string(SWDUAL_DATA_DIR) + "/differentials.json"), g24());
    return d;
}

std::vector<AlgebraElement> random_inputs(std::size_t count) {
    const Presentation& p = g24();
    std::mt19937_64 rng(7);
    auto pick = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
    };
    const int caps[9][2] = {{0, 4}, {0, 3}, {-2, 2}, {0, 6}, {0, 5},
                            {0, 3}, {0, 3}, {0, 3}, {0, 3}};
    std::vector<AlgebraElement> out;
    for (std::size_t i = 0; i < count; ++i) {
        Monomial m(p.num_generators());
        for (std::size_t g = 0; g < p.num_generators(); ++g)
            m.set_exp(g, pick(caps[g][0], caps[g][1]));
        AlgebraElement x;
        x.add_term(m, TruncatedSeries::constant(
                          GaloisRingElement(static_cast<std::uint32_t>(rng()),
                                            static_cast<std::uint32_t>(rng()),
                                            p.precision()),
                          p.truncation())
                          .shifted(pick(0, 3)));
        out.push_back(std::move(x));
    }
    return out;
}

void BM_normal_form(benchmark::State& state) {
    auto inputs = random_inputs(256);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(g24().normal_form(inputs[i]));
        i = (i + 1) % inputs.size();
    }
}
BENCHMARK(BM_normal_form);

void BM_multiply(benchmark::State& state) {
    auto inputs = random_inputs(256);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(g24().multiply(inputs[i], inputs[(i + 1) % 256]));
        i = (i + 1) % inputs.size();
    }
}
BENCHMARK(BM_multiply);

void BM_f2_span_insert(benchmark::State& state) {
    std::mt19937_64 rng(11);
    const std::size_t dim = static_cast<std::size_t>(state.range(0));
    std::vector<F2Vector> vecs;
    for (int i = 0; i < 128; ++i) {
        F2Vector v(dim);
        for (std::size_t k = 0; k < dim; ++k)
            if (rng() & 1) v.set(k, true);
        vecs.push_back(std::move(v));
    }
    for (auto _ : state) {
        F2Span span;
        for (const auto& v : vecs) span.insert(v);
        benchmark::DoNotOptimize(span.rank());
    }
}
BENCHMARK(BM_f2_span_insert)->Arg(64)->Arg(256);

void BM_run_to_einfty(benchmark::State& state) {
    for (auto _ : state) {
        SpectralSequence ss(g24(), diffs(), Window{});
        ss.run_to_einfty(static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(ss.detect(45).dimension);
    }
}
BENCHMARK(BM_run_to_einfty)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_detect(benchmark::State& state) {
    static SpectralSequence* ss = [] {
        auto* s = new SpectralSequence(g24(), diffs(), Window{});
        s->run_to_einfty(4);
        return s;
    }();
    int stem = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ss->detect(stem).dimension);
        stem = (stem + 1) % 192;
    }
}
BENCHMARK(BM_detect);

void BM_subgroup_closure(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto [i, j] = quaternion_pair(n);
    StabilizerElement w = StabilizerElement::scalar(GaloisRingElement::omega(n));
    for (auto _ : state) {
        benchmark::DoNotOptimize(subgroup_closure({i, j, w}, 64).order());
    }
}
BENCHMARK(BM_subgroup_closure)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
