#include <benchmark/benchmark.h>

#include "lzmem/index_file.hpp"
#include "lzmem/ms_engine.hpp"
#include "synth.hpp"

using namespace lzmem;

namespace {

struct Corpus {
    std::string text;
    std::vector<std::vector<Symbol>> patterns;
    Index index;
};

const Corpus& corpus() {
    static const Corpus c = [] {
        Corpus out;
        synth::Rng rng(1);
        out.text = synth::pangenome(rng, 20, 10000, 0.002);
        out.index = synth::index_of(out.text, 1, 1, true);
        for (const auto& s : synth::sample_patterns(rng, out.text, 100, 150, 0.01, "ACGT")) {
            out.patterns.push_back(out.index.alphabet.encode(s));
        }
        return out;
    }();
    return c;
}

template <typename F>
void over_patterns(benchmark::State& state, F&& f) {
    const Corpus& c = corpus();
    std::uint64_t queries = 0;
    std::uint64_t symbols = 0;
    for (auto _ : state) {
        for (const auto& p : c.patterns) {
            QueryStats st = f(c, p);
            queries += st.lcp_queries + st.equality_checks;
            symbols += p.size();
        }
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(symbols));
    state.counters["queries/pattern"] = benchmark::Counter(
        static_cast<double>(queries) / static_cast<double>(c.patterns.size()),
        benchmark::Counter::kAvgIterations);
}

void BM_Eager(benchmark::State& state) {
    over_patterns(state, [](const Corpus& c, const auto& p) {
        return ms_eager(p, c.index.rlbwt, c.index.grammar).stats;
    });
}

void BM_EagerAug(benchmark::State& state) {
    over_patterns(state, [](const Corpus& c, const auto& p) {
        return ms_eager(p, c.index.rlbwt, c.index.grammar, true).stats;
    });
}

void BM_Lazy(benchmark::State& state) {
    over_patterns(state, [](const Corpus& c, const auto& p) {
        return ms_lazy(p, c.index.rlbwt, c.index.grammar).stats;
    });
}

void BM_LongMems(benchmark::State& state) {
    const auto d = static_cast<std::uint64_t>(state.range(0));
    over_patterns(state, [d](const Corpus& c, const auto& p) {
        return long_mems(p, c.index.rlbwt, c.index.grammar, d).stats;
    });
}

void BM_Lcs(benchmark::State& state) {
    over_patterns(state, [](const Corpus& c, const auto& p) {
        return lcs(p, c.index.rlbwt, c.index.grammar).stats;
    });
}

void BM_SaAt(benchmark::State& state) {
    const Corpus& c = corpus();
    auto s = build_suffix_structures(load_raw(c.text).symbols);
    auto rl = RlbwtIndex::build(s, c.index.alphabet.sigma(), false, static_cast<std::uint64_t>(state.range(0)));
    auto boundaries = boundary_offsets(segment_runs(s.bwt));
    std::size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rl.sa_at(boundaries[k]));
        k = (k + 7919) % boundaries.size();
    }
    state.counters["samples"] = static_cast<double>(rl.samples().retained.size());
}

void BM_Lce(benchmark::State& state) {
    const Grammar& gr = corpus().index.grammar;
    synth::Rng rng(3);
    for (auto _ : state) {
        std::uint64_t x = rng.below(gr.length());
        std::uint64_t y = (x + 10000) % gr.length();
        benchmark::DoNotOptimize(state.range(0) == 0 ? gr.lce_heuristic(x, y, UINT64_MAX) : gr.lce_hash(x, y));
    }
}

void BM_Build(benchmark::State& state) {
    synth::Rng rng(2);
    std::string text = synth::pangenome(rng, 10, static_cast<std::size_t>(state.range(0)), 0.002);
    TextRecord rec = load_raw(text);
    for (auto _ : state) {
        BuildOptions opts;
        opts.seed = 1;
        benchmark::DoNotOptimize(build_index(rec, opts));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}

}  // namespace

BENCHMARK(BM_Eager)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EagerAug)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Lazy)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LongMems)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Lcs)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SaAt)->Arg(1)->Arg(2)->Arg(5)->Arg(10);
BENCHMARK(BM_Lce)->Arg(0)->Arg(1);
BENCHMARK(BM_Build)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
