// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lzmem/error.hpp"
#include "lzmem/index_file.hpp"
#include "lzmem/ms_engine.hpp"
#include "lzmem/oracle.hpp"
#include "lzmem/query.hpp"
#include "synth.hpp"

using namespace lzmem;

namespace {

// Pinned parameters.
constexpr int kSmallTexts = 500;
constexpr std::size_t kSmallMaxN = 300;
constexpr std::size_t kSmallPatterns = 5;
constexpr std::size_t kSmallMaxM = 60;
constexpr double kSmallMutation = 0.1;

constexpr std::size_t kCopies = 50;
constexpr std::size_t kSeedLen = 20000;
constexpr double kCopyMutation = 0.002;
constexpr std::size_t kPatterns = 200;
constexpr std::size_t kPatternLen = 150;
constexpr double kPatternMutation = 0.01;
constexpr std::size_t kNaiveCrossChecks = 5;

constexpr double kBudgetConstant = 8.0;
constexpr double kLazyToEagerRatio = 0.5;
constexpr std::uint64_t kEventsPerMem = 4;
constexpr double kSampleRatio = 0.8;
constexpr std::uint64_t kLongMemD[] = {1, 5, 16};
constexpr std::uint64_t kSubsampleRates[] = {1, 2, 5, 10};

constexpr std::size_t kExhaustiveMaxN = 2000;
constexpr int kRandomTrials = 10000;

class Criterion {
  public:
    Criterion(int id, std::string name) : id_(id), name_(std::move(name)) {}

    void check(bool ok, const std::string& what) {
        ++checks_;
        if (!ok && failure_.empty()) failure_ = what;
    }
    void note(const std::string& s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
    bool passed() const { return failure_.empty() && checks_ > 0; }

    void report() const {
        std::cout << (passed() ? "PASS" : "FAIL") << " [" << id_ << "] " << name_ << ": "
                  << checks_ << " checks";
        if (!notes_.empty()) std::cout << "; " << notes_;
        if (!failure_.empty()) std::cout << "; first failure: " << failure_;
        if (checks_ == 0) std::cout << "; nothing checked";
        std::cout << std::endl;
    }

  private:
    int id_;
    std::string name_;
    std::string notes_;
    std::string failure_;
    std::uint64_t checks_ = 0;
};

bool same_spans(const MemList& a, const MemList& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].start != b[k].start || a[k].len != b[k].len) return false;
    }
    return true;
}

bool mems_occur(std::span<const Symbol> p, std::span<const Symbol> t, const MemList& mems) {
    for (const Mem& m : mems) {
        if (m.start + m.len > p.size() || m.text_pos + m.len > t.size()) return false;
        if (!std::equal(p.begin() + m.start, p.begin() + m.start + m.len, t.begin() + m.text_pos)) {
            return false;
        }
    }
    return true;
}

MemList at_least(const MemList& mems, std::uint64_t d) {
    MemList out;
    for (const Mem& m : mems) {
        if (m.len >= d) out.push_back(m);
    }
    return out;
}

bool one_sided(const std::vector<std::uint64_t>& lazy, const std::vector<std::uint64_t>& truth) {
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (lazy[i] < truth[i]) return false;
    }
    return true;
}

std::string where(const std::string& corpus, std::size_t k) {
    return corpus + " pattern " + std::to_string(k);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::fixed << v;
    return s.str();
}

// Shared checks for criteria 5, 6 and 7 on one (text, pattern) pair.
struct Shared {
    Criterion& latency;
    Criterion& one_side;
    Criterion& long_mem;
};

void shared_checks(Shared& c, const std::string& at, std::span<const Symbol> p,
                   std::span<const Symbol> t, const Index& idx, const MatchingStatistics& truth,
                   const LazyResult& lazy) {
    c.latency.check(lazy.stats.max_len_latency <= pacing_interval(idx.n()), at + " latency");
    c.one_side.check(one_sided(lazy.unverified_len, truth.len), at + " underestimate");
    MemList truth_mems = oracle::mems_of(truth);
    for (std::uint64_t d : kLongMemD) {
        MemResult got = long_mems(p, idx.rlbwt, idx.grammar, d);
        c.long_mem.check(same_spans(got.mems, at_least(truth_mems, d)) && mems_occur(p, t, got.mems),
                         at + " long_mems d=" + std::to_string(d));
    }
    MemResult best = lcs(p, idx.rlbwt, idx.grammar);
    MemList want;
    std::uint64_t top = 0;
    for (const Mem& m : truth_mems) top = std::max(top, m.len);
    for (const Mem& m : truth_mems) {
        if (m.len == top) want.push_back(m);
    }
    c.long_mem.check(same_spans(best.mems, want) && mems_occur(p, t, best.mems), at + " lcs");
}

// Criterion 1: small random texts.
void small_texts(Criterion& c1, Shared& shared) {
    auto t0 = std::chrono::steady_clock::now();
    synth::Rng rng(20240601);
    std::uint64_t patterns = 0;
    for (int trial = 0; trial < kSmallTexts; ++trial) {
        const std::string abc = synth::letters(trial % 2 == 0 ? 2 : 4);
        std::string text = synth::random_text(rng, rng.between(1, kSmallMaxN), abc);
        Index idx = synth::index_of(text, trial, 1, true);
        std::vector<Symbol> t = synth::text_symbols(idx);
        for (std::size_t k = 0; k < kSmallPatterns; ++k) {
            std::size_t m = rng.between(1, kSmallMaxM);
            std::string ps = (k % 2 == 0 && m <= text.size())
                                 ? synth::sample_patterns(rng, text, 1, m, kSmallMutation, abc)[0]
                                 : synth::random_text(rng, m, abc);
            std::vector<Symbol> p = idx.alphabet.encode(ps);
            std::string at = "text " + std::to_string(trial) + " pattern " + std::to_string(k);
            MatchingStatistics truth = oracle::naive_ms(p, t);
            MemList truth_mems = oracle::naive_mems(p, t);

            EagerResult eager = ms_eager(p, idx.rlbwt, idx.grammar);
            EagerResult aug = ms_eager(p, idx.rlbwt, idx.grammar, true);
            LazyResult lazy = ms_lazy(p, idx.rlbwt, idx.grammar, true);
            MatchingStatistics fallback = ms_naive_fallback(p, lazy.ms.pos, idx.grammar);

            c1.check(eager.ms.len == truth.len, at + " eager len");
            c1.check(aug.ms.len == truth.len, at + " eager-aug len");
            c1.check(lazy.ms.len == truth.len, at + " lazy len");
            c1.check(fallback.len == truth.len, at + " fallback len");
            for (const auto* ms : {&eager.ms, &aug.ms, &lazy.ms, &fallback}) {
                c1.check(oracle::occurrence_ok(p, t, *ms, truth), at + " occurrence");
                MemList mems = mems_from_ms(*ms);
                c1.check(same_spans(mems, truth_mems) && mems_occur(p, t, mems), at + " mems");
            }
            c1.check(same_spans(lazy.mems, truth_mems), at + " lazy mems");
            shared_checks(shared, at, p, t, idx, truth, lazy);
            ++patterns;
        }
    }
    c1.note(std::to_string(kSmallTexts) + " texts, " + std::to_string(patterns) + " patterns, " +
            fmt(seconds_since(t0)) + " s");
}

struct Repetitive {
    std::string text;
    TextRecord record;
    SuffixStructures suffixes;
    Index index;  // s = 1, augmented
    std::vector<std::string> patterns;
};

Repetitive make_repetitive(std::uint64_t build_seed) {
    Repetitive r;
    synth::Rng rng(777);
    r.text = synth::pangenome(rng, kCopies, kSeedLen, kCopyMutation);
    r.patterns = synth::sample_patterns(rng, r.text, kPatterns, kPatternLen, kPatternMutation, "ACGT");
    r.record = load_raw(r.text, "pangenome");
    r.suffixes = build_suffix_structures(r.record.symbols);
    r.index.alphabet = r.record.alphabet;
    r.index.records = r.record.records;
    r.index.rlbwt = RlbwtIndex::build(r.suffixes, r.record.alphabet.sigma(), true, 1);
    r.index.grammar = Grammar::build(r.record.symbols, HashConfig::from_seed(build_seed));
    return r;
}

struct Totals {
    std::uint64_t eager_queries = 0;
    std::uint64_t lazy_queries = 0;
    std::uint64_t lazy_checks = 0;
    std::uint64_t long16_queries = 0;
    std::uint64_t mismatch_events = 0;
    std::uint64_t mems = 0;
};

// Criteria 2, 4 and the corpus-2 halves of 5-7.
void repetitive_corpus(const Repetitive& r, Criterion& c2, Criterion& c4, Criterion& c7,
                       Shared& shared) {
    auto t0 = std::chrono::steady_clock::now();
    const Index& idx = r.index;
    std::span<const Symbol> t = r.record.symbols;
    oracle::KmerOracle kmer(t);
    const double logn = static_cast<double>(pacing_interval(idx.n()));
    Totals tot;
    double worst_ratio = 0;

    for (std::size_t k = 0; k < r.patterns.size(); ++k) {
        std::vector<Symbol> p = idx.alphabet.encode(r.patterns[k]);
        std::string at = where("pangenome", k);
        MatchingStatistics truth = kmer.ms(p);
        if (k < kNaiveCrossChecks) c2.check(oracle::naive_ms(p, t) == truth, at + " k-mer oracle");

        EagerResult eager = ms_eager(p, idx.rlbwt, idx.grammar);
        EagerResult aug = ms_eager(p, idx.rlbwt, idx.grammar, true);
        LazyResult lazy = ms_lazy(p, idx.rlbwt, idx.grammar, true);
        c2.check(eager.ms.len == truth.len, at + " eager len");
        c2.check(aug.ms.len == truth.len, at + " eager-aug len");
        c2.check(lazy.ms.len == truth.len, at + " lazy len");
        for (const auto* ms : {&eager.ms, &aug.ms, &lazy.ms}) {
            c2.check(oracle::occurrence_ok(p, t, *ms, truth), at + " occurrence");
        }
        c2.check(same_spans(lazy.mems, oracle::mems_of(truth)), at + " lazy mems");
        c2.check(!lazy.stats.fallback_used, at + " unexpected fallback");

        const double m = static_cast<double>(p.size());
        const double mu = static_cast<double>(oracle::mems_of(truth).size());
        double bound = kBudgetConstant * (m / logn + (mu > 0 ? mu * (1 + std::log2(m / mu + 1)) : 0));
        double used = static_cast<double>(lazy.stats.lcp_queries + lazy.stats.equality_checks);
        worst_ratio = std::max(worst_ratio, used / bound);
        c4.check(used <= bound, at + " budget " + fmt(used) + " > " + fmt(bound));

        MemResult long16 = long_mems(p, idx.rlbwt, idx.grammar, 16);
        c7.check(long16.stats.lcp_queries <= eager.stats.lcp_queries, at + " long_mems(16) queries");

        tot.eager_queries += eager.stats.lcp_queries;
        tot.lazy_queries += lazy.stats.lcp_queries;
        tot.lazy_checks += lazy.stats.equality_checks;
        tot.long16_queries += long16.stats.lcp_queries;
        tot.mismatch_events += lazy.stats.mismatch_events;
        tot.mems += static_cast<std::uint64_t>(mu);

        shared_checks(shared, at, p, t, idx, truth, lazy);
    }

    c2.note("n=" + std::to_string(idx.n()) + " r=" + std::to_string(idx.r()) +
            " g=" + std::to_string(idx.g()) + ", " + std::to_string(r.patterns.size()) +
            " patterns, " + fmt(seconds_since(t0)) + " s");
    c4.note("worst per-pattern use/bound " + fmt(worst_ratio));
    c4.note("lcp queries lazy " + std::to_string(tot.lazy_queries) + " vs eager " +
            std::to_string(tot.eager_queries) + ", equality checks " + std::to_string(tot.lazy_checks) +
            ", mismatch events " + std::to_string(tot.mismatch_events) + ", mu " + std::to_string(tot.mems));
    if (tot.mismatch_events >= kEventsPerMem * tot.mems) {
        c4.check(static_cast<double>(tot.lazy_queries) <=
                     kLazyToEagerRatio * static_cast<double>(tot.eager_queries),
                 "aggregate lazy lcp queries above half of eager");
    } else {
        c4.note("aggregate condition not met, ratio check vacuous");
    }
    c7.check(tot.long16_queries < tot.eager_queries, "aggregate long_mems(16) not below eager");
    c7.note("lcp queries long_mems(16) " + std::to_string(tot.long16_queries) + " vs eager " +
            std::to_string(tot.eager_queries));
}

// Criterion 3.
void subsample_rates(const Repetitive& r, Criterion& c3) {
    std::string reference;
    std::size_t prev = SIZE_MAX;
    std::map<std::uint64_t, std::size_t> counts;
    for (std::uint64_t s : kSubsampleRates) {
        Index idx = r.index;
        idx.rlbwt = RlbwtIndex::build(r.suffixes, r.record.alphabet.sigma(), true, s);
        std::ostringstream out;
        for (std::size_t k = 0; k < r.patterns.size(); ++k) {
            std::vector<Symbol> p = idx.alphabet.encode(r.patterns[k]);
            for (bool aug : {false, true}) {
                MatchingStatistics ms = ms_eager(p, idx.rlbwt, idx.grammar, aug).ms;
                for (std::size_t i = 0; i < ms.m(); ++i) out << ms.pos[i] << ':' << ms.len[i] << ' ';
            }
            LazyResult lazy = ms_lazy(p, idx.rlbwt, idx.grammar, true);
            for (std::size_t i = 0; i < lazy.ms.m(); ++i) out << lazy.ms.pos[i] << ':' << lazy.ms.len[i] << ' ';
            for (const MemList& mems : {long_mems(p, idx.rlbwt, idx.grammar, 16).mems,
                                        lcs(p, idx.rlbwt, idx.grammar).mems}) {
                for (const Mem& m : mems) out << m.start << '/' << m.len << '/' << m.text_pos << ' ';
            }
            out << '\n';
        }
        if (reference.empty()) {
            reference = out.str();
        } else {
            c3.check(out.str() == reference, "outputs differ at s=" + std::to_string(s));
        }
        std::size_t count = idx.rlbwt.samples().retained.size();
        counts[s] = count;
        c3.check(count <= prev, "sample count grew at s=" + std::to_string(s));
        prev = count;
    }
    c3.check(static_cast<double>(counts[5]) < kSampleRatio * static_cast<double>(counts[1]),
             "count(s=5) not below 0.8 count(s=1)");
    std::string list;
    for (auto [s, n] : counts) list += (list.empty() ? "" : " ") + std::to_string(s) + ":" + std::to_string(n);
    c3.note("retained samples " + list + ", ratio s5/s1 " +
            fmt(static_cast<double>(counts[5]) / static_cast<double>(counts[1])));
}

std::uint64_t direct_hash(std::span<const Symbol> s, std::uint64_t base) {
    std::uint64_t h = 0;
    for (Symbol c : s) h = kr::add(kr::mul(h, base), c);
    return h;
}

void check_lf(Criterion& c8, const RlbwtIndex& rl, const SuffixStructures& s, std::uint64_t q,
              std::vector<char>* hit) {
    std::uint64_t n = rl.n();
    std::uint64_t lf = rl.lf_step(q);
    c8.check(lf < n && s.sa[lf] == (s.sa[q] + n - 1) % n, "LF at " + std::to_string(q));
    c8.check(rl.symbol_at(q) == s.bwt[q], "symbol_at " + std::to_string(q));
    if (hit && lf < n) {
        c8.check(!(*hit)[lf], "LF not injective at " + std::to_string(lf));
        (*hit)[lf] = 1;
    }
}

void check_threshold(Criterion& c8, const SuffixStructures& s, std::span<const Symbol> text,
                     const Threshold& th) {
    auto first = s.lcp.begin() + static_cast<std::ptrdiff_t>(th.prev_end + 1);
    auto last = s.lcp.begin() + static_cast<std::ptrdiff_t>(th.next_start + 1);
    auto argmin = static_cast<std::uint64_t>(std::min_element(first, last) - s.lcp.begin());
    c8.check(argmin == th.t, "threshold at " + std::to_string(th.prev_end));
    c8.check(th.lce_before == oracle::naive_lce(text, s.sa[th.t - 1], s.sa[th.prev_end]) &&
                 th.lce_after == oracle::naive_lce(text, s.sa[th.t], s.sa[th.next_start]),
             "augmented LCE at " + std::to_string(th.prev_end));
}

// Criterion 8, exhaustive part: every offset, pair and substring of texts with n <= 2000.
void structures_exhaustive(Criterion& c8) {
    synth::Rng rng(99);
    std::vector<std::string> texts = {"banana", "mississippi", "a", "abababababab"};
    texts.push_back(synth::random_text(rng, kExhaustiveMaxN - 1, "ACGT"));
    texts.push_back(synth::pangenome(rng, 10, 150, 0.02));
    texts.push_back(synth::random_text(rng, 700, "ab"));
    std::string seed = synth::random_text(rng, 64, "AC");
    std::string rep;
    while (rep.size() + seed.size() < 640) rep += seed;
    texts.push_back(rep);

    for (const std::string& str : texts) {
        TextRecord rec = load_raw(str);
        std::span<const Symbol> text = rec.symbols;
        const std::uint64_t n = text.size();
        SuffixStructures s = build_suffix_structures(text);
        c8.check(s.sa == oracle::naive_sa(text), "suffix array n=" + std::to_string(n));
        for (std::uint64_t q = 1; q < n; ++q) {
            c8.check(s.lcp[q] == oracle::naive_lce(text, s.sa[q - 1], s.sa[q]), "lcp");
        }
        RlbwtIndex rl = RlbwtIndex::build(s, rec.alphabet.sigma(), true, 1);
        std::vector<char> hit(n, 0);
        for (std::uint64_t q = 0; q < n; ++q) check_lf(c8, rl, s, q, &hit);
        for (const Threshold& th : rl.thresholds().entries) check_threshold(c8, s, text, th);
        for (std::uint64_t b : boundary_offsets(segment_runs(s.bwt))) {
            c8.check(rl.sa_at(b).value == s.sa[b], "sa_at " + std::to_string(b));
        }

        Grammar gr = Grammar::build(text, HashConfig::from_seed(n));
        const std::uint64_t base = gr.hash_config().base;
        c8.check(gr.extract(0, n) == std::vector<Symbol>(text.begin(), text.end()), "extract all");
        std::size_t log2n = 0;
        while ((std::uint64_t{1} << log2n) < n) ++log2n;
        c8.check(gr.height() <= log2n + 1, "grammar height");
        for (std::uint64_t i = 0; i < n; ++i) {
            c8.check(gr.at(i) == text[i], "at " + std::to_string(i));
            std::uint64_t h = 0;
            for (std::uint64_t len = 1; i + len <= n; ++len) {
                h = kr::add(kr::mul(h, base), text[i + len - 1]);
                if (gr.substring_hash(i, len) != h) {
                    c8.check(false, "substring hash " + std::to_string(i) + "+" + std::to_string(len));
                }
            }
            c8.check(true, "substring hashes");
            std::uint64_t len = std::min<std::uint64_t>(n - i, 1 + (i * 7919) % 97);
            auto sub = gr.extract(i, len);
            c8.check(std::equal(sub.begin(), sub.end(), text.begin() + i), "extract range");
        }
        for (std::uint64_t x = 0; x < n; ++x) {
            for (std::uint64_t y = 0; y < n; ++y) {
                std::uint64_t want = oracle::naive_lce(text, x, y);
                if (gr.lce_heuristic(x, y, UINT64_MAX) != want) {
                    c8.check(false, "lce " + std::to_string(x) + "," + std::to_string(y));
                }
            }
        }
        c8.check(true, "lce pairs");
    }
    c8.note(std::to_string(texts.size()) + " texts exhaustive");
}

// Criterion 8, randomized part on the repetitive corpus.
void structures_random(Criterion& c8, const Repetitive& r) {
    synth::Rng rng(4242);
    const SuffixStructures& s = r.suffixes;
    const RlbwtIndex& rl = r.index.rlbwt;
    const Grammar& gr = r.index.grammar;
    std::span<const Symbol> text = r.record.symbols;
    const std::uint64_t n = text.size();
    const std::uint64_t base = gr.hash_config().base;
    const auto& thresholds = rl.thresholds().entries;
    const auto boundaries = boundary_offsets(segment_runs(s.bwt));

    for (int trial = 0; trial < kRandomTrials; ++trial) {
        std::uint64_t q = rng.below(n);
        if (q > 0) {
            c8.check(oracle::naive_lce(text, s.sa[q - 1], s.sa[q]) == s.lcp[q], "lcp at " + std::to_string(q));
            std::uint64_t l = s.lcp[q];
            c8.check(text[s.sa[q - 1] + l] < text[s.sa[q] + l], "suffix order at " + std::to_string(q));
        }
        check_lf(c8, rl, s, q, nullptr);
        c8.check(s.bwt[q] == text[(s.sa[q] + n - 1) % n], "bwt at " + std::to_string(q));
        check_threshold(c8, s, text, thresholds[rng.below(thresholds.size())]);
        std::uint64_t b = boundaries[rng.below(boundaries.size())];
        c8.check(rl.sa_at(b).value == s.sa[b], "sa_at " + std::to_string(b));

        std::uint64_t i = rng.below(n);
        std::uint64_t len = rng.between(0, std::min<std::uint64_t>(n - i, 2000));
        auto sub = gr.extract(i, len);
        c8.check(sub.size() == len && std::equal(sub.begin(), sub.end(), text.begin() + i),
                 "extract " + std::to_string(i));
        c8.check(gr.substring_hash(i, len) == direct_hash(text.subspan(i, len), base),
                 "substring hash " + std::to_string(i));
        std::uint64_t x = rng.below(n);
        // Half the pairs are the same offset in two copies, so long LCEs are exercised.
        std::uint64_t y = rng.chance(0.5) ? (x + kSeedLen * rng.between(1, 3)) % n : rng.below(n);
        std::uint64_t want = oracle::naive_lce(text, x, y);
        c8.check(gr.lce_heuristic(x, y, UINT64_MAX) == want, "lce heuristic " + std::to_string(x));
        c8.check(gr.lce_hash(x, y) == want, "lce hash " + std::to_string(x));
    }
    c8.note(std::to_string(kRandomTrials) + " random trials at n=" + std::to_string(n));
}

// Criterion 9: a weak base makes distinct substrings collide.
void collisions(Criterion& c9) {
    synth::Rng rng(9);
    std::uint64_t collided = 0;
    std::uint64_t detected = 0;
    std::uint64_t patterns = 0;
    for (std::uint64_t weak_base : {2, 3}) {
        for (int trial = 0; trial < 40; ++trial) {
            std::string text = synth::pangenome(rng, 4, 60, 0.05);
            Index idx = synth::index_of(text, trial);
            idx.grammar = idx.grammar.rehashed(HashConfig::with_base(weak_base));
            std::vector<Symbol> t = synth::text_symbols(idx);
            for (const std::string& ps : synth::sample_patterns(rng, text, 5, 40, 0.08, "ACGT")) {
                std::vector<Symbol> p = idx.alphabet.encode(ps);
                MatchingStatistics truth = oracle::naive_ms(p, t);
                LazyResult raw = ms_lazy(p, idx.rlbwt, idx.grammar, false);
                LazyResult checked = ms_lazy(p, idx.rlbwt, idx.grammar, true);
                ++patterns;
                c9.check(oracle::occurrence_ok(p, t, checked.ms, truth), "verified output differs from oracle");
                c9.check(same_spans(checked.mems, oracle::mems_of(truth)), "verified mems differ from oracle");
                if (raw.ms.len == truth.len) continue;
                ++collided;
                bool ok = verify_mems(p, raw.mems, idx.grammar);
                c9.check(!ok, "collision not detected by verify_mems");
                detected += ok ? 0 : 1;
                c9.check(checked.stats.fallback_used, "fallback not used after collision");
                c9.check(ms_naive_fallback(p, raw.ms.pos, idx.grammar).len == truth.len,
                         "fallback lengths differ from oracle");
            }
        }
    }
    c9.check(collided > 0, "no collision was produced");
    c9.note(std::to_string(collided) + " of " + std::to_string(patterns) +
            " patterns hit a collision, " + std::to_string(detected) + " detected");
}

std::string query_transcript(const Index& idx, const std::vector<std::string>& patterns) {
    std::ostringstream out;
    std::vector<PatternResult> results;
    for (QueryMode mode : {QueryMode::ms, QueryMode::mems, QueryMode::long_mems, QueryMode::lcs}) {
        for (Engine engine : {Engine::eager, Engine::eager_aug, Engine::lazy}) {
            QueryOptions opts;
            opts.mode = mode;
            opts.engine = engine;
            if (mode == QueryMode::long_mems) opts.min_len = 16;
            results.clear();
            for (std::size_t k = 0; k < patterns.size(); ++k) {
                results.push_back(run_query(idx, {std::to_string(k), patterns[k]}, opts));
                write_tsv(out, results.back(), mode);
            }
            out << stats_json(results, opts, idx);
        }
    }
    return out.str();
}

// Criterion 10.
void round_trip(Criterion& c10, const Repetitive& r) {
    const std::string bytes = serialize_index(r.index);
    Index back = deserialize_index(bytes);
    c10.check(back == r.index, "deserialized index differs");
    c10.check(serialize_index(back) == bytes, "re-serialized bytes differ");

    auto path = (std::filesystem::temp_directory_path() / "lzmem_acceptance.idx").string();
    save_index(r.index, path);
    c10.check(load_index(path) == r.index, "loaded index differs");
    c10.check(read_file(path) == bytes, "saved file differs from serialized bytes");
    std::filesystem::remove(path);

    BuildOptions opts;
    opts.seed = 31337;
    opts.augment = true;
    opts.subsample = 5;
    std::string a = serialize_index(build_index(r.record, opts));
    std::string b = serialize_index(build_index(r.record, opts));
    c10.check(a == b, "fixed-seed builds differ");
    opts.seed = 31338;
    c10.check(serialize_index(build_index(r.record, opts)) != a, "seed has no effect");

    std::vector<std::string> some(r.patterns.begin(), r.patterns.begin() + 50);
    std::string first = query_transcript(r.index, some);
    c10.check(first == query_transcript(r.index, some), "query outputs differ across runs");
    c10.check(first == query_transcript(back, some), "query outputs differ after reload");
    c10.note("index " + std::to_string(bytes.size()) + " bytes");
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    Criterion c1(1, "oracle equivalence, small random texts");
    Criterion c2(2, "oracle equivalence, repetitive corpus");
    Criterion c3(3, "subsample invariance and monotonicity");
    Criterion c4(4, "lazy query budget");
    Criterion c5(5, "lazy length latency <= ceil(log2 n)");
    Criterion c6(6, "lazy lengths never underestimate before verification");
    Criterion c7(7, "long MEM and LCS correctness");
    Criterion c8(8, "structure correctness");
    Criterion c9(9, "collision detection and fallback");
    Criterion c10(10, "round trip and determinism");
    Shared shared{c5, c6, c7};

    auto guarded = [](Criterion& c, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            c.check(false, std::string("exception: ") + e.what());
        }
    };

    guarded(c1, [&] { small_texts(c1, shared); });
    Repetitive r;
    guarded(c2, [&] { r = make_repetitive(2024); });
    if (r.index.n() > 0) {
        guarded(c2, [&] { repetitive_corpus(r, c2, c4, c7, shared); });
        guarded(c3, [&] { subsample_rates(r, c3); });
        guarded(c8, [&] { structures_random(c8, r); });
        guarded(c10, [&] { round_trip(c10, r); });
    }
    guarded(c8, [&] { structures_exhaustive(c8); });
    guarded(c9, [&] { collisions(c9); });

    bool all = true;
    for (const Criterion* c : {&c1, &c2, &c3, &c4, &c5, &c6, &c7, &c8, &c9, &c10}) {
        c->report();
        all = all && c->passed();
    }
    std::cout << (all ? "ALL PASS" : "SOME FAILED") << " in " << fmt(seconds_since(t0)) << " s"
              << std::endl;
    return all ? 0 : 1;
}
