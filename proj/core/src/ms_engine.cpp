#include "lzmem/ms_engine.hpp"

#include <algorithm>
#include <deque>
#include <optional>

#include "lzmem/error.hpp"

namespace lzmem {

std::uint64_t pacing_interval(std::uint64_t n) {
    std::uint64_t bits = 0;
    while ((std::uint64_t{1} << bits) < n) ++bits;
    return std::max<std::uint64_t>(bits, 1);
}

StepEvent ms_step(MatchState& state, std::size_t i, const PatternQuery& query, StepMode mode,
                  QueryStats& stats) {
    const RlbwtIndex& index = query.index;
    const Symbol c = query.pattern[i];

    if (!index.occurs(c)) {
        state = {0, kAbsent, 0};
        return StepEvent::absent;
    }

    if (state.pos == kAbsent) {
        // Any run of c gives a length-1 match; take the first for determinism.
        std::uint64_t b = index.first_run_start(c);
        SaLookup sa = index.sa_at(b);
        stats.lf_steps += sa.lf_steps + 1;
        state.pos = sa.value - 1;
        state.len = 1;
        state.q = index.lf_step(b);
        return StepEvent::init;
    }

    if (index.symbol_at(state.q) == c) {
        state.pos -= 1;
        if (state.len != kPending) state.len += 1;
        state.q = index.lf_step(state.q);
        ++stats.lf_steps;
        return StepEvent::match;
    }

    ++stats.mismatch_events;
    NeighborRuns nb = index.neighbor_runs(state.q, c);
    std::uint64_t b = index.pick_side(state.q, c, nb);
    SaLookup sa = index.sa_at(b);
    stats.lf_steps += sa.lf_steps;
    if (sa.value == 0) throw InvariantError("boundary of a non-sentinel run has SA value 0");

    if (mode == StepMode::positions_only) {
        state.len = kPending;
    } else {
        bool shortcut = false;
        if (mode == StepMode::eager_aug && nb.prev_end && nb.next_start) {
            const Threshold& th = index.threshold(c, nb.next_index);
            shortcut = b == *nb.prev_end ? state.len <= th.lce_before : state.len <= th.lce_after;
        }
        if (shortcut) {
            ++stats.shortcut_hits;
            state.len += 1;
        } else {
            ++stats.lcp_queries;
            state.len = query.grammar.lcp_pattern_text(query.hashes, i + 1, state.len, sa.value) + 1;
        }
    }
    state.pos = sa.value - 1;
    state.q = index.lf_step(b);
    ++stats.lf_steps;
    return StepEvent::mismatch;
}

EagerResult ms_eager(std::span<const Symbol> pattern, const RlbwtIndex& index,
                     const Grammar& grammar, bool augmented) {
    if (augmented && !index.augmented()) {
        throw UsageError("index was built without augmented thresholds");
    }
    EagerResult out;
    const std::size_t m = pattern.size();
    out.ms.pos.resize(m);
    out.ms.len.resize(m);
    PatternQuery query(pattern, index, grammar);
    MatchState state;
    const StepMode mode = augmented ? StepMode::eager_aug : StepMode::eager;
    for (std::size_t i = m; i-- > 0;) {
        ms_step(state, i, query, mode, out.stats);
        out.ms.pos[i] = state.pos;
        out.ms.len[i] = state.len;
    }
    return out;
}

namespace {

// Resolves deferred lengths of the lazy engine. Positions are fed right to
// left; mismatch events whose MEM end is not yet known wait in `pending_`
// (descending positions). Every position >= resolved_ has its final length.
class LazyResolver {
  public:
    LazyResolver(const PatternQuery& query, MatchingStatistics& ms, QueryStats& stats)
        : query_(query),
          ms_(ms),
          stats_(stats),
          pace_(pacing_interval(query.index.n())),
          resolved_(ms.m()),
          tail_(ms.m()) {}

    void on_event(std::size_t x, StepEvent ev) {
        now_ = x;
        switch (ev) {
            case StepEvent::absent:
                flush();
                ms_.len[x] = 0;
                resolved_ = x;
                return;
            case StepEvent::init:
                flush();
                end_ = x;
                ms_.len[x] = 1;
                resolved_ = x;
                tail_ = x;
                gap_ = 1;
                return;
            case StepEvent::match:
                tail_ = x;
                if (pending_.empty()) finalize(x, x, end_);
                break;
            case StepEvent::mismatch:
                tail_ = x;
                pending_.push_back(x);
                run_schedule();
                break;
        }
        if (!pending_.empty() && pending_.front() - x >= pace_) {
            ++stats_.extra_paced_queries;
            const std::size_t last = pending_.size() - 1;
            if (reaches(pending_[last])) {
                commit(last);
            } else {
                resolve_failure(last);
                run_schedule();
            }
        }
    }

    void finish() { flush(); }

  private:
    // Does position p still extend to the current MEM end?
    bool reaches(std::size_t p) {
        const std::uint64_t len = end_ - p + 1;
        const std::uint64_t tpos = ms_.pos[p];
        if (tpos + len > query_.index.n()) return false;
        ++stats_.equality_checks;
        return query_.grammar.substring_equal(query_.hashes, p, tpos, len);
    }

    void finalize(std::size_t hi, std::size_t lo, std::uint64_t end) {
        for (std::size_t i = lo; i <= hi; ++i) ms_.len[i] = end - i + 1;
        stats_.max_len_latency = std::max<std::uint64_t>(stats_.max_len_latency, hi - now_);
        resolved_ = lo;
    }

    std::size_t lowest_after(std::size_t count) const {
        return count < pending_.size() ? pending_[count] + 1 : tail_;
    }

    // pending_[0..idx] all reach end_.
    void commit(std::size_t idx) {
        finalize(resolved_ - 1, lowest_after(idx + 1), end_);
        pending_.erase(pending_.begin(), pending_.begin() + static_cast<std::ptrdiff_t>(idx + 1));
    }

    // pending_[fail] does not reach end_: find the first event that stops
    // short, finalize everything above it, then measure it with one LCP query.
    void resolve_failure(std::size_t fail) {
        std::ptrdiff_t lo = -1;
        std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(fail);
        while (hi - lo > 1) {
            std::ptrdiff_t mid = lo + (hi - lo) / 2;
            if (reaches(pending_[static_cast<std::size_t>(mid)])) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if (lo >= 0) commit(static_cast<std::size_t>(lo));

        const std::size_t f = pending_.front();
        pending_.pop_front();
        ++stats_.lcp_queries;
        std::uint64_t len =
            query_.grammar.lcp_pattern_text(query_.hashes, f, end_ - f, ms_.pos[f]);
        if (len == 0) throw InvariantError("mismatch event without a matching symbol");
        end_ = f + len - 1;
        finalize(f, lowest_after(0), end_);
        gap_ = 1;
    }

    void run_schedule() {
        while (!pending_.empty() && pending_.size() >= gap_) {
            const std::size_t idx = gap_ - 1;
            if (reaches(pending_[idx])) {
                commit(idx);
                gap_ *= 2;
            } else {
                resolve_failure(idx);
            }
        }
    }

    void flush() {
        while (!pending_.empty()) {
            const std::size_t last = pending_.size() - 1;
            if (reaches(pending_[last])) {
                commit(last);
            } else {
                resolve_failure(last);
            }
        }
    }

    const PatternQuery& query_;
    MatchingStatistics& ms_;
    QueryStats& stats_;
    const std::uint64_t pace_;
    std::size_t now_ = 0;
    std::size_t resolved_;
    std::size_t tail_;
    std::uint64_t end_ = 0;
    std::size_t gap_ = 1;
    std::deque<std::size_t> pending_;
};

struct PositionsPass {
    std::vector<std::uint64_t> pos;
    std::vector<StepEvent> events;
};

PositionsPass positions_pass(const PatternQuery& query, QueryStats& stats) {
    const std::size_t m = query.pattern.size();
    PositionsPass pass;
    pass.pos.resize(m);
    pass.events.resize(m);
    MatchState state;
    for (std::size_t i = m; i-- > 0;) {
        pass.events[i] = ms_step(state, i, query, StepMode::positions_only, stats);
        pass.pos[i] = state.pos;
    }
    return pass;
}

}  // namespace

LazyResult ms_lazy(std::span<const Symbol> pattern, const RlbwtIndex& index,
                   const Grammar& grammar, bool verify) {
    LazyResult out;
    const std::size_t m = pattern.size();
    out.ms.pos.resize(m);
    out.ms.len.assign(m, 0);
    PatternQuery query(pattern, index, grammar);
    LazyResolver resolver(query, out.ms, out.stats);
    MatchState state;
    for (std::size_t i = m; i-- > 0;) {
        StepEvent ev = ms_step(state, i, query, StepMode::positions_only, out.stats);
        out.ms.pos[i] = state.pos;
        resolver.on_event(i, ev);
    }
    resolver.finish();

    out.unverified_len = out.ms.len;
    out.mems = mems_from_ms(out.ms);
    if (verify) {
        out.stats.verified = true;
        if (!verify_mems(pattern, out.mems, grammar)) {
            out.stats.fallback_used = true;
            out.ms = ms_naive_fallback(pattern, out.ms.pos, grammar);
            out.mems = mems_from_ms(out.ms);
        }
    }
    return out;
}

MemList mems_from_ms(const MatchingStatistics& ms) {
    MemList mems;
    for (std::size_t i = 0; i < ms.m(); ++i) {
        if (ms.len[i] > 0 && (i == 0 || ms.len[i - 1] <= ms.len[i])) {
            mems.push_back({i, ms.len[i], ms.pos[i]});
        }
    }
    return mems;
}

bool verify_mems(std::span<const Symbol> pattern, const MemList& mems, const Grammar& grammar) {
    std::uint64_t covered = 0;
    for (const Mem& mem : mems) {
        const std::uint64_t end = mem.start + mem.len;
        if (end > pattern.size()) return false;
        const std::uint64_t from = std::max(mem.start, covered);
        if (from < end) {
            const std::uint64_t tfrom = mem.text_pos + (from - mem.start);
            if (mem.text_pos == kAbsent || tfrom + (end - from) > grammar.length()) return false;
            auto slice = grammar.extract(tfrom, end - from);
            if (!std::equal(slice.begin(), slice.end(), pattern.begin() + static_cast<std::ptrdiff_t>(from))) {
                return false;
            }
        }
        covered = std::max(covered, end);
    }
    return true;
}

MatchingStatistics ms_naive_fallback(std::span<const Symbol> pattern,
                                     std::span<const std::uint64_t> positions,
                                     const Grammar& grammar) {
    const std::size_t m = pattern.size();
    MatchingStatistics ms;
    ms.pos.assign(positions.begin(), positions.end());
    ms.len.assign(m, 0);
    const std::uint64_t n = grammar.length();
    for (std::size_t i = m; i-- > 0;) {
        if (positions[i] == kAbsent) continue;
        // MS lengths drop by at most one per step leftwards.
        std::uint64_t cap = i + 1 < m ? ms.len[i + 1] + 1 : 1;
        cap = std::min<std::uint64_t>({cap, m - i, n - positions[i]});
        auto slice = grammar.extract(positions[i], cap);
        std::uint64_t k = 0;
        while (k < cap && slice[k] == pattern[i + k]) ++k;
        ms.len[i] = k;
    }
    return ms;
}

namespace {

// Candidate MEM starts: positions whose left neighbour is a mismatch or an
// absent symbol, plus position 0. Match steps never start a MEM.
MemResult skip_search(std::span<const Symbol> pattern, const RlbwtIndex& index,
                      const Grammar& grammar, std::uint64_t min_len, bool adaptive) {
    MemResult out;
    const std::size_t m = pattern.size();
    PatternQuery query(pattern, index, grammar);
    PositionsPass pass = positions_pass(query, out.stats);

    std::uint64_t d = min_len;
    std::uint64_t best = 0;
    // Candidates above `allowed` are provably shorter than d.
    std::int64_t allowed = static_cast<std::int64_t>(m);
    std::optional<std::uint64_t> known_end;
    std::optional<Mem> undecided;
    std::optional<std::uint64_t> undecided_end;
    MemList found;

    for (std::size_t s = m; s-- > 0;) {
        if (pass.pos[s] == kAbsent) continue;
        const bool left_final = s == 0 || pass.events[s - 1] == StepEvent::absent;
        if (!left_final && pass.events[s - 1] != StepEvent::mismatch) continue;
        if (static_cast<std::int64_t>(s) > allowed) continue;

        std::uint64_t cap = m - s;
        if (known_end) cap = std::min<std::uint64_t>(cap, *known_end - s + 1);
        ++out.stats.lcp_queries;
        const std::uint64_t len = grammar.lcp_pattern_text(query.hashes, s, cap, pass.pos[s]);
        const std::uint64_t end = s + len - 1;
        known_end = end;

        // The previous long candidate starts a MEM iff the match ending at its
        // left neighbour stops earlier; that neighbour shares this end.
        if (undecided) {
            if (end < *undecided_end) found.push_back(*undecided);
            undecided.reset();
        }

        if (len >= d) {
            if (adaptive && len > best) {
                best = len;
                d = best;
            }
            Mem mem{s, len, pass.pos[s]};
            if (left_final) {
                found.push_back(mem);
            } else {
                undecided = mem;
                undecided_end = end;
            }
            allowed = static_cast<std::int64_t>(m);
        } else {
            allowed = static_cast<std::int64_t>(s + len) - static_cast<std::int64_t>(d);
        }
    }
    if (undecided) throw InvariantError("MEM candidate left undecided");

    std::reverse(found.begin(), found.end());
    for (const Mem& mem : found) {
        if (adaptive ? mem.len == best : mem.len >= min_len) out.mems.push_back(mem);
    }
    return out;
}

}  // namespace

MemResult long_mems(std::span<const Symbol> pattern, const RlbwtIndex& index,
                    const Grammar& grammar, std::uint64_t min_len) {
    if (min_len == 0) throw UsageError("use full engine");
    return skip_search(pattern, index, grammar, min_len, false);
}

MemResult lcs(std::span<const Symbol> pattern, const RlbwtIndex& index, const Grammar& grammar) {
    return skip_search(pattern, index, grammar, 1, true);
}

}  // namespace lzmem
