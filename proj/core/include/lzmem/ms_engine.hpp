#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lzmem/corpus.hpp"
#include "lzmem/karp_rabin.hpp"
#include "lzmem/rlbwt.hpp"
#include "lzmem/slp.hpp"

namespace lzmem {

/// Marks a pattern position whose symbol does not occur in the text.
inline constexpr std::uint64_t kAbsent = UINT64_MAX;
/// Length placeholder used by the positions-only pass.
inline constexpr std::uint64_t kPending = UINT64_MAX - 1;

/// Per pattern position: length of the longest prefix of P[i..] occurring in
/// the text and the text offset of one occurrence (kAbsent when length is 0).
struct MatchingStatistics {
    std::vector<std::uint64_t> pos;
    std::vector<std::uint64_t> len;

    std::size_t m() const { return len.size(); }
    bool operator==(const MatchingStatistics&) const = default;
};

/// Maximal exact match P[start, start + len) occurring at text_pos.
struct Mem {
    std::uint64_t start = 0;
    std::uint64_t len = 0;
    std::uint64_t text_pos = 0;

    bool operator==(const Mem&) const = default;
};

using MemList = std::vector<Mem>;

struct QueryStats {
    std::uint64_t lf_steps = 0;
    std::uint64_t lcp_queries = 0;
    std::uint64_t equality_checks = 0;
    std::uint64_t extra_paced_queries = 0;
    std::uint64_t mismatch_events = 0;
    std::uint64_t shortcut_hits = 0;
    bool verified = false;
    bool fallback_used = false;
    std::uint64_t max_len_latency = 0;
};

enum class StepMode { eager, eager_aug, positions_only };
enum class StepEvent { init, match, mismatch, absent };

/// Right-to-left matching state: BWT row q of the suffix at pos, and its length.
struct MatchState {
    std::uint64_t q = 0;
    std::uint64_t pos = kAbsent;
    std::uint64_t len = 0;
};

/// Read-only inputs of one pattern query.
struct PatternQuery {
    PatternQuery(std::span<const Symbol> p, const RlbwtIndex& idx, const Grammar& gr)
        : pattern(p), index(idx), grammar(gr), hashes(p, gr.hash_config().base) {}

    std::span<const Symbol> pattern;
    const RlbwtIndex& index;
    const Grammar& grammar;
    PatternHashes hashes;
};

/// Extends the matching state from P[i + 1..] to P[i..].
StepEvent ms_step(MatchState& state, std::size_t i, const PatternQuery& query, StepMode mode,
                  QueryStats& stats);

struct EagerResult {
    MatchingStatistics ms;
    QueryStats stats;
};

/// One LCP query per mismatch; with `augmented`, stored threshold LCE values
/// skip queries whose outcome they already determine.
EagerResult ms_eager(std::span<const Symbol> pattern, const RlbwtIndex& index,
                     const Grammar& grammar, bool augmented = false);

struct LazyResult {
    MatchingStatistics ms;
    std::vector<std::uint64_t> unverified_len;  // lengths before verification
    MemList mems;
    QueryStats stats;
};

/// Positions pass with deferred lengths: MEM ends are delimited by
/// exponentially spaced substring-equality checks, and a pending check is
/// forced whenever the oldest unresolved position is ceil(log2 n) characters old.
LazyResult ms_lazy(std::span<const Symbol> pattern, const RlbwtIndex& index,
                   const Grammar& grammar, bool verify = true);

MemList mems_from_ms(const MatchingStatistics& ms);

/// Character-compares, for each MEM left to right, the part not covered by
/// earlier MEMs. Detects over-long MEMs only.
bool verify_mems(std::span<const Symbol> pattern, const MemList& mems, const Grammar& grammar);

/// Exact lengths by direct comparison at known positions.
MatchingStatistics ms_naive_fallback(std::span<const Symbol> pattern,
                                     std::span<const std::uint64_t> positions,
                                     const Grammar& grammar);

struct MemResult {
    MemList mems;
    QueryStats stats;
};

/// All MEMs of length >= min_len, skipping LCP queries that cannot reach it.
MemResult long_mems(std::span<const Symbol> pattern, const RlbwtIndex& index,
                    const Grammar& grammar, std::uint64_t min_len);

/// All longest common substrings (maximum-length MEMs).
MemResult lcs(std::span<const Symbol> pattern, const RlbwtIndex& index, const Grammar& grammar);

/// ceil(log2 n), at least 1.
std::uint64_t pacing_interval(std::uint64_t n);

}  // namespace lzmem
