#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lzmem/corpus.hpp"

namespace lzmem {

/// Suffix array, BWT and LCP array of a sentinel-terminated text.
struct SuffixStructures {
    std::vector<std::uint64_t> sa;
    std::vector<Symbol> bwt;
    std::vector<std::uint64_t> lcp;  // lcp[0] = 0

    std::uint64_t n() const { return sa.size(); }
};

/// Exact construction by cyclic prefix doubling; LCP by left extension.
/// The text must end with a unique smallest symbol.
SuffixStructures build_suffix_structures(std::span<const Symbol> text);

struct Run {
    std::uint64_t start = 0;
    std::uint64_t end = 0;  // inclusive
    Symbol symbol = 0;

    std::uint64_t length() const { return end - start + 1; }
    bool operator==(const Run&) const = default;
};

struct RunSegmentation {
    std::vector<Run> runs;

    std::size_t r() const { return runs.size(); }
};

RunSegmentation segment_runs(std::span<const Symbol> bwt);

/// Split point between two consecutive runs of `symbol`: the run ending at
/// `prev_end` and the one starting at `next_start`.
struct Threshold {
    Symbol symbol = 0;
    std::uint64_t prev_end = 0;
    std::uint64_t next_start = 0;
    std::uint64_t t = 0;
    // LCE(SA[t-1], SA[prev_end]) and LCE(SA[t], SA[next_start]); zero unless augmented.
    std::uint64_t lce_before = 0;
    std::uint64_t lce_after = 0;

    bool operator==(const Threshold&) const = default;
};

/// One entry per consecutive same-symbol run pair, ordered by symbol then position.
struct ThresholdTable {
    bool augmented = false;
    std::vector<Threshold> entries;

    bool operator==(const ThresholdTable&) const = default;
};

/// t is the leftmost minimum of lcp[prev_end + 1 .. next_start].
ThresholdTable compute_thresholds(const SuffixStructures& s, const RunSegmentation& runs,
                                  bool augment);

struct RetainedSample {
    std::uint64_t offset = 0;  // BWT offset of a run boundary
    std::uint64_t value = 0;   // (SA[offset] - 1) mod n

    bool operator==(const RetainedSample&) const = default;
};

/// Run-boundary SA samples kept at subsample rate `rate`, sorted by offset.
struct SamplePlan {
    std::uint64_t rate = 1;
    std::vector<RetainedSample> retained;

    bool operator==(const SamplePlan&) const = default;
};

/// Greedy over boundary sample values in ascending order: a value is kept
/// unless a kept value lies in [v - rate + 1, v]. Throws UsageError on rate 0.
SamplePlan make_sample_plan(const SuffixStructures& s, const RunSegmentation& runs,
                            std::uint64_t rate);

/// Sorted, de-duplicated run start and end offsets.
std::vector<std::uint64_t> boundary_offsets(const RunSegmentation& runs);

}  // namespace lzmem
