#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "lzmem/corpus.hpp"
#include "lzmem/suffix_build.hpp"

namespace lzmem {

/// Nearest runs of a symbol around a BWT offset.
struct NeighborRuns {
    std::optional<std::uint64_t> prev_end;    // end of the closest earlier run
    std::optional<std::uint64_t> next_start;  // start of the closest later run
    std::size_t next_index = 0;               // index of the later run among the symbol's runs

    bool both_absent() const { return !prev_end && !next_start; }
};

struct SaLookup {
    std::uint64_t value = 0;
    std::uint64_t lf_steps = 0;
};

/// Run-length BWT with thresholds and run-boundary SA samples.
/// Immutable once constructed; all queries are const.
class RlbwtIndex {
  public:
    RlbwtIndex() = default;

    /// Assembles the index from its stored parts; derived tables are rebuilt.
    RlbwtIndex(std::uint64_t n, std::size_t sigma, std::vector<Run> runs,
               ThresholdTable thresholds, SamplePlan samples);

    static RlbwtIndex build(const SuffixStructures& s, std::size_t sigma, bool augment,
                            std::uint64_t subsample);

    std::uint64_t n() const { return n_; }
    std::size_t r() const { return runs_.size(); }
    std::size_t sigma() const { return sigma_; }
    std::uint64_t subsample_rate() const { return samples_.rate; }
    bool augmented() const { return thresholds_.augmented; }

    const std::vector<Run>& runs() const { return runs_; }
    const ThresholdTable& thresholds() const { return thresholds_; }
    const SamplePlan& samples() const { return samples_; }

    /// Count of text symbols smaller than c.
    std::uint64_t C(Symbol c) const { return c_[c]; }
    bool occurs(Symbol c) const { return !runs_of_[c].empty(); }

    std::size_t run_of(std::uint64_t q) const;
    Symbol symbol_at(std::uint64_t q) const;
    std::uint64_t lf_step(std::uint64_t q) const;

    /// Start offset of the first run of c. Requires occurs(c).
    std::uint64_t first_run_start(Symbol c) const;

    NeighborRuns neighbor_runs(std::uint64_t q, Symbol c) const;

    /// Threshold between the (k-1)-th and k-th runs of c, k >= 1.
    const Threshold& threshold(Symbol c, std::size_t k) const;

    /// Chooses the run boundary whose suffix shares the longer prefix with SA[q].
    std::uint64_t pick_side(std::uint64_t q, Symbol c, const NeighborRuns& nb) const;

    /// SA value at a run boundary, walking LF until a retained sample is hit.
    SaLookup sa_at(std::uint64_t boundary) const;

    bool operator==(const RlbwtIndex& o) const {
        return n_ == o.n_ && sigma_ == o.sigma_ && runs_ == o.runs_ &&
               thresholds_ == o.thresholds_ && samples_ == o.samples_;
    }

  private:
    void check_offset(std::uint64_t q) const;

    std::uint64_t n_ = 0;
    std::size_t sigma_ = 0;
    std::vector<Run> runs_;
    ThresholdTable thresholds_;
    SamplePlan samples_;

    std::vector<std::uint64_t> run_starts_;
    std::vector<std::uint64_t> rank_before_;  // same-symbol count before each run
    std::array<std::uint64_t, 257> c_{};
    std::array<std::vector<std::uint32_t>, 256> runs_of_;
    std::array<std::size_t, 256> threshold_begin_{};
    std::vector<std::uint64_t> sample_offsets_;
};

}  // namespace lzmem
