#include "lzmem/rlbwt.hpp"

#include <algorithm>
#include <string>

#include "lzmem/error.hpp"

namespace lzmem {

RlbwtIndex::RlbwtIndex(std::uint64_t n, std::size_t sigma, std::vector<Run> runs,
                       ThresholdTable thresholds, SamplePlan samples)
    : n_(n),
      sigma_(sigma),
      runs_(std::move(runs)),
      thresholds_(std::move(thresholds)),
      samples_(std::move(samples)) {
    if (runs_.empty() || runs_.front().start != 0 || runs_.back().end + 1 != n_) {
        throw FormatError("runs do not cover the BWT");
    }
    if (runs_.size() > UINT32_MAX) throw FormatError("too many runs");
    run_starts_.reserve(runs_.size());
    rank_before_.reserve(runs_.size());
    std::array<std::uint64_t, 256> seen{};
    for (std::size_t k = 0; k < runs_.size(); ++k) {
        const Run& run = runs_[k];
        if (k > 0 && (run.start != runs_[k - 1].end + 1 || run.symbol == runs_[k - 1].symbol)) {
            throw FormatError("runs are not a maximal partition");
        }
        if (run.end < run.start) throw FormatError("malformed run");
        run_starts_.push_back(run.start);
        rank_before_.push_back(seen[run.symbol]);
        seen[run.symbol] += run.length();
        runs_of_[run.symbol].push_back(static_cast<std::uint32_t>(k));
    }
    c_[0] = 0;
    for (std::size_t c = 0; c < 256; ++c) c_[c + 1] = c_[c] + seen[c];

    std::size_t expected = 0;
    for (std::size_t c = 0; c < 256; ++c) {
        threshold_begin_[c] = expected;
        if (!runs_of_[c].empty()) expected += runs_of_[c].size() - 1;
    }
    if (thresholds_.entries.size() != expected) throw FormatError("threshold count mismatch");
    for (std::size_t c = 0; c < 256; ++c) {
        for (std::size_t k = 1; k < runs_of_[c].size(); ++k) {
            auto& th = thresholds_.entries[threshold_begin_[c] + k - 1];
            th.symbol = static_cast<Symbol>(c);
            th.prev_end = runs_[runs_of_[c][k - 1]].end;
            th.next_start = runs_[runs_of_[c][k]].start;
            if (th.t <= th.prev_end || th.t > th.next_start) {
                throw FormatError("threshold outside its run gap");
            }
        }
    }

    if (samples_.rate == 0) throw FormatError("invalid subsample rate");
    sample_offsets_.reserve(samples_.retained.size());
    for (const auto& rs : samples_.retained) {
        if (!sample_offsets_.empty() && rs.offset <= sample_offsets_.back()) {
            throw FormatError("sample offsets not sorted");
        }
        if (rs.offset >= n_ || rs.value >= n_) throw FormatError("sample out of range");
        sample_offsets_.push_back(rs.offset);
    }
}

RlbwtIndex RlbwtIndex::build(const SuffixStructures& s, std::size_t sigma, bool augment,
                             std::uint64_t subsample) {
    auto seg = segment_runs(s.bwt);
    auto thresholds = compute_thresholds(s, seg, augment);
    auto samples = make_sample_plan(s, seg, subsample);
    return RlbwtIndex(s.n(), sigma, std::move(seg.runs), std::move(thresholds),
                      std::move(samples));
}

void RlbwtIndex::check_offset(std::uint64_t q) const {
    if (q >= n_) throw InvariantError("BWT offset " + std::to_string(q) + " out of range");
}

std::size_t RlbwtIndex::run_of(std::uint64_t q) const {
    check_offset(q);
    auto it = std::upper_bound(run_starts_.begin(), run_starts_.end(), q);
    return static_cast<std::size_t>(it - run_starts_.begin()) - 1;
}

Symbol RlbwtIndex::symbol_at(std::uint64_t q) const { return runs_[run_of(q)].symbol; }

std::uint64_t RlbwtIndex::lf_step(std::uint64_t q) const {
    std::size_t k = run_of(q);
    const Run& run = runs_[k];
    return c_[run.symbol] + rank_before_[k] + (q - run.start);
}

std::uint64_t RlbwtIndex::first_run_start(Symbol c) const {
    if (runs_of_[c].empty()) throw InvariantError("symbol absent from text");
    return runs_[runs_of_[c].front()].start;
}

NeighborRuns RlbwtIndex::neighbor_runs(std::uint64_t q, Symbol c) const {
    NeighborRuns nb;
    const auto& list = runs_of_[c];
    std::size_t k = run_of(q);
    auto it = std::lower_bound(list.begin(), list.end(), static_cast<std::uint32_t>(k));
    nb.next_index = static_cast<std::size_t>(it - list.begin());
    if (it != list.end()) nb.next_start = runs_[*it].start;
    if (it != list.begin()) nb.prev_end = runs_[*(it - 1)].end;
    return nb;
}

const Threshold& RlbwtIndex::threshold(Symbol c, std::size_t k) const {
    if (k == 0 || k >= runs_of_[c].size()) throw InvariantError("no threshold for run pair");
    return thresholds_.entries[threshold_begin_[c] + k - 1];
}

std::uint64_t RlbwtIndex::pick_side(std::uint64_t q, Symbol c, const NeighborRuns& nb) const {
    if (nb.prev_end && nb.next_start) {
        return q < threshold(c, nb.next_index).t ? *nb.prev_end : *nb.next_start;
    }
    if (nb.prev_end) return *nb.prev_end;
    if (nb.next_start) return *nb.next_start;
    throw InvariantError("symbol absent");
}

SaLookup RlbwtIndex::sa_at(std::uint64_t boundary) const {
    check_offset(boundary);
    SaLookup out;
    std::uint64_t q = boundary;
    for (;;) {
        auto it = std::lower_bound(sample_offsets_.begin(), sample_offsets_.end(), q);
        if (it != sample_offsets_.end() && *it == q) {
            auto value = samples_.retained[static_cast<std::size_t>(it - sample_offsets_.begin())].value;
            out.value = (value + 1 + out.lf_steps) % n_;
            return out;
        }
        if (out.lf_steps + 1 >= samples_.rate) {
            throw InvariantError("SA sample walk exceeded subsample rate at offset " +
                                 std::to_string(boundary));
        }
        q = lf_step(q);
        ++out.lf_steps;
    }
}

}  // namespace lzmem
