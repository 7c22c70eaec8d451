#include "lzmem/suffix_build.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "lzmem/error.hpp"

namespace lzmem {

namespace {

std::vector<std::uint64_t> suffix_array(std::span<const Symbol> text) {
    const std::size_t n = text.size();
    std::vector<std::uint64_t> sa(n), tmp(n), cls(n), next_cls(n);
    std::size_t classes = 256;
    std::vector<std::uint64_t> count(std::max<std::size_t>(n, classes) + 1);

    for (std::size_t i = 0; i < n; ++i) ++count[text[i]];
    for (std::size_t c = 1; c < classes; ++c) count[c] += count[c - 1];
    for (std::size_t i = n; i-- > 0;) sa[--count[text[i]]] = i;
    cls[sa[0]] = 0;
    classes = 1;
    for (std::size_t i = 1; i < n; ++i) {
        if (text[sa[i]] != text[sa[i - 1]]) ++classes;
        cls[sa[i]] = classes - 1;
    }

    // Rotations sorted by their first 2^k symbols; with a unique smallest
    // terminal symbol this equals suffix order once classes are distinct.
    for (std::size_t h = 1; classes < n; h <<= 1) {
        for (std::size_t i = 0; i < n; ++i) tmp[i] = (sa[i] + n - (h % n)) % n;
        std::fill(count.begin(), count.begin() + classes + 1, 0);
        for (std::size_t i = 0; i < n; ++i) ++count[cls[tmp[i]]];
        for (std::size_t c = 1; c < classes; ++c) count[c] += count[c - 1];
        for (std::size_t i = n; i-- > 0;) sa[--count[cls[tmp[i]]]] = tmp[i];

        next_cls[sa[0]] = 0;
        std::size_t k = 1;
        for (std::size_t i = 1; i < n; ++i) {
            auto a = sa[i], b = sa[i - 1];
            if (cls[a] != cls[b] || cls[(a + h) % n] != cls[(b + h) % n]) ++k;
            next_cls[a] = k - 1;
        }
        cls.swap(next_cls);
        classes = k;
    }
    return sa;
}

std::vector<std::uint64_t> lcp_array(std::span<const Symbol> text,
                                     const std::vector<std::uint64_t>& sa) {
    const std::size_t n = sa.size();
    std::vector<std::uint64_t> inv(n), lcp(n, 0);
    for (std::size_t i = 0; i < n; ++i) inv[sa[i]] = i;
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (inv[i] == 0) {
            k = 0;
            continue;
        }
        std::uint64_t j = sa[inv[i] - 1];
        while (i + k < n && j + k < n && text[i + k] == text[j + k]) ++k;
        lcp[inv[i]] = k;
        if (k > 0) --k;
    }
    return lcp;
}

// Leftmost-minimum range queries over the LCP array.
class MinTree {
  public:
    explicit MinTree(const std::vector<std::uint64_t>& values) : values_(values) {
        size_ = 1;
        while (size_ < values.size()) size_ <<= 1;
        tree_.assign(2 * size_, kNone);
        for (std::size_t i = 0; i < values.size(); ++i) tree_[size_ + i] = i;
        for (std::size_t i = size_; i-- > 1;) tree_[i] = better(tree_[2 * i], tree_[2 * i + 1]);
    }

    /// Index of the leftmost minimum in [lo, hi].
    std::size_t argmin(std::size_t lo, std::size_t hi) const {
        std::size_t left = kNone, right = kNone;
        for (std::size_t a = lo + size_, b = hi + size_ + 1; a < b; a >>= 1, b >>= 1) {
            if (a & 1) left = better(left, tree_[a++]);
            if (b & 1) right = better(tree_[--b], right);
        }
        return better(left, right);
    }

    std::uint64_t min(std::size_t lo, std::size_t hi) const { return values_[argmin(lo, hi)]; }

  private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    std::size_t better(std::size_t a, std::size_t b) const {
        if (a == kNone) return b;
        if (b == kNone) return a;
        if (values_[b] < values_[a]) return b;
        if (values_[a] < values_[b]) return a;
        return std::min(a, b);
    }

    const std::vector<std::uint64_t>& values_;
    std::size_t size_ = 1;
    std::vector<std::size_t> tree_;
};

}  // namespace

SuffixStructures build_suffix_structures(std::span<const Symbol> text) {
    if (text.empty()) throw UsageError("empty text");
    SuffixStructures s;
    s.sa = suffix_array(text);
    const std::size_t n = text.size();
    s.bwt.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.bwt[i] = text[(s.sa[i] + n - 1) % n];
    s.lcp = lcp_array(text, s.sa);
    return s;
}

RunSegmentation segment_runs(std::span<const Symbol> bwt) {
    RunSegmentation seg;
    for (std::size_t i = 0; i < bwt.size(); ++i) {
        if (i == 0 || bwt[i] != bwt[i - 1]) {
            seg.runs.push_back({i, i, bwt[i]});
        } else {
            seg.runs.back().end = i;
        }
    }
    return seg;
}

ThresholdTable compute_thresholds(const SuffixStructures& s, const RunSegmentation& runs,
                                  bool augment) {
    ThresholdTable table;
    table.augmented = augment;
    const std::uint64_t n = s.n();
    MinTree rmq(s.lcp);

    std::vector<std::vector<std::size_t>> by_symbol(256);
    for (std::size_t k = 0; k < runs.r(); ++k) by_symbol[runs.runs[k].symbol].push_back(k);

    for (const auto& list : by_symbol) {
        for (std::size_t j = 1; j < list.size(); ++j) {
            const Run& prev = runs.runs[list[j - 1]];
            const Run& next = runs.runs[list[j]];
            Threshold th;
            th.symbol = prev.symbol;
            th.prev_end = prev.end;
            th.next_start = next.start;
            th.t = rmq.argmin(prev.end + 1, next.start);
            if (augment) {
                th.lce_before = th.t - 1 == prev.end ? n - s.sa[prev.end]
                                                      : rmq.min(prev.end + 1, th.t - 1);
                th.lce_after = th.t == next.start ? n - s.sa[next.start]
                                                  : rmq.min(th.t + 1, next.start);
            }
            table.entries.push_back(th);
        }
    }
    return table;
}

std::vector<std::uint64_t> boundary_offsets(const RunSegmentation& runs) {
    std::vector<std::uint64_t> out;
    out.reserve(2 * runs.r());
    for (const Run& run : runs.runs) {
        out.push_back(run.start);
        if (run.end != run.start) out.push_back(run.end);
    }
    return out;
}

SamplePlan make_sample_plan(const SuffixStructures& s, const RunSegmentation& runs,
                            std::uint64_t rate) {
    if (rate == 0) throw UsageError("invalid subsample rate");
    const std::uint64_t n = s.n();
    auto offsets = boundary_offsets(runs);

    std::vector<RetainedSample> candidates;
    candidates.reserve(offsets.size());
    for (auto off : offsets) candidates.push_back({off, (s.sa[off] + n - 1) % n});
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return a.value < b.value; });

    SamplePlan plan;
    plan.rate = rate;
    bool any = false;
    std::uint64_t last = 0;
    for (const auto& c : candidates) {
        if (!any || last + rate <= c.value) {
            plan.retained.push_back(c);
            last = c.value;
            any = true;
        }
    }
    std::sort(plan.retained.begin(), plan.retained.end(),
              [](const auto& a, const auto& b) { return a.offset < b.offset; });
    return plan;
}

}  // namespace lzmem
