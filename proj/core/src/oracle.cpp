#include "lzmem/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "lzmem/error.hpp"

namespace lzmem::oracle {

std::vector<std::uint64_t> naive_sa(std::span<const Symbol> text) {
    std::vector<std::uint64_t> sa(text.size());
    std::iota(sa.begin(), sa.end(), 0);
    std::sort(sa.begin(), sa.end(), [&](std::uint64_t a, std::uint64_t b) {
        return std::lexicographical_compare(text.begin() + static_cast<std::ptrdiff_t>(a), text.end(),
                                            text.begin() + static_cast<std::ptrdiff_t>(b), text.end());
    });
    return sa;
}

std::uint64_t naive_lcp(std::span<const Symbol> a, std::span<const Symbol> b) {
    std::uint64_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k;
}

std::uint64_t naive_lce(std::span<const Symbol> text, std::uint64_t x, std::uint64_t y) {
    return naive_lcp(text.subspan(x), text.subspan(y));
}

MatchingStatistics naive_ms(std::span<const Symbol> pattern, std::span<const Symbol> text) {
    MatchingStatistics ms;
    ms.pos.assign(pattern.size(), kAbsent);
    ms.len.assign(pattern.size(), 0);
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        auto suffix = pattern.subspan(i);
        for (std::uint64_t t = 0; t < text.size(); ++t) {
            std::uint64_t l = naive_lcp(suffix, text.subspan(t));
            if (l > ms.len[i]) {
                ms.len[i] = l;
                ms.pos[i] = t;
            }
        }
    }
    return ms;
}

MemList mems_of(const MatchingStatistics& ms) {
    MemList mems;
    for (std::size_t i = 0; i < ms.m(); ++i) {
        if (ms.len[i] > 0 && (i == 0 || ms.len[i - 1] <= ms.len[i])) {
            mems.push_back({i, ms.len[i], ms.pos[i]});
        }
    }
    return mems;
}

MemList naive_mems(std::span<const Symbol> pattern, std::span<const Symbol> text) {
    return mems_of(naive_ms(pattern, text));
}

MemList naive_lcs(std::span<const Symbol> pattern, std::span<const Symbol> text) {
    MemList mems = naive_mems(pattern, text);
    std::uint64_t best = 0;
    for (const Mem& m : mems) best = std::max(best, m.len);
    MemList out;
    for (const Mem& m : mems) {
        if (m.len == best) out.push_back(m);
    }
    return out;
}

KmerOracle::KmerOracle(std::span<const Symbol> text, std::size_t k) : text_(text), k_(k) {
    if (k_ == 0) throw UsageError("k-mer length must be positive");
    if (text.size() > UINT32_MAX) throw UsageError("text too large for k-mer oracle");
    for (Symbol c : text) max_symbol_ = std::max(max_symbol_, c);
    while ((1u << bits_) <= max_symbol_) ++bits_;
    k_ = std::min<std::size_t>(k_, 64 / bits_);
    for (std::size_t t = 0; t + k_ <= text.size(); ++t) {
        occurrences_[key(text.data() + t)].push_back(static_cast<std::uint32_t>(t));
    }
}

std::uint64_t KmerOracle::key(const Symbol* s) const {
    std::uint64_t h = 0;
    for (std::size_t j = 0; j < k_; ++j) h = (h << bits_) | s[j];
    return h;
}

MatchingStatistics KmerOracle::ms(std::span<const Symbol> pattern) const {
    const std::size_t m = pattern.size();
    MatchingStatistics ms;
    ms.pos.assign(m, kAbsent);
    ms.len.assign(m, 0);
    for (std::size_t i = m; i-- > 0;) {
        auto suffix = pattern.subspan(i);
        auto consider = [&](std::uint64_t t) {
            std::uint64_t l = naive_lcp(suffix, text_.subspan(t));
            if (l > ms.len[i] || (l == ms.len[i] && l > 0 && t < ms.pos[i])) {
                ms.len[i] = l;
                ms.pos[i] = t;
            }
        };
        bool known = i + k_ <= m;
        for (std::size_t j = 0; known && j < k_; ++j) known = pattern[i + j] <= max_symbol_;
        auto it = known ? occurrences_.find(key(pattern.data() + i)) : occurrences_.end();
        if (it != occurrences_.end()) {
            // Any occurrence of length >= k starts with this k-mer.
            for (std::uint32_t t : it->second) consider(t);
            continue;
        }
        // Shorter than k here; len[i] <= len[i + 1] + 1 bounds the scan, and
        // the first offset reaching the bound is also the leftmost.
        const std::uint64_t bound = std::min<std::uint64_t>(
            {k_ - 1, m - i, i + 1 < m ? ms.len[i + 1] + 1 : 1});
        for (std::uint64_t t = 0; t < text_.size() && ms.len[i] < bound; ++t) {
            if (text_[t] == pattern[i]) consider(t);
        }
    }
    return ms;
}

MemList KmerOracle::mems(std::span<const Symbol> pattern) const { return mems_of(ms(pattern)); }

bool occurrence_ok(std::span<const Symbol> pattern, std::span<const Symbol> text,
                   const MatchingStatistics& ms, const MatchingStatistics& truth) {
    if (ms.m() != pattern.size() || truth.m() != pattern.size()) return false;
    for (std::size_t i = 0; i < ms.m(); ++i) {
        if (ms.len[i] != truth.len[i]) return false;
        if (ms.len[i] == 0) {
            if (ms.pos[i] != kAbsent) return false;
            continue;
        }
        if (ms.pos[i] >= text.size() || ms.pos[i] + ms.len[i] > text.size()) return false;
        if (!std::equal(pattern.begin() + static_cast<std::ptrdiff_t>(i),
                        pattern.begin() + static_cast<std::ptrdiff_t>(i + ms.len[i]),
                        text.begin() + static_cast<std::ptrdiff_t>(ms.pos[i]))) {
            return false;
        }
    }
    return true;
}

}  // namespace lzmem::oracle
