#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "lzmem/corpus.hpp"
#include "lzmem/ms_engine.hpp"

// Brute-force reference implementations. Test and tooling use only.
namespace lzmem::oracle {

/// Suffix array by comparison sort of all suffixes.
std::vector<std::uint64_t> naive_sa(std::span<const Symbol> text);

std::uint64_t naive_lcp(std::span<const Symbol> a, std::span<const Symbol> b);
std::uint64_t naive_lce(std::span<const Symbol> text, std::uint64_t x, std::uint64_t y);

/// Matching statistics by scanning every text offset; pos is the leftmost
/// offset attaining the maximum.
MatchingStatistics naive_ms(std::span<const Symbol> pattern, std::span<const Symbol> text);

MemList naive_mems(std::span<const Symbol> pattern, std::span<const Symbol> text);
MemList naive_lcs(std::span<const Symbol> pattern, std::span<const Symbol> text);

/// Same result as naive_ms, faster on large texts: when P[i, i + k) occurs,
/// only its occurrences are compared; otherwise the length is below k and a
/// left-to-right scan stops at the first offset reaching len[i + 1] + 1.
class KmerOracle {
  public:
    explicit KmerOracle(std::span<const Symbol> text, std::size_t k = 12);

    MatchingStatistics ms(std::span<const Symbol> pattern) const;
    MemList mems(std::span<const Symbol> pattern) const;

  private:
    std::uint64_t key(const Symbol* s) const;

    std::span<const Symbol> text_;
    std::size_t k_;
    Symbol max_symbol_ = 0;
    unsigned bits_ = 1;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> occurrences_;
};

/// True when pos/len satisfy the matching-statistics predicate against text:
/// the occurrence matches and the next pattern symbol cannot extend it anywhere.
bool occurrence_ok(std::span<const Symbol> pattern, std::span<const Symbol> text,
                   const MatchingStatistics& ms, const MatchingStatistics& truth);

/// MEM predicate applied to a length sequence, positions copied through.
MemList mems_of(const MatchingStatistics& ms);

}  // namespace lzmem::oracle
