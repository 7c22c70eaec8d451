#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lzmem/corpus.hpp"
#include "lzmem/karp_rabin.hpp"

namespace lzmem {

/// A grammar rule: a terminal symbol or the concatenation of two earlier rules.
struct Rule {
    static constexpr std::uint32_t kTerminal = UINT32_MAX;

    std::uint32_t left = 0;  // symbol for terminals
    std::uint32_t right = kTerminal;
    std::uint64_t length = 0;
    std::uint64_t hash = 0;
    std::uint64_t base_pow = 0;  // base^length

    bool terminal() const { return right == kTerminal; }
    Symbol symbol() const { return static_cast<Symbol>(left); }
};

/// Height-balanced straight-line program over a text with length and
/// Karp-Rabin annotations per rule. Children always precede parents.
class Grammar {
  public:
    Grammar() = default;

    /// Pairing rounds with hash-consing until a single rule remains.
    static Grammar build(std::span<const Symbol> text, const HashConfig& config);

    /// Assembles a grammar from stored rules; hashes and lengths are checked
    /// against the children.
    Grammar(std::vector<Rule> rules, std::uint32_t root, const HashConfig& config);

    std::size_t g() const { return rules_.size(); }
    std::uint64_t length() const { return rules_.empty() ? 0 : rules_[root_].length; }
    std::uint32_t root() const { return root_; }
    const HashConfig& hash_config() const { return config_; }
    const std::vector<Rule>& rules() const { return rules_; }

    /// Longest root-to-terminal path, counting the terminal level as 1.
    std::size_t height() const;

    std::vector<Symbol> extract(std::uint64_t offset, std::uint64_t len) const;
    Symbol at(std::uint64_t offset) const;

    /// Hash of text[0, x).
    std::uint64_t prefix_hash(std::uint64_t x) const;
    /// Hash of text[offset, offset + len).
    std::uint64_t substring_hash(std::uint64_t offset, std::uint64_t len) const;

    /// Hash comparison of pattern[p_off, p_off + len) and text[t_off, t_off + len).
    /// Never false for equal strings.
    bool substring_equal(const PatternHashes& ph, std::uint64_t p_off, std::uint64_t t_off,
                         std::uint64_t len) const;

    /// Largest l <= min(p_limit, n - t_off) whose substring_equal holds, by
    /// exponential then binary search. `probes` counts substring_equal calls.
    std::uint64_t lcp_pattern_text(const PatternHashes& ph, std::uint64_t p_off,
                                   std::uint64_t p_limit, std::uint64_t t_off,
                                   std::uint64_t* probes = nullptr) const;

    /// Exact min(LCE(x, y), cap) by synchronized traversal, skipping shared rules.
    std::uint64_t lce_heuristic(std::uint64_t x, std::uint64_t y, std::uint64_t cap) const;

    /// LCE(x, y) by exponential search over substring hashes.
    std::uint64_t lce_hash(std::uint64_t x, std::uint64_t y) const;

    /// Same rules with every hash recomputed under a different base.
    Grammar rehashed(const HashConfig& config) const;

    bool operator==(const Grammar& o) const;

  private:
    void check_range(std::uint64_t offset, std::uint64_t len) const;
    void annotate(Rule& rule) const;

    std::vector<Rule> rules_;
    std::uint32_t root_ = 0;
    HashConfig config_;
};

}  // namespace lzmem
