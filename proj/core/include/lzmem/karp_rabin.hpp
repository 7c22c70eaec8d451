#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lzmem/corpus.hpp"

namespace lzmem::kr {

/// Mersenne prime 2^61 - 1.
inline constexpr std::uint64_t kModulus = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t reduce(unsigned __int128 x) {
    std::uint64_t lo = static_cast<std::uint64_t>(x & kModulus);
    std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
    std::uint64_t s = lo + hi;
    if (s >= kModulus) s -= kModulus;
    return s;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    return reduce(static_cast<unsigned __int128>(a) * b);
}

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    if (s >= kModulus) s -= kModulus;
    return s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) {
    return a >= b ? a - b : a + kModulus - b;
}

inline std::uint64_t pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = 1;
    while (exp > 0) {
        if (exp & 1) result = mul(result, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return result;
}

/// Hash of the concatenation XY given the hashes of X and Y and base^|Y|.
inline std::uint64_t concat(std::uint64_t hx, std::uint64_t hy, std::uint64_t pow_y) {
    return add(mul(hx, pow_y), hy);
}

/// Linear-scan polynomial hash: sum of s[k] * base^(len-1-k).
inline std::uint64_t hash_of(std::span<const Symbol> s, std::uint64_t base) {
    std::uint64_t h = 0;
    for (Symbol c : s) h = add(mul(h, base), c);
    return h;
}

}  // namespace lzmem::kr

namespace lzmem {

/// Hash function parameters persisted with an index. The base is drawn
/// uniformly from [2, modulus - 2] by a generator seeded with `seed`.
struct HashConfig {
    std::uint64_t seed = 0;
    std::uint64_t base = 0;

    static HashConfig from_seed(std::uint64_t seed);
    /// Explicit base, bypassing the seeded draw. Used to force collisions in tests.
    static HashConfig with_base(std::uint64_t base, std::uint64_t seed = 0);

    bool operator==(const HashConfig&) const = default;
};

/// Karp-Rabin hashes of every prefix of a pattern.
class PatternHashes {
  public:
    PatternHashes(std::span<const Symbol> pattern, std::uint64_t base);

    std::size_t size() const { return prefix_.size() - 1; }

    /// base^len for len <= size().
    std::uint64_t power(std::size_t len) const { return pow_[len]; }

    /// Hash of pattern[offset, offset + len).
    std::uint64_t hash(std::size_t offset, std::size_t len) const {
        return kr::sub(prefix_[offset + len], kr::mul(prefix_[offset], pow_[len]));
    }

  private:
    std::vector<std::uint64_t> prefix_;
    std::vector<std::uint64_t> pow_;
};

}  // namespace lzmem
