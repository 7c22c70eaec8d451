#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lzmem/corpus.hpp"
#include "lzmem/rlbwt.hpp"
#include "lzmem/slp.hpp"

namespace lzmem {

inline constexpr std::string_view kIndexMagic = "LZMEM";
inline constexpr std::uint64_t kIndexVersion = 1;

/// Everything a query needs: RLBWT with thresholds and samples, the grammar,
/// and the alphabet to encode patterns.
struct Index {
    Alphabet alphabet;
    std::vector<RecordSpan> records;
    RlbwtIndex rlbwt;
    Grammar grammar;

    std::uint64_t n() const { return rlbwt.n(); }
    std::uint64_t r() const { return rlbwt.r(); }
    std::uint64_t g() const { return grammar.g(); }

    bool operator==(const Index&) const = default;
};

struct BuildOptions {
    std::uint64_t subsample = 1;
    bool augment = false;
    std::uint64_t seed = 0;
};

Index build_index(const TextRecord& text, const BuildOptions& options);

/// Little-endian 64-bit integers, 8-bit symbols. See README for the layout.
std::string serialize_index(const Index& index);
Index deserialize_index(std::string_view bytes);

void save_index(const Index& index, const std::string& path);
Index load_index(const std::string& path);

}  // namespace lzmem
