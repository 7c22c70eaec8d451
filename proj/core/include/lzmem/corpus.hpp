#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lzmem {

/// Dense alphabet rank. 0 is the sentinel; input bytes map to 1..sigma.
using Symbol = std::uint8_t;

inline constexpr Symbol kSentinel = 0;
/// Rank given to pattern bytes that never occur in the text.
inline constexpr Symbol kUnknownSymbol = 255;
inline constexpr std::size_t kMaxSigma = 254;

class Alphabet {
  public:
    Alphabet();

    /// Ranks the distinct bytes of `bytes` in ascending byte order.
    static Alphabet from_bytes(std::string_view bytes);
    /// Rebuilds from the rank -> byte table (entry k holds the byte of rank k + 1).
    static Alphabet from_table(std::span<const std::uint8_t> rank_to_byte);

    std::size_t sigma() const { return rank_to_byte_.size(); }
    bool contains(std::uint8_t byte) const { return byte_to_rank_[byte] != 0; }
    Symbol rank_of(std::uint8_t byte) const;
    std::uint8_t byte_of(Symbol rank) const;

    /// Maps bytes to ranks; bytes outside the alphabet become kUnknownSymbol.
    std::vector<Symbol> encode(std::string_view bytes) const;
    /// Inverse of encode for in-alphabet ranks. The sentinel decodes to '$'.
    std::string decode(std::span<const Symbol> symbols) const;

    const std::vector<std::uint8_t>& table() const { return rank_to_byte_; }

    bool operator==(const Alphabet&) const = default;

  private:
    std::array<Symbol, 256> byte_to_rank_{};
    std::vector<std::uint8_t> rank_to_byte_;
};

/// A named slice of the concatenated text.
struct RecordSpan {
    std::string name;
    std::uint64_t offset = 0;
    std::uint64_t length = 0;

    bool operator==(const RecordSpan&) const = default;
};

/// The indexed text: ranks with a single trailing sentinel.
struct TextRecord {
    std::string name;
    Alphabet alphabet;
    std::vector<Symbol> symbols;
    std::vector<RecordSpan> records;

    std::uint64_t n() const { return symbols.size(); }
};

struct FastaRecord {
    std::string name;
    std::string sequence;
};

/// Builds a TextRecord from raw bytes. Throws FormatError("empty text") on empty input.
TextRecord load_raw(std::string_view bytes, std::string name = "raw");

/// Splits FASTA text into records. Sequence lines are joined and upper-cased;
/// the name is the header up to the first whitespace.
std::vector<FastaRecord> parse_fasta(std::string_view bytes);

/// Concatenates all FASTA records into one TextRecord, keeping per-record offsets.
TextRecord load_fasta(std::string_view bytes);

std::string read_file(const std::string& path);

}  // namespace lzmem
