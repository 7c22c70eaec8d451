#include "lzmem/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "lzmem/error.hpp"

namespace lzmem {

Alphabet::Alphabet() = default;

Alphabet Alphabet::from_bytes(std::string_view bytes) {
    std::array<bool, 256> seen{};
    for (char ch : bytes) seen[static_cast<std::uint8_t>(ch)] = true;
    std::vector<std::uint8_t> table;
    for (int b = 0; b < 256; ++b) {
        if (seen[b]) table.push_back(static_cast<std::uint8_t>(b));
    }
    return from_table(table);
}

Alphabet Alphabet::from_table(std::span<const std::uint8_t> rank_to_byte) {
    if (rank_to_byte.size() > kMaxSigma) {
        throw FormatError("alphabet too large: " + std::to_string(rank_to_byte.size()) +
                          " distinct bytes (max " + std::to_string(kMaxSigma) + ")");
    }
    Alphabet a;
    a.rank_to_byte_.assign(rank_to_byte.begin(), rank_to_byte.end());
    for (std::size_t k = 0; k < rank_to_byte.size(); ++k) {
        auto b = rank_to_byte[k];
        if (a.byte_to_rank_[b] != 0) throw FormatError("duplicate byte in alphabet table");
        a.byte_to_rank_[b] = static_cast<Symbol>(k + 1);
    }
    return a;
}

Symbol Alphabet::rank_of(std::uint8_t byte) const {
    Symbol r = byte_to_rank_[byte];
    return r == 0 ? kUnknownSymbol : r;
}

std::uint8_t Alphabet::byte_of(Symbol rank) const {
    if (rank == kSentinel) return '$';
    if (rank > sigma()) throw InvariantError("rank outside alphabet");
    return rank_to_byte_[rank - 1];
}

std::vector<Symbol> Alphabet::encode(std::string_view bytes) const {
    std::vector<Symbol> out;
    out.reserve(bytes.size());
    for (char ch : bytes) out.push_back(rank_of(static_cast<std::uint8_t>(ch)));
    return out;
}

std::string Alphabet::decode(std::span<const Symbol> symbols) const {
    std::string out;
    out.reserve(symbols.size());
    for (Symbol s : symbols) out.push_back(static_cast<char>(byte_of(s)));
    return out;
}

TextRecord load_raw(std::string_view bytes, std::string name) {
    if (bytes.empty()) throw FormatError("empty text");
    TextRecord text;
    text.name = std::move(name);
    text.alphabet = Alphabet::from_bytes(bytes);
    text.symbols = text.alphabet.encode(bytes);
    text.symbols.push_back(kSentinel);
    text.records.push_back({text.name, 0, bytes.size()});
    return text;
}

std::vector<FastaRecord> parse_fasta(std::string_view bytes) {
    std::vector<FastaRecord> records;
    std::size_t at = 0;
    bool seen_header = false;
    while (at < bytes.size()) {
        std::size_t eol = bytes.find('\n', at);
        if (eol == std::string_view::npos) eol = bytes.size();
        std::string_view line = bytes.substr(at, eol - at);
        at = eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line.front() == '>') {
            seen_header = true;
            std::string_view header = line.substr(1);
            auto ws = header.find_first_of(" \t");
            records.push_back({std::string(header.substr(0, ws)), {}});
            continue;
        }
        if (!seen_header) throw FormatError("not FASTA");
        auto& seq = records.back().sequence;
        for (char ch : line) {
            seq.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
        }
    }
    return records;
}

TextRecord load_fasta(std::string_view bytes) {
    auto records = parse_fasta(bytes);
    std::string joined;
    TextRecord text;
    for (auto& rec : records) {
        text.records.push_back({rec.name, joined.size(), rec.sequence.size()});
        joined += rec.sequence;
    }
    if (joined.empty()) throw FormatError("empty text");
    text.name = records.front().name;
    text.alphabet = Alphabet::from_bytes(joined);
    text.symbols = text.alphabet.encode(joined);
    text.symbols.push_back(kSentinel);
    return text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw FormatError("read error on " + path);
    return std::move(buf).str();
}

}  // namespace lzmem
