#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "lzmem/index_file.hpp"
#include "lzmem/ms_engine.hpp"

namespace lzmem {

enum class QueryMode { ms, mems, long_mems, lcs };
enum class Engine { eager, eager_aug, lazy };

QueryMode parse_mode(std::string_view s);
Engine parse_engine(std::string_view s);
std::string_view to_string(QueryMode mode);
std::string_view to_string(Engine engine);

struct QueryOptions {
    QueryMode mode = QueryMode::ms;
    Engine engine = Engine::eager;
    std::optional<std::uint64_t> min_len;
    bool verify = true;
};

/// Rejects incompatible combinations (e.g. a minimum length outside long-mems mode).
void validate(const QueryOptions& options, const Index& index);

struct NamedPattern {
    std::string name;
    std::string bytes;
};

enum class PatternFormat { fasta, lines };
PatternFormat parse_pattern_format(std::string_view s);

/// FASTA records, or one pattern per line named by its 1-based line number.
std::vector<NamedPattern> parse_patterns(std::string_view bytes, PatternFormat format);

struct PatternResult {
    std::string name;
    std::uint64_t m = 0;
    std::optional<MatchingStatistics> ms;  // ms mode only
    MemList mems;
    QueryStats stats;
};

PatternResult run_query(const Index& index, const NamedPattern& pattern,
                        const QueryOptions& options);

/// ms: name, i (1-based), pos (0-based or "-"), len.
/// mems, long-mems, lcs: name, start (1-based), len, text_pos.
void write_tsv(std::ostream& out, const PatternResult& result, QueryMode mode);

/// JSON array with one stats object per pattern.
std::string stats_json(const std::vector<PatternResult>& results, const QueryOptions& options,
                       const Index& index);

}  // namespace lzmem
