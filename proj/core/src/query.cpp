#include "lzmem/query.hpp"

#include <algorithm>

#include "json.hpp"
#include "lzmem/error.hpp"

namespace lzmem {

QueryMode parse_mode(std::string_view s) {
    if (s == "ms") return QueryMode::ms;
    if (s == "mems") return QueryMode::mems;
    if (s == "long-mems") return QueryMode::long_mems;
    if (s == "lcs") return QueryMode::lcs;
    throw UsageError("unknown mode '" + std::string(s) + "'");
}

Engine parse_engine(std::string_view s) {
    if (s == "eager") return Engine::eager;
    if (s == "eager-aug") return Engine::eager_aug;
    if (s == "lazy") return Engine::lazy;
    throw UsageError("unknown engine '" + std::string(s) + "'");
}

std::string_view to_string(QueryMode mode) {
    switch (mode) {
        case QueryMode::ms: return "ms";
        case QueryMode::mems: return "mems";
        case QueryMode::long_mems: return "long-mems";
        case QueryMode::lcs: return "lcs";
    }
    return "?";
}

std::string_view to_string(Engine engine) {
    switch (engine) {
        case Engine::eager: return "eager";
        case Engine::eager_aug: return "eager-aug";
        case Engine::lazy: return "lazy";
    }
    return "?";
}

PatternFormat parse_pattern_format(std::string_view s) {
    if (s == "fasta") return PatternFormat::fasta;
    if (s == "lines") return PatternFormat::lines;
    throw UsageError("unknown pattern format '" + std::string(s) + "'");
}

void validate(const QueryOptions& options, const Index& index) {
    if (options.mode == QueryMode::long_mems) {
        if (!options.min_len) throw UsageError("--min-len is required with mode long-mems");
        if (*options.min_len == 0) throw UsageError("use full engine");
    } else if (options.min_len) {
        throw UsageError("--min-len is only valid with mode long-mems");
    }
    if (options.engine == Engine::eager_aug && !index.rlbwt.augmented()) {
        throw UsageError("engine eager-aug needs an index built with --augment");
    }
    if (!options.verify && options.engine != Engine::lazy) {
        throw UsageError("--no-verify applies to the lazy engine only");
    }
}

std::vector<NamedPattern> parse_patterns(std::string_view bytes, PatternFormat format) {
    std::vector<NamedPattern> out;
    if (format == PatternFormat::fasta) {
        for (auto& rec : parse_fasta(bytes)) out.push_back({rec.name, std::move(rec.sequence)});
        return out;
    }
    std::size_t at = 0;
    std::size_t line_no = 0;
    while (at < bytes.size()) {
        std::size_t eol = bytes.find('\n', at);
        if (eol == std::string_view::npos) eol = bytes.size();
        std::string_view line = bytes.substr(at, eol - at);
        at = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        out.push_back({std::to_string(line_no), std::string(line)});
    }
    return out;
}

namespace {

MemList keep_at_least(const MemList& mems, std::uint64_t d) {
    MemList out;
    std::copy_if(mems.begin(), mems.end(), std::back_inserter(out),
                 [d](const Mem& m) { return m.len >= d; });
    return out;
}

MemList keep_longest(const MemList& mems) {
    std::uint64_t best = 0;
    for (const Mem& m : mems) best = std::max(best, m.len);
    return keep_at_least(mems, std::max<std::uint64_t>(best, 1));
}

}  // namespace

PatternResult run_query(const Index& index, const NamedPattern& pattern,
                        const QueryOptions& options) {
    PatternResult res;
    res.name = pattern.name;
    std::vector<Symbol> symbols = index.alphabet.encode(pattern.bytes);
    res.m = symbols.size();
    if (symbols.empty()) {
        if (options.mode == QueryMode::ms) res.ms = MatchingStatistics{};
        return res;
    }

    const bool skip_engine = options.engine == Engine::eager &&
                             (options.mode == QueryMode::long_mems || options.mode == QueryMode::lcs);
    if (skip_engine) {
        MemResult r = options.mode == QueryMode::lcs
                          ? lcs(symbols, index.rlbwt, index.grammar)
                          : long_mems(symbols, index.rlbwt, index.grammar, *options.min_len);
        res.mems = std::move(r.mems);
        res.stats = r.stats;
        return res;
    }

    MatchingStatistics ms;
    if (options.engine == Engine::lazy) {
        LazyResult r = ms_lazy(symbols, index.rlbwt, index.grammar, options.verify);
        ms = std::move(r.ms);
        res.mems = std::move(r.mems);
        res.stats = r.stats;
    } else {
        EagerResult r = ms_eager(symbols, index.rlbwt, index.grammar,
                                 options.engine == Engine::eager_aug);
        ms = std::move(r.ms);
        res.mems = mems_from_ms(ms);
        res.stats = r.stats;
    }
    switch (options.mode) {
        case QueryMode::ms: res.ms = std::move(ms); break;
        case QueryMode::mems: break;
        case QueryMode::long_mems: res.mems = keep_at_least(res.mems, *options.min_len); break;
        case QueryMode::lcs: res.mems = keep_longest(res.mems); break;
    }
    return res;
}

void write_tsv(std::ostream& out, const PatternResult& result, QueryMode mode) {
    if (mode == QueryMode::ms) {
        if (!result.ms) return;
        const MatchingStatistics& ms = *result.ms;
        for (std::size_t i = 0; i < ms.m(); ++i) {
            out << result.name << '\t' << (i + 1) << '\t';
            if (ms.pos[i] == kAbsent) {
                out << '-';
            } else {
                out << ms.pos[i];
            }
            out << '\t' << ms.len[i] << '\n';
        }
        return;
    }
    for (const Mem& mem : result.mems) {
        out << result.name << '\t' << (mem.start + 1) << '\t' << mem.len << '\t' << mem.text_pos
            << '\n';
    }
}

std::string stats_json(const std::vector<PatternResult>& results, const QueryOptions& options,
                       const Index& index) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& res : results) {
        const QueryStats& st = res.stats;
        nlohmann::ordered_json j;
        j["pattern"] = res.name;
        j["m"] = res.m;
        j["engine"] = to_string(options.engine);
        j["mode"] = to_string(options.mode);
        j["n"] = index.n();
        j["r"] = index.r();
        j["g"] = index.g();
        j["s"] = index.rlbwt.subsample_rate();
        j["mems"] = res.mems.size();
        j["lf_steps"] = st.lf_steps;
        j["lcp_queries"] = st.lcp_queries;
        j["equality_checks"] = st.equality_checks;
        j["extra_paced_queries"] = st.extra_paced_queries;
        j["mismatch_events"] = st.mismatch_events;
        j["shortcut_hits"] = st.shortcut_hits;
        j["verified"] = st.verified;
        j["fallback_used"] = st.fallback_used;
        j["max_len_latency"] = st.max_len_latency;
        doc.push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

}  // namespace lzmem
