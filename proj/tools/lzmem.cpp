// lzmem: build a compressed index, then query matching statistics and MEMs.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lzmem/error.hpp"
#include "lzmem/index_file.hpp"
#include "lzmem/query.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kIo = 2, kInternal = 3 };

struct BuildArgs {
    std::string input;
    std::string format = "fasta";
    std::string output;
    std::uint64_t subsample = 1;
    bool augment = false;
    std::optional<std::uint64_t> seed;
    bool strip_newlines = false;
};

struct QueryArgs {
    std::string index;
    std::string patterns;
    std::string format = "fasta";
    std::string mode = "ms";
    std::string engine = "eager";
    std::optional<std::uint64_t> min_len;
    bool verify = true;
    std::string stats;
    std::string output;
    std::optional<std::uint64_t> hash_base;
    unsigned threads = 1;
};

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw lzmem::FormatError("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw lzmem::FormatError("write failed: " + path);
}

int cmd_build(const BuildArgs& a) {
    auto t0 = std::chrono::steady_clock::now();
    if (a.subsample == 0) throw lzmem::UsageError("invalid subsample rate");
    if (a.strip_newlines && a.format != "raw") {
        throw lzmem::UsageError("--strip-newlines applies to raw input only");
    }
    std::string bytes = lzmem::read_file(a.input);
    lzmem::TextRecord text;
    if (a.format == "raw") {
        if (a.strip_newlines) std::erase_if(bytes, [](char ch) { return ch == '\n' || ch == '\r'; });
        text = lzmem::load_raw(bytes, a.input);
    } else {
        text = lzmem::load_fasta(bytes);
    }

    lzmem::BuildOptions opts;
    opts.subsample = a.subsample;
    opts.augment = a.augment;
    opts.seed = a.seed ? *a.seed : (std::uint64_t{std::random_device{}()} << 32) ^ std::random_device{}();
    lzmem::Index index = lzmem::build_index(text, opts);
    lzmem::save_index(index, a.output);

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "n=" << index.n() << " r=" << index.r() << " g=" << index.g()
              << " samples=" << index.rlbwt.samples().retained.size() << " seconds=" << secs << "\n";
    return kOk;
}

int cmd_query(const QueryArgs& a, bool verify_given) {
    lzmem::QueryOptions opts;
    opts.mode = lzmem::parse_mode(a.mode);
    opts.engine = lzmem::parse_engine(a.engine);
    opts.min_len = a.min_len;
    opts.verify = a.verify;
    if (verify_given && opts.engine != lzmem::Engine::lazy) {
        throw lzmem::UsageError("--verify/--no-verify apply to the lazy engine only");
    }
    lzmem::PatternFormat format = lzmem::parse_pattern_format(a.format);
    if (a.threads == 0) throw lzmem::UsageError("--threads must be positive");

    lzmem::Index index = lzmem::load_index(a.index);
    lzmem::validate(opts, index);
    if (a.hash_base) {
        index.grammar = index.grammar.rehashed(
            lzmem::HashConfig::with_base(*a.hash_base, index.grammar.hash_config().seed));
    }

    std::vector<lzmem::NamedPattern> patterns =
        lzmem::parse_patterns(lzmem::read_file(a.patterns), format);
    std::vector<lzmem::PatternResult> results(patterns.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        try {
            for (std::size_t i = next++; i < patterns.size(); i = next++) {
                results[i] = lzmem::run_query(index, patterns[i], opts);
            }
        } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next = patterns.size();
        }
    };
    unsigned workers = std::min<std::size_t>(a.threads, std::max<std::size_t>(patterns.size(), 1));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::ostringstream tsv;
    for (const auto& res : results) {
        if (res.m == 0) std::cerr << "warning: pattern '" << res.name << "' is empty\n";
        lzmem::write_tsv(tsv, res, opts.mode);
    }
    if (a.output.empty()) {
        std::cout << tsv.str();
        std::cout.flush();
        if (!std::cout) throw lzmem::FormatError("write to stdout failed");
    } else {
        write_file(a.output, tsv.str());
    }
    if (!a.stats.empty()) write_file(a.stats, lzmem::stats_json(results, opts, index));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compressed index for matching statistics and MEMs"};
    app.require_subcommand(1);

    BuildArgs b;
    auto* build = app.add_subcommand("build", "build an index from FASTA or raw bytes");
    build->add_option("--input", b.input, "text file")->required();
    build->add_option("--format", b.format)->check(CLI::IsMember({"fasta", "raw"}));
    build->add_option("--output", b.output, "index file")->required();
    build->add_option("--subsample", b.subsample, "SA sample rate");
    build->add_flag("--augment", b.augment, "store LCE values next to thresholds");
    build->add_option("--seed", b.seed, "hash seed (default: random)");
    build->add_flag("--strip-newlines", b.strip_newlines, "drop newlines from raw input");

    QueryArgs q;
    auto* query = app.add_subcommand("query", "compute MS, MEMs, long MEMs or LCS");
    query->add_option("--index", q.index)->required();
    query->add_option("--patterns", q.patterns)->required();
    query->add_option("--format", q.format)->check(CLI::IsMember({"fasta", "lines"}));
    query->add_option("--mode", q.mode)->check(CLI::IsMember({"ms", "mems", "long-mems", "lcs"}));
    query->add_option("--engine", q.engine)->check(CLI::IsMember({"eager", "eager-aug", "lazy"}));
    query->add_option("--min-len", q.min_len, "minimum MEM length (long-mems)");
    auto* verify = query->add_flag("--verify,!--no-verify", q.verify, "verify lazy MEMs");
    query->add_option("--stats", q.stats, "per-pattern stats JSON");
    query->add_option("--output", q.output, "TSV output (default stdout)");
    query->add_option("--threads", q.threads, "query worker threads");
    query->add_option("--hash-base-override", q.hash_base)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*build) return cmd_build(b);
        return cmd_query(q, verify->count() > 0);
    } catch (const lzmem::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const lzmem::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const lzmem::InvariantError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::bad_alloc&) {
        std::cerr << "internal error: out of memory\n";
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
