#include "lzmem/index_file.hpp"

#include <fstream>

#include "lzmem/error.hpp"
#include "lzmem/suffix_build.hpp"

namespace lzmem {

Index build_index(const TextRecord& text, const BuildOptions& options) {
    if (options.subsample == 0) throw UsageError("invalid subsample rate");
    if (text.symbols.empty() || text.symbols.back() != kSentinel) {
        throw UsageError("text must end with the sentinel");
    }
    Index index;
    index.alphabet = text.alphabet;
    index.records = text.records;
    {
        SuffixStructures s = build_suffix_structures(text.symbols);
        index.rlbwt = RlbwtIndex::build(s, text.alphabet.sigma(), options.augment, options.subsample);
    }
    index.grammar = Grammar::build(text.symbols, HashConfig::from_seed(options.seed));
    return index;
}

namespace {

class Writer {
  public:
    void u64(std::uint64_t v) {
        for (int k = 0; k < 8; ++k) out_.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
    }
    void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
    void bytes(std::string_view s) { out_.append(s); }
    void str(std::string_view s) {
        u64(s.size());
        bytes(s);
    }
    std::string take() { return std::move(out_); }

  private:
    std::string out_;
};

class Reader {
  public:
    explicit Reader(std::string_view in) : in_(in) {}

    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int k = 0; k < 8; ++k) {
            v |= std::uint64_t{static_cast<std::uint8_t>(in_[at_ + k])} << (8 * k);
        }
        at_ += 8;
        return v;
    }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(in_[at_++]);
    }
    std::string_view bytes(std::uint64_t len) {
        need(len);
        auto s = in_.substr(at_, len);
        at_ += len;
        return s;
    }
    std::string str() { return std::string(bytes(u64())); }
    // Upper bound for element counts so corrupt sizes fail before allocating.
    std::uint64_t count(std::uint64_t element_size) {
        std::uint64_t c = u64();
        if (element_size > 0 && c > (in_.size() - at_) / element_size) {
            throw FormatError("index file truncated or corrupt");
        }
        return c;
    }
    bool at_end() const { return at_ == in_.size(); }

  private:
    void need(std::uint64_t len) const {
        if (len > in_.size() - at_) throw FormatError("index file truncated or corrupt");
    }

    std::string_view in_;
    std::size_t at_ = 0;
};

}  // namespace

std::string serialize_index(const Index& index) {
    Writer w;
    w.bytes(kIndexMagic);
    w.u64(kIndexVersion);

    w.u64(index.n());
    w.u64(index.r());
    w.u64(index.g());

    const auto& table = index.alphabet.table();
    w.u64(table.size());
    for (auto b : table) w.u8(b);

    w.u64(index.records.size());
    for (const auto& rec : index.records) {
        w.str(rec.name);
        w.u64(rec.offset);
        w.u64(rec.length);
    }

    const RlbwtIndex& bwt = index.rlbwt;
    w.u64(bwt.r());
    for (const Run& run : bwt.runs()) w.u64(run.start);
    for (const Run& run : bwt.runs()) w.u8(run.symbol);
    for (std::size_t c = 0; c <= index.alphabet.sigma(); ++c) w.u64(bwt.C(static_cast<Symbol>(c)));

    const ThresholdTable& th = bwt.thresholds();
    w.u8(th.augmented ? 1 : 0);
    w.u64(th.entries.size());
    for (const Threshold& t : th.entries) {
        w.u64(t.t);
        if (th.augmented) {
            w.u64(t.lce_before);
            w.u64(t.lce_after);
        }
    }

    const SamplePlan& samples = bwt.samples();
    w.u64(samples.rate);
    w.u64(samples.retained.size());
    for (const auto& rs : samples.retained) {
        w.u64(rs.offset);
        w.u64(rs.value);
    }

    const Grammar& gr = index.grammar;
    w.u64(gr.hash_config().seed);
    w.u64(gr.hash_config().base);
    w.u64(gr.root());
    w.u64(gr.g());
    for (const Rule& rule : gr.rules()) {
        w.u8(rule.terminal() ? 1 : 0);
        w.u64(rule.left);
        w.u64(rule.terminal() ? 0 : rule.right);
        w.u64(rule.length);
        w.u64(rule.hash);
    }
    return w.take();
}

Index deserialize_index(std::string_view bytes) {
    Reader in(bytes);
    if (in.bytes(kIndexMagic.size()) != kIndexMagic) throw FormatError("not an lzmem index");
    std::uint64_t version = in.u64();
    if (version != kIndexVersion) {
        throw FormatError("unsupported index version " + std::to_string(version) + " (expected " +
                          std::to_string(kIndexVersion) + ")");
    }

    const std::uint64_t n = in.u64();
    const std::uint64_t r = in.u64();
    const std::uint64_t g = in.u64();

    Index index;
    std::uint64_t sigma = in.count(1);
    std::vector<std::uint8_t> table(sigma);
    for (auto& b : table) b = in.u8();
    index.alphabet = Alphabet::from_table(table);

    std::uint64_t nrec = in.count(24);
    for (std::uint64_t k = 0; k < nrec; ++k) {
        RecordSpan rec;
        rec.name = in.str();
        rec.offset = in.u64();
        rec.length = in.u64();
        index.records.push_back(std::move(rec));
    }

    std::uint64_t runs_count = in.count(9);
    if (runs_count != r) throw FormatError("run count mismatch");
    std::vector<Run> runs(runs_count);
    for (auto& run : runs) run.start = in.u64();
    for (auto& run : runs) run.symbol = in.u8();
    for (std::size_t k = 0; k < runs.size(); ++k) {
        if (runs[k].start >= n || (k > 0 && runs[k].start <= runs[k - 1].start)) {
            throw FormatError("run starts not increasing");
        }
    }
    for (std::size_t k = 0; k < runs.size(); ++k) {
        runs[k].end = k + 1 < runs.size() ? runs[k + 1].start - 1 : n - 1;
        if (runs[k].symbol > sigma) throw FormatError("run symbol outside alphabet");
    }
    std::vector<std::uint64_t> c_table(sigma + 1);
    for (auto& c : c_table) c = in.u64();

    ThresholdTable th;
    std::uint8_t aug = in.u8();
    if (aug > 1) throw FormatError("bad augment flag");
    th.augmented = aug == 1;
    std::uint64_t nth = in.count(th.augmented ? 24 : 8);
    th.entries.resize(nth);
    for (auto& t : th.entries) {
        t.t = in.u64();
        if (th.augmented) {
            t.lce_before = in.u64();
            t.lce_after = in.u64();
        }
    }

    SamplePlan samples;
    samples.rate = in.u64();
    std::uint64_t nsamples = in.count(16);
    samples.retained.resize(nsamples);
    for (auto& rs : samples.retained) {
        rs.offset = in.u64();
        rs.value = in.u64();
    }

    HashConfig config;
    config.seed = in.u64();
    config.base = in.u64();
    std::uint64_t root = in.u64();
    std::uint64_t rules_count = in.count(33);
    if (rules_count != g) throw FormatError("rule count mismatch");
    std::vector<Rule> rules(rules_count);
    for (auto& rule : rules) {
        std::uint8_t terminal = in.u8();
        std::uint64_t a = in.u64();
        std::uint64_t b = in.u64();
        rule.length = in.u64();
        rule.hash = in.u64();
        if (terminal > 1 || a >= Rule::kTerminal || b >= Rule::kTerminal) {
            throw FormatError("bad grammar rule");
        }
        rule.left = static_cast<std::uint32_t>(a);
        rule.right = terminal ? Rule::kTerminal : static_cast<std::uint32_t>(b);
        if (terminal && b != 0) throw FormatError("bad terminal rule");
    }
    if (!in.at_end()) throw FormatError("trailing bytes after index");
    if (root >= rules_count) throw FormatError("grammar root out of range");

    index.rlbwt = RlbwtIndex(n, sigma, std::move(runs), std::move(th), std::move(samples));
    for (std::size_t c = 0; c <= sigma; ++c) {
        if (index.rlbwt.C(static_cast<Symbol>(c)) != c_table[c]) throw FormatError("C table mismatch");
    }
    index.grammar = Grammar(std::move(rules), static_cast<std::uint32_t>(root), config);
    if (index.grammar.length() != n) throw FormatError("grammar length differs from text length");
    return index;
}

void save_index(const Index& index, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    std::string bytes = serialize_index(index);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw FormatError("write error on " + path);
}

Index load_index(const std::string& path) { return deserialize_index(read_file(path)); }

}  // namespace lzmem
