#include "lzmem/slp.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <unordered_map>

#include "lzmem/error.hpp"

namespace lzmem {

HashConfig HashConfig::from_seed(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<std::uint64_t> dist(2, kr::kModulus - 2);
    return {seed, dist(gen)};
}

HashConfig HashConfig::with_base(std::uint64_t base, std::uint64_t seed) {
    if (base < 2 || base > kr::kModulus - 2) throw UsageError("hash base out of range");
    return {seed, base};
}

PatternHashes::PatternHashes(std::span<const Symbol> pattern, std::uint64_t base)
    : prefix_(pattern.size() + 1, 0), pow_(pattern.size() + 1, 1) {
    for (std::size_t k = 0; k < pattern.size(); ++k) {
        prefix_[k + 1] = kr::add(kr::mul(prefix_[k], base), pattern[k]);
        pow_[k + 1] = kr::mul(pow_[k], base);
    }
}

namespace {

// Left-to-right walk over the maximal rules covering text[offset, n).
// The back of the stack is the rule that starts at the current position.
class Cursor {
  public:
    Cursor(const std::vector<Rule>& rules, std::uint32_t root, std::uint64_t offset)
        : rules_(rules) {
        std::uint32_t node = root;
        while (!rules_[node].terminal()) {
            const Rule& rule = rules_[node];
            std::uint64_t left_len = rules_[rule.left].length;
            if (offset < left_len) {
                stack_.push_back(rule.right);
                node = rule.left;
            } else {
                offset -= left_len;
                node = rule.right;
            }
        }
        stack_.push_back(node);
    }

    bool done() const { return stack_.empty(); }
    std::uint32_t top() const { return stack_.back(); }
    const Rule& top_rule() const { return rules_[stack_.back()]; }
    void pop() { stack_.pop_back(); }

    void expand() {
        const Rule& rule = rules_[stack_.back()];
        stack_.back() = rule.right;
        stack_.push_back(rule.left);
    }

  private:
    const std::vector<Rule>& rules_;
    std::vector<std::uint32_t> stack_;
};

}  // namespace

void Grammar::annotate(Rule& rule) const {
    if (rule.terminal()) {
        rule.length = 1;
        rule.hash = rule.left;
        rule.base_pow = config_.base;
        return;
    }
    const Rule& l = rules_[rule.left];
    const Rule& r = rules_[rule.right];
    rule.length = l.length + r.length;
    rule.hash = kr::concat(l.hash, r.hash, r.base_pow);
    rule.base_pow = kr::mul(l.base_pow, r.base_pow);
}

Grammar Grammar::build(std::span<const Symbol> text, const HashConfig& config) {
    if (text.empty()) throw UsageError("empty text");
    Grammar gr;
    gr.config_ = config;

    std::array<std::uint32_t, 256> terminal_id;
    terminal_id.fill(Rule::kTerminal);
    std::vector<std::uint32_t> level;
    level.reserve(text.size());
    for (Symbol c : text) {
        if (terminal_id[c] == Rule::kTerminal) {
            terminal_id[c] = static_cast<std::uint32_t>(gr.rules_.size());
            Rule rule;
            rule.left = c;
            gr.annotate(rule);
            gr.rules_.push_back(rule);
        }
        level.push_back(terminal_id[c]);
    }

    std::unordered_map<std::uint64_t, std::uint32_t> pairs;
    std::vector<std::uint32_t> next;
    while (level.size() > 1) {
        next.clear();
        for (std::size_t k = 0; k + 1 < level.size(); k += 2) {
            std::uint64_t key = (std::uint64_t{level[k]} << 32) | level[k + 1];
            auto [it, inserted] = pairs.try_emplace(key, static_cast<std::uint32_t>(gr.rules_.size()));
            if (inserted) {
                if (gr.rules_.size() >= Rule::kTerminal) throw InvariantError("grammar too large");
                Rule rule;
                rule.left = level[k];
                rule.right = level[k + 1];
                gr.annotate(rule);
                gr.rules_.push_back(rule);
            }
            next.push_back(it->second);
        }
        if (level.size() % 2 == 1) next.push_back(level.back());
        level.swap(next);
    }
    gr.root_ = level.front();
    return gr;
}

Grammar::Grammar(std::vector<Rule> rules, std::uint32_t root, const HashConfig& config)
    : root_(root), config_(config) {
    if (rules.empty() || root >= rules.size()) throw FormatError("grammar root out of range");
    std::array<bool, 256> seen_terminal{};
    rules_.reserve(rules.size());
    for (std::size_t k = 0; k < rules.size(); ++k) {
        Rule rule = rules[k];
        if (rule.terminal()) {
            if (rule.left > 255 || seen_terminal[rule.left]) {
                throw FormatError("bad terminal rule " + std::to_string(k));
            }
            seen_terminal[rule.left] = true;
        } else if (rule.left >= k || rule.right >= k) {
            throw FormatError("rule " + std::to_string(k) + " references a later rule");
        }
        annotate(rule);
        if (rule.length != rules[k].length || rule.hash != rules[k].hash) {
            throw FormatError("rule " + std::to_string(k) + " annotation mismatch");
        }
        rules_.push_back(rule);
    }
}

Grammar Grammar::rehashed(const HashConfig& config) const {
    Grammar out;
    out.config_ = config;
    out.root_ = root_;
    out.rules_.reserve(rules_.size());
    for (Rule rule : rules_) {
        out.annotate(rule);
        out.rules_.push_back(rule);
    }
    return out;
}

bool Grammar::operator==(const Grammar& o) const {
    if (root_ != o.root_ || !(config_ == o.config_) || rules_.size() != o.rules_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < rules_.size(); ++k) {
        const Rule& a = rules_[k];
        const Rule& b = o.rules_[k];
        if (a.left != b.left || a.right != b.right || a.length != b.length || a.hash != b.hash) {
            return false;
        }
    }
    return true;
}

std::size_t Grammar::height() const {
    std::vector<std::size_t> h(rules_.size(), 1);
    for (std::size_t k = 0; k < rules_.size(); ++k) {
        if (!rules_[k].terminal()) h[k] = 1 + std::max(h[rules_[k].left], h[rules_[k].right]);
    }
    return rules_.empty() ? 0 : h[root_];
}

void Grammar::check_range(std::uint64_t offset, std::uint64_t len) const {
    if (offset > length() || len > length() - offset) {
        throw InvariantError("text range [" + std::to_string(offset) + ", +" +
                             std::to_string(len) + ") out of bounds");
    }
}

std::vector<Symbol> Grammar::extract(std::uint64_t offset, std::uint64_t len) const {
    check_range(offset, len);
    std::vector<Symbol> out;
    if (len == 0) return out;
    out.reserve(len);
    Cursor cur(rules_, root_, offset);
    while (out.size() < len) {
        if (cur.top_rule().terminal()) {
            out.push_back(cur.top_rule().symbol());
            cur.pop();
        } else {
            cur.expand();
        }
    }
    return out;
}

Symbol Grammar::at(std::uint64_t offset) const {
    check_range(offset, 1);
    Cursor cur(rules_, root_, offset);
    return cur.top_rule().symbol();
}

std::uint64_t Grammar::prefix_hash(std::uint64_t x) const {
    check_range(0, x);
    std::uint64_t acc = 0;
    std::uint32_t node = root_;
    while (x > 0) {
        const Rule& rule = rules_[node];
        if (x == rule.length) {
            acc = kr::concat(acc, rule.hash, rule.base_pow);
            break;
        }
        const Rule& left = rules_[rule.left];
        if (x >= left.length) {
            acc = kr::concat(acc, left.hash, left.base_pow);
            x -= left.length;
            node = rule.right;
        } else {
            node = rule.left;
        }
    }
    return acc;
}

std::uint64_t Grammar::substring_hash(std::uint64_t offset, std::uint64_t len) const {
    check_range(offset, len);
    if (len == 0) return 0;
    std::uint64_t head = prefix_hash(offset);
    std::uint64_t whole = prefix_hash(offset + len);
    return kr::sub(whole, kr::mul(head, kr::pow(config_.base, len)));
}

bool Grammar::substring_equal(const PatternHashes& ph, std::uint64_t p_off, std::uint64_t t_off,
                              std::uint64_t len) const {
    check_range(t_off, len);
    if (p_off > ph.size() || len > ph.size() - p_off) throw InvariantError("pattern range out of bounds");
    if (len == 0) return true;
    return ph.hash(p_off, len) == substring_hash(t_off, len);
}

std::uint64_t Grammar::lcp_pattern_text(const PatternHashes& ph, std::uint64_t p_off,
                                        std::uint64_t p_limit, std::uint64_t t_off,
                                        std::uint64_t* probes) const {
    if (t_off >= length()) throw InvariantError("text offset out of bounds");
    if (p_off > ph.size()) throw InvariantError("pattern offset out of bounds");
    std::uint64_t limit = std::min({p_limit, length() - t_off, ph.size() - p_off});
    if (limit == 0) return 0;

    const std::uint64_t head = prefix_hash(t_off);
    std::uint64_t count = 0;
    auto equal = [&](std::uint64_t len) {
        ++count;
        std::uint64_t text = kr::sub(prefix_hash(t_off + len), kr::mul(head, ph.power(len)));
        return text == ph.hash(p_off, len);
    };

    std::uint64_t good = 0;
    std::uint64_t bad = 0;
    std::uint64_t len = 1;
    for (;;) {
        if (len >= limit) {
            if (equal(limit)) {
                good = limit;
                bad = limit + 1;
            } else {
                bad = limit;
            }
            break;
        }
        if (!equal(len)) {
            bad = len;
            break;
        }
        good = len;
        len *= 2;
    }
    while (bad - good > 1) {
        std::uint64_t mid = good + (bad - good) / 2;
        if (equal(mid)) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    if (probes) *probes += count;
    return good;
}

std::uint64_t Grammar::lce_heuristic(std::uint64_t x, std::uint64_t y, std::uint64_t cap) const {
    check_range(x, 0);
    check_range(y, 0);
    const std::uint64_t n = length();
    if (x == n || y == n) return 0;
    if (x == y) return std::min(n - x, cap);

    Cursor a(rules_, root_, x);
    Cursor b(rules_, root_, y);
    std::uint64_t result = 0;
    while (result < cap && !a.done() && !b.done()) {
        const Rule& ra = a.top_rule();
        const Rule& rb = b.top_rule();
        if (a.top() == b.top()) {
            result += ra.length;
            a.pop();
            b.pop();
        } else if (ra.length > rb.length) {
            a.expand();
        } else if (rb.length > ra.length) {
            b.expand();
        } else if (ra.terminal() && rb.terminal()) {
            if (ra.symbol() != rb.symbol()) break;
            ++result;
            a.pop();
            b.pop();
        } else {
            a.expand();
            b.expand();
        }
    }
    return std::min(result, cap);
}

std::uint64_t Grammar::lce_hash(std::uint64_t x, std::uint64_t y) const {
    check_range(x, 0);
    check_range(y, 0);
    const std::uint64_t limit = length() - std::max(x, y);
    if (x == y) return limit;
    if (limit == 0) return 0;
    const std::uint64_t hx = prefix_hash(x);
    const std::uint64_t hy = prefix_hash(y);
    auto equal = [&](std::uint64_t len) {
        std::uint64_t p = kr::pow(config_.base, len);
        return kr::sub(prefix_hash(x + len), kr::mul(hx, p)) ==
               kr::sub(prefix_hash(y + len), kr::mul(hy, p));
    };
    std::uint64_t good = 0, bad = 0, len = 1;
    for (;;) {
        if (len >= limit) {
            if (equal(limit)) return limit;
            bad = limit;
            break;
        }
        if (!equal(len)) {
            bad = len;
            break;
        }
        good = len;
        len *= 2;
    }
    while (bad - good > 1) {
        std::uint64_t mid = good + (bad - good) / 2;
        if (equal(mid)) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    return good;
}

}  // namespace lzmem
