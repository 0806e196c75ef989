#pragma once

/*
 * The two directions of the compressor <-> gambler correspondence, block
 * length k:
 *
 *   compressor_to_gambler: bets are quotients of sigma sums
 *       sigma(cfg, j) = sum over u in Sigma^j of |Sigma|^-|output(cfg, u)|,
 *     evaluated on the live stack (started as z0^2k). One derived step per
 *     input symbol; block position advances mod k.
 *
 *   gambler_to_compressor: buffers k symbols, then emits the Shannon-Fano-
 *     Elias codeword of the block under p(u) = |Sigma|^-k * d(u), where d is
 *     the restarted martingale from the current configuration. Requires
 *     strictly positive bets (see nonvanishing_transform).
 *
 * tabulate() freezes either derived machine into an explicit table whose
 * stack symbols name 2k-aligned chunks of the flat stack. Machines that
 * shrink the flat stack below one chunk, or rewrite the bottom chunk, have no
 * faithful table and are rejected; the streaming forms above stay exact.
 *
 * verify_* run the exact identities / inequalities the constructions promise
 * (block-step quotient identity, per-block product form, capital lower bound
 * with integer-ceiling slack, output-length upper bound).
 */

#include "bpd/compressor.hpp"
#include "bpd/gale.hpp"
#include "bpd/machine.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace bpd {

// sum over u in Sigma^len of |Sigma|^-|output|, outputs read along extended
// steps from cfg. Exact; throws on undefined transitions under cfg.
inline rational sigma_sum(const machine& m, const configuration& cfg, size_t len) {
    if (len == 0) return 1;
    rational total = 0;
    big_int b(m.input.size());
    for (char a : m.input.syms) {
        step_result sr = step(m, cfg, a);
        rational sub = sigma_sum(m, sr.next, len - 1);
        total += sub / rational(int_pow(b, sr.output.size()));
    }
    return total;
}

namespace detail {
inline void require_block_base(const machine& m, machine_kind kind, int k, const char* who) {
    if (m.kind != kind)
        throw error(errc::precondition, std::string(who) + ": wrong machine kind");
    if (k < 1) throw error(errc::precondition, std::string(who) + ": block length must be >= 1");
    if (m.lambda_bound > 1)
        throw error(errc::precondition,
                    std::string(who) + ": spontaneous-move budget above 1 is not supported");
    validation_report rep = validate(m);
    if (!rep.ok()) throw error(errc::validation, std::string(who) + ": " + rep.summary());
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Compressor -> gambler.

class block_gambler final : public gambler_machine {
public:
    block_gambler(machine base, int k) : base_(std::move(base)), k_(k) {
        detail::require_block_base(base_, machine_kind::compressor, k_, "compressor_to_gambler");
    }

    const machine& base() const { return base_; }
    int block_len() const { return k_; }
    const alphabet& sigma() const override { return base_.input; }

    class cursor final : public gambler_cursor {
    public:
        cursor(const block_gambler* own)
            : own_(own),
              cfg_{own->base_.start_state,
                   std::string(2 * static_cast<size_t>(own->k_), own->base_.start_stack)},
              pos_(0) {}

        bet_dist bets() const override {
            const machine& m = own_->base_;
            size_t tail = static_cast<size_t>(own_->k_ - pos_ - 1);
            bet_dist num;
            rational den = 0;
            big_int b(m.input.size());
            for (char a : m.input.syms) {
                step_result sr = step(m, cfg_, a);
                rational v = sigma_sum(m, sr.next, tail) / rational(int_pow(b, sr.output.size()));
                den += v;
                num.push_back(std::move(v));
            }
            for (rational& v : num) v /= den;
            return num;
        }

        int advance(char b) override {
            step_result sr = step(own_->base_, cfg_, b);
            cfg_ = sr.next;
            pos_ = (pos_ + 1) % own_->k_;
            return sr.lambda_steps;
        }

        cursor_view view() const override {
            return {own_->base_.states[cfg_.state] + "@" + std::to_string(pos_), cfg_.stack};
        }
        std::unique_ptr<gambler_cursor> clone() const override {
            return std::make_unique<cursor>(*this);
        }

        const configuration& config() const { return cfg_; }
        int block_pos() const { return pos_; }

    private:
        const block_gambler* own_;
        configuration cfg_;
        int pos_;
    };

    std::unique_ptr<gambler_cursor> fresh() const override {
        return std::make_unique<cursor>(this);
    }

private:
    machine base_;
    int k_;
};

inline block_gambler compressor_to_gambler(machine c, int k) {
    return block_gambler(std::move(c), k);
}

// ---------------------------------------------------------------------------
// Shannon-Fano-Elias code over fixed-length blocks.

struct sfe_code {
    alphabet sigma;
    std::vector<std::string> blocks;  // lex order
    std::vector<rational> probs;
    std::vector<std::string> codes;

    const std::string& code_for(const std::string& block) const {
        auto it = std::lower_bound(blocks.begin(), blocks.end(), block);
        if (it == blocks.end() || *it != block)
            throw error(errc::domain, "block '" + block + "' not in code domain");
        return codes[static_cast<size_t>(it - blocks.begin())];
    }

    bool prefix_free() const {
        for (size_t i = 0; i < codes.size(); ++i)
            for (size_t j = 0; j < codes.size(); ++j)
                if (i != j && codes[i].size() <= codes[j].size() &&
                    codes[j].compare(0, codes[i].size(), codes[i]) == 0)
                    return false;
        return true;
    }

    rational kraft() const {
        rational s = 0;
        big_int b(sigma.size());
        for (const std::string& c : codes) s += rational(1) / rational(int_pow(b, c.size()));
        return s;
    }
};

// Codeword of x = first l base-|Sigma| digits of F(x) + p(x)/2, where F is the
// cumulative left of x and l = 1 + ceil(log 1/p(x)).
inline sfe_code sfe_build(const alphabet& sigma, const std::vector<std::string>& blocks_lex,
                          const std::vector<rational>& probs) {
    if (blocks_lex.size() != probs.size() || blocks_lex.empty())
        throw error(errc::precondition, "code table: empty or mismatched block/probability lists");
    for (size_t i = 0; i + 1 < blocks_lex.size(); ++i)
        if (!(blocks_lex[i] < blocks_lex[i + 1]))
            throw error(errc::precondition, "code table: blocks must be strictly increasing");
    rational sum = 0;
    for (const rational& p : probs) {
        if (p <= 0) throw error(errc::domain, "code table: probabilities must be positive");
        sum += p;
    }
    if (sum != 1) throw error(errc::domain, "code table: probabilities must sum to 1");

    sfe_code out;
    out.sigma = sigma;
    out.blocks = blocks_lex;
    out.probs = probs;
    big_int b(sigma.size());
    rational cum = 0;
    for (size_t i = 0; i < probs.size(); ++i) {
        size_t l = 1 + ceil_log_inv(b, probs[i]);
        rational x = cum + probs[i] / 2;
        std::string code;
        for (size_t t = 0; t < l; ++t) {
            x *= b;
            big_int digit = numerator(x) / denominator(x);
            code += sigma.syms[digit.convert_to<size_t>()];
            x -= rational(digit);
        }
        out.codes.push_back(std::move(code));
        cum += probs[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gambler -> compressor.

class block_compressor final : public compressor_machine {
public:
    block_compressor(machine base, int k) : base_(std::move(base)), k_(k) {
        detail::require_block_base(base_, machine_kind::gambler, k_, "gambler_to_compressor");
        if (base_.input.size() < 2)
            throw error(errc::precondition, "gambler_to_compressor: alphabet of size >= 2 required");
        for (const auto& [key, d] : base_.bets) {
            (void)key;
            for (const rational& p : d)
                if (!(p > 0 && p < 1))
                    throw error(errc::precondition,
                                "gambler_to_compressor: all bets must lie strictly in (0,1); "
                                "see nonvanishing_transform");
        }
    }

    const machine& base() const { return base_; }
    int block_len() const { return k_; }
    const alphabet& sigma() const override { return base_.input; }

    // p(u) = |Sigma|^-k * d(u) with d run from cfg; memoised per configuration.
    const sfe_code& code_table_at(const configuration& cfg) const {
        auto key = std::make_pair(cfg.state, cfg.stack);
        auto it = memo_.find(key);
        if (it != memo_.end()) return *it->second;
        auto code = std::make_shared<sfe_code>(build_table(cfg));
        return *memo_.emplace(key, std::move(code)).first->second;
    }

    const sfe_code& code_table_at_start() const {
        return code_table_at(
            {base_.start_state, std::string(2 * static_cast<size_t>(k_), base_.start_stack)});
    }

    class cursor final : public compressor_cursor {
    public:
        cursor(const block_compressor* own)
            : own_(own),
              cfg_{own->base_.start_state,
                   std::string(2 * static_cast<size_t>(own->k_), own->base_.start_stack)} {}

        std::string advance(char b) override {
            own_->base_.input.index(b);  // validates the symbol
            buf_ += b;
            if (buf_.size() < static_cast<size_t>(own_->k_)) return "";
            std::string out = own_->code_table_at(cfg_).code_for(buf_);
            for (char x : buf_) cfg_ = step(own_->base_, cfg_, x).next;
            buf_.clear();
            return out;
        }

        cursor_view view() const override {
            return {own_->base_.states[cfg_.state] + "@" + buf_, cfg_.stack};
        }
        std::unique_ptr<compressor_cursor> clone() const override {
            return std::make_unique<cursor>(*this);
        }

        const configuration& config() const { return cfg_; }
        const std::string& buffered() const { return buf_; }

    private:
        const block_compressor* own_;
        configuration cfg_;
        std::string buf_;
    };

    std::unique_ptr<compressor_cursor> fresh() const override {
        return std::make_unique<cursor>(this);
    }

private:
    sfe_code build_table(const configuration& cfg) const {
        size_t k = static_cast<size_t>(k_);
        std::vector<std::string> blocks = lex_enumerate(base_.input, k);
        std::vector<rational> probs;
        rational scale = rational(1) / rational(int_pow(big_int(base_.input.size()), k));
        for (const std::string& u : blocks) {
            rational d = 1;
            configuration c = cfg;
            big_int b(base_.input.size());
            for (char x : u) {
                step_result sr = step(base_, c, x);
                d *= rational(b) * sr.bet[base_.input.index(x)];
                c = sr.next;
            }
            probs.push_back(scale * d);
        }
        return sfe_build(base_.input, blocks, probs);
    }

    machine base_;
    int k_;
    mutable std::map<std::pair<int, std::string>, std::shared_ptr<const sfe_code>> memo_;
};

inline block_compressor gambler_to_compressor(machine g, int k) {
    return block_compressor(std::move(g), k);
}

// ---------------------------------------------------------------------------
// Tabulation: freeze a derived machine into an explicit table. Stack symbols
// of the result name chunks of the flat stack (legend maps symbol -> chunk).

struct tabulation {
    machine m;
    std::vector<std::pair<char, std::string>> legend;
};

namespace detail {

inline constexpr const char* chunk_pool_chars =
    "ZABCDEFGHIJKLMNOPQRSTUVWXYabcdefghijklmnopqrstuvwxyz0123456789";

struct chunk_pool {
    std::map<std::string, char> by_flat;
    std::vector<std::pair<char, std::string>> legend;

    char intern(const std::string& flat) {
        auto it = by_flat.find(flat);
        if (it != by_flat.end()) return it->second;
        size_t next = legend.size();
        if (chunk_pool_chars[next] == '\0')
            throw error(errc::capacity, "tabulation: chunk symbol pool exhausted");
        char c = chunk_pool_chars[next];
        by_flat.emplace(flat, c);
        legend.emplace_back(c, flat);
        return c;
    }
};

// Split flat stack content (top first) into one chunk of length 2k + (|y| mod
// 2k) followed by chunks of length 2k. Undefined for 0 < |y| < 2k.
inline std::vector<std::string> hat_chunks(const std::string& y, int k) {
    size_t two_k = 2 * static_cast<size_t>(k);
    if (y.empty())
        throw error(errc::precondition,
                    "tabulation: a step consumed the whole top chunk; no faithful table exists");
    if (y.size() < two_k)
        throw error(errc::precondition,
                    "tabulation: re-chunking is undefined for stack content shorter than one "
                    "chunk; the streaming construction remains exact");
    size_t first = two_k + y.size() % two_k;
    std::vector<std::string> out{y.substr(0, first)};
    for (size_t pos = first; pos < y.size(); pos += two_k) out.push_back(y.substr(pos, two_k));
    return out;
}

struct tab_builder {
    const machine& base;
    int k;
    machine out;
    chunk_pool pool;
    std::string z0_flat;

    tab_builder(const machine& b, int kk, machine_kind kind) : base(b), k(kk) {
        out.kind = kind;
        out.input = base.input;
        out.lambda_bound = 1;
        z0_flat = std::string(2 * static_cast<size_t>(k), base.start_stack);
        pool.intern(z0_flat);
    }

    // Transformed flat stack -> (push string of chunk symbols, next top chunk).
    std::pair<std::string, std::string> rechunk(const std::string& y, char from_chunk) {
        std::vector<std::string> chunks = hat_chunks(y, k);
        std::string push;
        for (const std::string& c : chunks) push += pool.intern(c);
        if (from_chunk == pool.by_flat.at(z0_flat)) {
            if (chunks.back() != z0_flat || push.find(pool.by_flat.at(z0_flat)) != push.size() - 1)
                throw error(errc::precondition,
                            "tabulation: the base machine rewrites the bottom chunk; no faithful "
                            "table exists");
        }
        return {push, chunks.front()};
    }

    void finish() {
        out.stack_syms = alphabet{[&] {
            std::string s;
            for (auto& [c, flat] : pool.legend) {
                (void)flat;
                s += c;
            }
            return s;
        }()};
        out.start_stack = pool.legend.front().first;
    }
};

}  // namespace detail

inline tabulation tabulate(const block_gambler& g, size_t max_nodes = 4096) {
    const machine& base = g.base();
    int k = g.block_len();
    detail::tab_builder tb(base, k, machine_kind::gambler);

    auto label = [&](int q, int i) { return base.states[q] + "@" + std::to_string(i); };
    std::map<std::tuple<int, int, std::string>, bool> seen;  // (q, i, chunk flat)
    std::vector<std::tuple<int, int, std::string>> queue;
    std::map<std::string, bool> state_added;

    auto add_state = [&](const std::string& s) {
        if (!state_added.emplace(s, true).second) return;
        tb.out.add_state(s);
    };

    std::tuple<int, int, std::string> start{base.start_state, 0, tb.z0_flat};
    seen.emplace(start, true);
    queue.push_back(start);
    add_state(label(std::get<0>(start), 0));
    tb.out.start_state = tb.out.state_index(label(std::get<0>(start), 0));

    for (size_t head = 0; head < queue.size(); ++head) {
        if (seen.size() > max_nodes) throw error(errc::capacity, "tabulation: node limit exceeded");
        auto [q, i, flat] = queue[head];
        char chunk_sym = tb.pool.intern(flat);
        configuration cfg{q, flat};
        std::string from = label(q, i);

        // bets: sigma-quotients evaluated on the chunk alone (depth <= 2k pops).
        size_t tail = static_cast<size_t>(k - i - 1);
        bet_dist num;
        rational den = 0;
        big_int bsz(base.input.size());
        for (char a : base.input.syms) {
            step_result sr = step(base, cfg, a);
            rational v = sigma_sum(base, sr.next, tail) / rational(int_pow(bsz, sr.output.size()));
            den += v;
            num.push_back(std::move(v));
        }
        for (rational& v : num) v /= den;
        tb.out.set_bet(from, chunk_sym, num);

        int i2 = (i + 1) % k;
        for (char a : base.input.syms) {
            step_result sr = step(base, cfg, a);
            auto [push, top_flat] = tb.rechunk(sr.next.stack, chunk_sym);
            std::string to = label(sr.next.state, i2);
            add_state(to);
            tb.out.add_trans(from, a, chunk_sym, to, push);
            auto node = std::make_tuple(sr.next.state, i2, top_flat);
            if (seen.emplace(node, true).second) queue.push_back(node);
        }
    }
    tb.finish();
    validation_report rep = validate(tb.out);
    if (!rep.ok()) throw error(errc::validation, "tabulation produced an invalid table: " + rep.summary());
    return {std::move(tb.out), std::move(tb.pool.legend)};
}

inline tabulation tabulate(const block_compressor& c, size_t max_nodes = 4096) {
    const machine& base = c.base();
    int k = c.block_len();
    detail::tab_builder tb(base, k, machine_kind::compressor);

    auto label = [&](int q, const std::string& buf) { return base.states[q] + "@" + buf; };
    std::map<std::tuple<int, std::string, std::string>, bool> seen;  // (q, buf, chunk flat)
    std::vector<std::tuple<int, std::string, std::string>> queue;
    std::map<std::string, bool> state_added;
    auto add_state = [&](const std::string& s) {
        if (!state_added.emplace(s, true).second) return;
        tb.out.add_state(s);
    };

    std::tuple<int, std::string, std::string> start{base.start_state, "", tb.z0_flat};
    seen.emplace(start, true);
    queue.push_back(start);
    add_state(label(std::get<0>(start), ""));
    tb.out.start_state = tb.out.state_index(label(std::get<0>(start), ""));

    for (size_t head = 0; head < queue.size(); ++head) {
        if (seen.size() > max_nodes) throw error(errc::capacity, "tabulation: node limit exceeded");
        auto [q, buf, flat] = queue[head];
        char chunk_sym = tb.pool.intern(flat);
        std::string from = label(q, buf);

        for (char a : base.input.syms) {
            std::string word = buf + a;
            if (word.size() < static_cast<size_t>(k)) {
                // buffering step: stack untouched, no output
                std::string to = label(q, word);
                add_state(to);
                tb.out.add_trans(from, a, chunk_sym, to, std::string(1, chunk_sym));
                auto node = std::make_tuple(q, word, flat);
                if (seen.emplace(node, true).second) queue.push_back(node);
                continue;
            }
            // block boundary: emit the codeword, run k base steps
            configuration cfg{q, flat};
            std::string code = c.code_table_at(cfg).code_for(word);
            for (char x : word) cfg = step(base, cfg, x).next;
            auto [push, top_flat] = tb.rechunk(cfg.stack, chunk_sym);
            std::string to = label(cfg.state, "");
            add_state(to);
            tb.out.add_trans(from, a, chunk_sym, to, push);
            if (!code.empty()) tb.out.set_out(from, a, chunk_sym, code);
            auto node = std::make_tuple(cfg.state, std::string(), top_flat);
            if (seen.emplace(node, true).second) queue.push_back(node);
        }
    }
    tb.finish();
    validation_report rep = validate(tb.out);
    if (!rep.ok()) throw error(errc::validation, "tabulation produced an invalid table: " + rep.summary());
    return {std::move(tb.out), std::move(tb.pool.legend)};
}

// ---------------------------------------------------------------------------
// Exact checks of what the constructions promise.

namespace detail {

// sigma_scale != 1 deliberately corrupts every sigma value (test hook); the
// per-block product identity must then fail.
inline check_result verify_block_identities_impl(const machine& base, int k, const std::string& w,
                                                 const rational& sigma_scale) {
    block_gambler g(base, k);
    capital_trace tr = martingale(g, w);

    std::vector<configuration> cfgs;
    std::vector<size_t> outlen;
    configuration cfg{base.start_state, std::string(2 * static_cast<size_t>(k), base.start_stack)};
    cfgs.push_back(cfg);
    outlen.push_back(0);
    for (char b : w) {
        step_result sr = step(base, cfg, b);
        cfg = sr.next;
        cfgs.push_back(cfg);
        outlen.push_back(outlen.back() + sr.output.size());
    }

    big_int bsz(base.input.size());
    size_t kk = static_cast<size_t>(k);

    // quotient identity over each in-block extension
    for (size_t j = 0; j + 1 <= w.size(); j += kk) {
        rational sig_j = sigma_scale * sigma_sum(base, cfgs[j], kk);
        for (size_t e = 1; e <= kk && j + e <= w.size(); ++e) {
            size_t je = j + e;
            rational sig_je = sigma_scale * sigma_sum(base, cfgs[je], kk - e);
            long ex = static_cast<long>(e) - static_cast<long>(outlen[je] - outlen[j]);
            rational expect =
                rat_pow(rational(bsz), ex) * sig_je / sig_j * (*tr.values[j].exact);
            if (*tr.values[je].exact != expect)
                return {false, "block-step identity fails at prefix length " + std::to_string(je)};
        }
    }

    // product form at block boundaries
    rational prod = 1;
    for (size_t j = 0; j <= w.size(); j += kk) {
        long ex = static_cast<long>(j) - static_cast<long>(outlen[j]);
        rational expect = rat_pow(rational(bsz), ex) / prod;
        if (*tr.values[j].exact != expect)
            return {false, "per-block product form fails at prefix length " + std::to_string(j)};
        if (j + kk <= w.size()) prod *= sigma_scale * sigma_sum(base, cfgs[j], kk);
    }
    return {true, ""};
}

}  // namespace detail

inline check_result verify_block_identities(const machine& base_compressor, int k,
                                            const std::string& w) {
    return detail::verify_block_identities_impl(base_compressor, k, w, 1);
}

// d(w) >= |Sigma|^(|w| - |C(w)| - floor(|w|/k) L - (k m + L)) for every w up to
// max_len, with L = ceil(log|Q|) + ceil(log m) + ceil(log k) + 1 (integer
// ceilings make the slack slightly larger than the real-valued bound, so the
// inequality is only easier to violate by a broken construction, never by
// rounding). Requires the base compressor to be information-lossless.
inline check_result verify_capital_lower_bound(const machine& base_compressor, int k,
                                               size_t max_len) {
    block_gambler g(base_compressor, k);
    table_compressor ct(base_compressor);
    il_result il = il_check(ct, max_len);
    if (!il.il)
        throw error(errc::precondition,
                    "capital lower bound requires an information-lossless compressor; '" +
                        il.witness_a + "' and '" + il.witness_b + "' collide");

    big_int bsz(base_compressor.input.size());
    big_int maxout = 0;
    for (const auto& [key, s] : base_compressor.outs) {
        (void)key;
        if (big_int(s.size()) > maxout) maxout = s.size();
    }
    if (maxout < 1) maxout = 1;
    size_t L = ceil_log(bsz, big_int(base_compressor.states.size())) + ceil_log(bsz, maxout) +
               ceil_log(bsz, big_int(k)) + 1;

    for (size_t n = 1; n <= max_len; ++n) {
        for (const std::string& w : lex_enumerate(base_compressor.input, n)) {
            size_t clen = compress(ct, w).size();
            rational d = *martingale(g, w).values.back().exact;
            long E = static_cast<long>(n) - static_cast<long>(clen) -
                     static_cast<long>((n / static_cast<size_t>(k)) * L) -
                     static_cast<long>(static_cast<size_t>(k) * maxout.convert_to<size_t>() + L);
            if (d < rat_pow(rational(bsz), E))
                return {false, "capital lower bound fails on '" + w + "'"};
        }
    }
    return {true, ""};
}

// |C(w)| <= (1 + 2/k)|w| - log d(w), checked without logs as
// |Sigma|^(k |C(w)|) d(w)^k <= |Sigma|^((k+2)|w|).
inline check_result verify_output_upper_bound(const machine& base_gambler, int k, size_t max_len) {
    block_compressor c(base_gambler, k);
    table_gambler gt(base_gambler);
    big_int bsz(base_gambler.input.size());
    for (size_t n = 1; n <= max_len; ++n) {
        for (const std::string& w : lex_enumerate(base_gambler.input, n)) {
            size_t clen = compress(c, w).size();
            rational d = *martingale(gt, w).values.back().exact;
            long p = static_cast<long>((static_cast<size_t>(k) + 2) * n) -
                     static_cast<long>(static_cast<size_t>(k) * clen);
            if (cmp_pow(d, k, bsz, p) > 0)
                return {false, "output upper bound fails on '" + w + "'"};
        }
    }
    return {true, ""};
}

}  // namespace bpd
