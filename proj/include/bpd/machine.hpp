#pragma once

/*
 * Bounded-pushdown machines as explicit tables, plus the interpreter.
 *
 * A machine is the 8-tuple (Q, Sigma, Gamma, delta, beta|nu, q0, z0, c).
 * Restrictions enforced by validate():
 *   (1) exclusivity: for a (state, stack-top) pair, a lambda-transition and a
 *       real-input transition never coexist;
 *   (2) bottom preservation: z0 is never popped and never pushed except as the
 *       rightmost (bottom-most) symbol of a push onto z0 itself.
 *
 * Step semantics: observation functions are sampled at the incoming
 * configuration (beta for gamblers, nu for compressors), then lambda-moves are
 * exhausted (at most c of them), then the input transition fires. A pending
 * lambda-chain longer than c is an error, mirroring delta^(c+1) = undefined.
 *
 * Stacks are strings, top at index 0, bottom (z0 for standard runs) last.
 */

#include "bpd/core.hpp"

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <tuple>
#include <vector>

namespace bpd {

enum class machine_kind { gambler, compressor };

using bet_dist = std::vector<rational>;  // indexed by input-alphabet position

constexpr char lambda_in = '\0';  // internal marker for lambda-transitions

struct machine {
    machine_kind kind = machine_kind::gambler;
    alphabet input;
    alphabet stack_syms;
    std::vector<std::string> states;
    int start_state = 0;
    char start_stack = 0;  // z0
    int lambda_bound = 0;  // c

    struct edge {
        int next;
        std::string push;  // top-first; empty = pop only
        bool operator==(const edge&) const = default;
    };
    std::map<std::tuple<int, char, char>, edge> delta;        // (q, b|lambda, top)
    std::map<std::pair<int, char>, bet_dist> bets;            // (q, top), gambler
    std::map<std::tuple<int, char, char>, std::string> outs;  // (q, b, top), compressor

    int state_index(const std::string& name) const {
        for (size_t i = 0; i < states.size(); ++i)
            if (states[i] == name) return static_cast<int>(i);
        throw error(errc::domain, "unknown state '" + name + "'");
    }

    const edge* find_delta(int q, char in, char top) const {
        auto it = delta.find({q, in, top});
        return it == delta.end() ? nullptr : &it->second;
    }

    bet_dist uniform_bet() const {
        return bet_dist(input.size(), rational(1, big_int(input.size())));
    }

    bet_dist bet_at(int q, char top) const {
        auto it = bets.find({q, top});
        return it == bets.end() ? uniform_bet() : it->second;
    }

    std::string out_at(int q, char b, char top) const {
        auto it = outs.find({q, b, top});
        return it == outs.end() ? std::string() : it->second;
    }

    // Builder helpers for programmatic fixtures.
    int add_state(const std::string& name) {
        states.push_back(name);
        return static_cast<int>(states.size()) - 1;
    }
    void add_trans(const std::string& q, std::optional<char> in, char top, const std::string& q2,
                   const std::string& push) {
        delta[{state_index(q), in ? *in : lambda_in, top}] = edge{state_index(q2), push};
    }
    void set_bet(const std::string& q, char top, bet_dist d) {
        bets[{state_index(q), top}] = std::move(d);
    }
    void set_out(const std::string& q, char b, char top, std::string s) {
        outs[{state_index(q), b, top}] = std::move(s);
    }

    // Canonical form: entries equal to the defaults (uniform bet, empty output)
    // are dropped; serialization and equality go through this.
    machine normalized() const {
        machine m = *this;
        for (auto it = m.bets.begin(); it != m.bets.end();)
            it = it->second == uniform_bet() ? m.bets.erase(it) : std::next(it);
        for (auto it = m.outs.begin(); it != m.outs.end();)
            it = it->second.empty() ? m.outs.erase(it) : std::next(it);
        return m;
    }

    bool operator==(const machine& o) const {
        machine a = normalized(), b = o.normalized();
        return a.kind == b.kind && a.input == b.input && a.stack_syms == b.stack_syms &&
               a.states == b.states && a.start_state == b.start_state &&
               a.start_stack == b.start_stack && a.lambda_bound == b.lambda_bound &&
               a.delta == b.delta && a.bets == b.bets && a.outs == b.outs;
    }
};

struct configuration {
    int state;
    std::string stack;  // top-first
    bool operator==(const configuration&) const = default;
    char top() const {
        if (stack.empty()) throw error(errc::stack_underflow, "empty stack");
        return stack[0];
    }
};

inline configuration start_configuration(const machine& m) {
    return configuration{m.start_state, std::string(1, m.start_stack)};
}

namespace detail {
inline void apply_edge(const machine& m, configuration& c, const machine::edge& e) {
    if (c.stack.empty()) throw error(errc::stack_underflow, "pop on empty stack");
    c.state = e.next;
    c.stack = e.push + c.stack.substr(1);
}

// Exhaust pending lambda-moves; returns the number taken. More than
// m.lambda_bound pending is a lambda-overflow error.
inline int exhaust_lambda(const machine& m, configuration& c) {
    int steps = 0;
    while (!c.stack.empty()) {
        const machine::edge* e = m.find_delta(c.state, lambda_in, c.top());
        if (!e) break;
        if (steps == m.lambda_bound)
            throw error(errc::lambda_overflow,
                        "lambda-chain longer than bound at state '" + m.states[c.state] + "'");
        apply_edge(m, c, *e);
        ++steps;
    }
    return steps;
}
}  // namespace detail

struct step_result {
    configuration next;
    int lambda_steps = 0;
    bet_dist bet;        // gambler: beta at the incoming configuration
    std::string output;  // compressor: nu at the incoming configuration
};

inline step_result step(const machine& m, const configuration& cfg, char b) {
    if (!m.input.contains(b))
        throw error(errc::domain, std::string("input symbol '") + b + "' not in alphabet");
    step_result r;
    char top = cfg.top();
    if (m.kind == machine_kind::gambler)
        r.bet = m.bet_at(cfg.state, top);
    else
        r.output = m.out_at(cfg.state, b, top);
    r.next = cfg;
    r.lambda_steps = detail::exhaust_lambda(m, r.next);
    const machine::edge* e = m.find_delta(r.next.state, b, r.next.top());
    if (!e)
        throw error(errc::undefined_transition,
                    std::string("no transition from state '") + m.states[r.next.state] +
                        "' on '" + b + "' with stack top '" + r.next.top() + "'");
    detail::apply_edge(m, r.next, *e);
    return r;
}

struct run_trace {
    std::vector<configuration> configs;  // configs[i] after w[0..i)
    std::vector<int> lambda_steps;
    std::vector<bet_dist> bets;
    std::vector<std::string> outputs;
};

inline run_trace run(const machine& m, configuration cfg, const std::string& w) {
    run_trace t;
    t.configs.push_back(cfg);
    for (size_t i = 0; i < w.size(); ++i) {
        char b = w[i];
        step_result r = [&] {
            try {
                return step(m, cfg, b);
            } catch (const error& e) {
                throw error(e.kind, "position " + std::to_string(i) + ": " + e.what());
            }
        }();
        t.lambda_steps.push_back(r.lambda_steps);
        if (m.kind == machine_kind::gambler)
            t.bets.push_back(std::move(r.bet));
        else
            t.outputs.push_back(std::move(r.output));
        cfg = std::move(r.next);
        t.configs.push_back(cfg);
    }
    return t;
}

inline run_trace run(const machine& m, const std::string& w) {
    return run(m, start_configuration(m), w);
}

// ---------------------------------------------------------------------------
// Validation

struct validation_report {
    struct item {
        std::string code;
        std::string detail;
    };
    std::vector<item> errors;
    std::vector<item> warnings;
    bool ok() const { return errors.empty(); }
    std::string summary() const {
        std::ostringstream os;
        for (const auto& e : errors) os << "error[" << e.code << "] " << e.detail << "\n";
        for (const auto& w : warnings) os << "warning[" << w.code << "] " << w.detail << "\n";
        return os.str();
    }
};

inline validation_report validate(const machine& m, size_t explore_cap = 4096) {
    validation_report rep;
    auto err = [&](const std::string& c, const std::string& d) {
        rep.errors.push_back({c, d});
    };
    auto warn = [&](const std::string& c, const std::string& d) {
        rep.warnings.push_back({c, d});
    };

    if (m.input.size() < 2) err("input", "input alphabet needs at least 2 symbols");
    if (m.states.empty()) err("states", "no states");
    for (size_t i = 0; i < m.states.size(); ++i)
        for (size_t j = i + 1; j < m.states.size(); ++j)
            if (m.states[i] == m.states[j]) err("states", "duplicate state '" + m.states[i] + "'");
    if (m.start_state < 0 || m.start_state >= static_cast<int>(m.states.size()))
        err("start", "start state out of range");
    if (!m.stack_syms.contains(m.start_stack)) err("start-stack", "z0 not in stack alphabet");
    if (m.lambda_bound < 0) err("lambda-bound", "negative lambda bound");
    if (m.kind == machine_kind::gambler && !m.outs.empty())
        err("kind", "gambler carries output entries");
    if (m.kind == machine_kind::compressor && !m.bets.empty())
        err("kind", "compressor carries bet entries");
    if (!rep.ok()) return rep;

    const char z0 = m.start_stack;
    for (const auto& [key, e] : m.delta) {
        auto [q, in, top] = key;
        std::string where = "delta(" + m.states[q] + "," +
                            (in == lambda_in ? std::string("~") : std::string(1, in)) + "," + top +
                            ")";
        if (in != lambda_in && !m.input.contains(in)) err("symbols", where + ": bad input symbol");
        if (!m.stack_syms.contains(top)) err("symbols", where + ": bad stack top");
        if (e.next < 0 || e.next >= static_cast<int>(m.states.size()))
            err("symbols", where + ": target state out of range");
        for (char c : e.push)
            if (!m.stack_syms.contains(c)) err("symbols", where + ": push symbol not in alphabet");
        // bottom preservation
        size_t z_count = 0;
        for (char c : e.push)
            if (c == z0) ++z_count;
        if (top == z0) {
            if (e.push.empty() || e.push.back() != z0 || z_count != 1)
                err("bottom", where + ": transition on z0 must push v.z0 with v free of z0");
        } else if (z_count != 0) {
            err("bottom", where + ": z0 pushed above the bottom");
        }
    }

    // exclusivity
    for (const auto& [key, e] : m.delta) {
        auto [q, in, top] = key;
        (void)e;
        if (in == lambda_in) continue;
        if (m.find_delta(q, lambda_in, top))
            err("exclusivity", "state '" + m.states[q] + "', stack top '" + std::string(1, top) +
                                   "': both lambda and input transitions defined");
    }

    for (const auto& [key, d] : m.bets) {
        auto [q, top] = key;
        std::string where = "bet(" + m.states[q] + "," + top + ")";
        if (!m.stack_syms.contains(top)) err("symbols", where + ": bad stack top");
        if (d.size() != m.input.size()) {
            err("bets", where + ": needs exactly one rational per input symbol");
            continue;
        }
        rational sum = 0;
        for (const rational& p : d) {
            if (p < 0) err("bets", where + ": negative probability");
            sum += p;
        }
        if (sum != 1) err("bets", where + ": probabilities sum to " + format_rational(sum));
    }

    for (const auto& [key, s] : m.outs) {
        auto [q, in, top] = key;
        std::string where = "out(" + m.states[q] + "," + in + "," + top + ")";
        if (!m.input.contains(in)) err("symbols", where + ": bad input symbol");
        if (!m.stack_syms.contains(top)) err("symbols", where + ": bad stack top");
        for (char c : s)
            if (!m.input.contains(c)) err("symbols", where + ": output symbol not in alphabet");
    }

    // totality (warning only): a pair with no lambda-move should handle every input
    size_t missing = 0;
    std::string first_missing;
    for (size_t q = 0; q < m.states.size(); ++q)
        for (char top : m.stack_syms.syms) {
            if (m.find_delta(static_cast<int>(q), lambda_in, top)) continue;
            for (char b : m.input.syms)
                if (!m.find_delta(static_cast<int>(q), b, top)) {
                    if (missing++ == 0)
                        first_missing = "delta(" + m.states[q] + "," + b + "," + top + ")";
                }
        }
    if (missing)
        warn("non-total", "undefined on " + std::to_string(missing) +
                              " (state,input,top) triples, first: " + first_missing);

    if (!rep.ok()) return rep;

    // lambda budget over reachable configurations, bounded exploration
    std::vector<configuration> frontier{start_configuration(m)};
    std::map<std::pair<int, std::string>, bool> seen;
    size_t visited = 0;
    bool truncated = false;
    while (!frontier.empty()) {
        configuration c = frontier.back();
        frontier.pop_back();
        if (seen.count({c.state, c.stack})) continue;
        if (++visited > explore_cap) {
            truncated = true;
            break;
        }
        seen[{c.state, c.stack}] = true;
        configuration ex = c;
        try {
            detail::exhaust_lambda(m, ex);
        } catch (const error& e) {
            if (e.kind == errc::lambda_overflow) {
                err("lambda-budget", std::string(e.what()) + " (reached from start)");
                break;
            }
            continue;  // underflow on malformed machine: already reported above
        }
        if (ex.stack.empty()) continue;
        for (char b : m.input.syms)
            if (const machine::edge* e = m.find_delta(ex.state, b, ex.top())) {
                configuration n = ex;
                detail::apply_edge(m, n, *e);
                if (!seen.count({n.state, n.stack})) frontier.push_back(n);
            }
    }
    if (truncated)
        warn("exploration-truncated",
             "reachability exploration stopped after " + std::to_string(explore_cap) + " configs");

    return rep;
}

// ---------------------------------------------------------------------------
// File format (see README): line-oriented, '#' comments, '~' for lambda/empty.

namespace detail {
inline std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}
}  // namespace detail

inline machine parse_machine(const std::string& text) {
    machine m;
    bool have_header = false, have_kind = false, have_input = false, have_stack = false,
         have_states = false, have_start = false, have_z0 = false, have_bound = false;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw error(errc::syntax, "line " + std::to_string(lineno) + ": " + msg);
    };
    auto need_tables = [&] {
        if (!(have_kind && have_input && have_stack && have_states && have_start && have_z0 &&
              have_bound))
            fail("header fields must precede trans/bet/out lines");
    };
    auto state_of = [&](const std::string& name) {
        for (size_t i = 0; i < m.states.size(); ++i)
            if (m.states[i] == name) return static_cast<int>(i);
        fail("unknown state '" + name + "'");
        return -1;
    };
    auto stack_sym = [&](const std::string& t) {
        if (t.size() != 1 || !m.stack_syms.contains(t[0]))
            fail("'" + t + "' is not a stack symbol");
        return t[0];
    };
    auto input_sym = [&](const std::string& t) {
        if (t.size() != 1 || !m.input.contains(t[0])) fail("'" + t + "' is not an input symbol");
        return t[0];
    };

    while (std::getline(is, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        auto tk = detail::tokens(raw);
        if (tk.empty()) continue;
        if (!have_header) {
            if (tk.size() != 2 || tk[0] != "bpd-machine" || tk[1] != "v1")
                fail("expected 'bpd-machine v1' header");
            have_header = true;
            continue;
        }
        const std::string& key = tk[0];
        if (key == "kind:") {
            if (tk.size() != 2 || (tk[1] != "gambler" && tk[1] != "compressor"))
                fail("kind must be gambler or compressor");
            m.kind = tk[1] == "gambler" ? machine_kind::gambler : machine_kind::compressor;
            have_kind = true;
        } else if (key == "input:") {
            if (tk.size() != 2) fail("input: expects one token of symbols");
            try {
                m.input = alphabet(tk[1]);
            } catch (const error& e) {
                fail(e.what());
            }
            have_input = true;
        } else if (key == "stack:") {
            if (tk.size() != 2) fail("stack: expects one token of symbols");
            try {
                m.stack_syms = alphabet(tk[1]);
            } catch (const error& e) {
                fail(e.what());
            }
            have_stack = true;
        } else if (key == "states:") {
            if (tk.size() < 2) fail("states: expects at least one state");
            m.states.assign(tk.begin() + 1, tk.end());
            for (const auto& s : m.states)
                if (s == "->" || s == "~") fail("state name '" + s + "' is reserved");
            have_states = true;
        } else if (key == "start:") {
            if (tk.size() != 2 || !have_states) fail("start: expects one declared state");
            m.start_state = state_of(tk[1]);
            have_start = true;
        } else if (key == "start-stack:") {
            if (tk.size() != 2 || !have_stack) fail("start-stack: expects one stack symbol");
            m.start_stack = stack_sym(tk[1]);
            have_z0 = true;
        } else if (key == "lambda-bound:") {
            if (tk.size() != 2) fail("lambda-bound: expects an integer");
            try {
                m.lambda_bound = std::stoi(tk[1]);
            } catch (...) {
                fail("lambda-bound: expects an integer");
            }
            have_bound = true;
        } else if (key == "trans:") {
            need_tables();
            if (tk.size() != 7 || tk[4] != "->") fail("trans: q a A -> q' push");
            int q = state_of(tk[1]);
            char in = tk[2] == "~" ? lambda_in : input_sym(tk[2]);
            char top = stack_sym(tk[3]);
            int q2 = state_of(tk[5]);
            std::string push = tk[6] == "~" ? std::string() : tk[6];
            for (char c : push)
                if (!m.stack_syms.contains(c)) fail("push symbol '" + std::string(1, c) + "' not in stack alphabet");
            if (m.delta.count({q, in, top})) fail("duplicate transition");
            m.delta[{q, in, top}] = machine::edge{q2, push};
        } else if (key == "bet:") {
            need_tables();
            if (tk.size() != 4 + m.input.size() || tk[3] != "->")
                fail("bet: q A -> one rational per input symbol");
            int q = state_of(tk[1]);
            char top = stack_sym(tk[2]);
            bet_dist d;
            for (size_t i = 4; i < tk.size(); ++i) {
                try {
                    d.push_back(parse_rational(tk[i]));
                } catch (const std::invalid_argument& e) {
                    fail(e.what());
                }
            }
            if (m.bets.count({q, top})) fail("duplicate bet entry");
            m.bets[{q, top}] = std::move(d);
        } else if (key == "out:") {
            need_tables();
            if (tk.size() != 6 || tk[4] != "->") fail("out: q a A -> string");
            int q = state_of(tk[1]);
            char in = input_sym(tk[2]);
            char top = stack_sym(tk[3]);
            std::string s = tk[5] == "~" ? std::string() : tk[5];
            for (char c : s)
                if (!m.input.contains(c)) fail("output symbol '" + std::string(1, c) + "' not in input alphabet");
            if (m.outs.count({q, in, top})) fail("duplicate out entry");
            m.outs[{q, in, top}] = std::move(s);
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
    if (!have_header) throw error(errc::syntax, "empty machine file");
    if (!(have_kind && have_input && have_stack && have_states && have_start && have_z0 &&
          have_bound))
        throw error(errc::syntax, "incomplete machine header");
    return m;
}

inline std::string serialize_machine(const machine& m_in) {
    machine m = m_in.normalized();
    std::ostringstream os;
    os << "bpd-machine v1\n";
    os << "kind: " << (m.kind == machine_kind::gambler ? "gambler" : "compressor") << "\n";
    os << "input: " << m.input.syms << "\n";
    os << "stack: " << m.stack_syms.syms << "\n";
    os << "states:";
    for (const auto& s : m.states) os << " " << s;
    os << "\n";
    os << "start: " << m.states[m.start_state] << "\n";
    os << "start-stack: " << m.start_stack << "\n";
    os << "lambda-bound: " << m.lambda_bound << "\n";

    auto in_rank = [&](char c) { return c == lambda_in ? -1 : m.input.index(c); };
    std::vector<std::tuple<int, char, char>> dkeys;
    for (const auto& [k, v] : m.delta) (void)v, dkeys.push_back(k);
    std::sort(dkeys.begin(), dkeys.end(), [&](const auto& a, const auto& b) {
        auto ka = std::tuple(std::get<0>(a), in_rank(std::get<1>(a)),
                             m.stack_syms.index(std::get<2>(a)));
        auto kb = std::tuple(std::get<0>(b), in_rank(std::get<1>(b)),
                             m.stack_syms.index(std::get<2>(b)));
        return ka < kb;
    });
    for (const auto& k : dkeys) {
        const auto& e = m.delta.at(k);
        os << "trans: " << m.states[std::get<0>(k)] << " "
           << (std::get<1>(k) == lambda_in ? std::string("~") : std::string(1, std::get<1>(k)))
           << " " << std::get<2>(k) << " -> " << m.states[e.next] << " "
           << (e.push.empty() ? std::string("~") : e.push) << "\n";
    }

    std::vector<std::pair<int, char>> bkeys;
    for (const auto& [k, v] : m.bets) (void)v, bkeys.push_back(k);
    std::sort(bkeys.begin(), bkeys.end(), [&](const auto& a, const auto& b) {
        return std::pair(a.first, m.stack_syms.index(a.second)) <
               std::pair(b.first, m.stack_syms.index(b.second));
    });
    for (const auto& k : bkeys) {
        os << "bet: " << m.states[k.first] << " " << k.second << " ->";
        for (const rational& p : m.bets.at(k)) os << " " << format_rational(p);
        os << "\n";
    }

    std::vector<std::tuple<int, char, char>> okeys;
    for (const auto& [k, v] : m.outs) (void)v, okeys.push_back(k);
    std::sort(okeys.begin(), okeys.end(), [&](const auto& a, const auto& b) {
        auto ka = std::tuple(std::get<0>(a), m.input.index(std::get<1>(a)),
                             m.stack_syms.index(std::get<2>(a)));
        auto kb = std::tuple(std::get<0>(b), m.input.index(std::get<1>(b)),
                             m.stack_syms.index(std::get<2>(b)));
        return ka < kb;
    });
    for (const auto& k : okeys) {
        const std::string& s = m.outs.at(k);
        os << "out: " << m.states[std::get<0>(k)] << " " << std::get<1>(k) << " "
           << std::get<2>(k) << " -> " << (s.empty() ? std::string("~") : s) << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Uniform runtime interface over table machines and lazily derived machines.

struct cursor_view {
    std::string state;  // display label, stable and injective per machine
    std::string stack;  // flat stack, top-first
};

class gambler_cursor {
public:
    virtual ~gambler_cursor() = default;
    virtual bet_dist bets() const = 0;     // beta at the current configuration
    virtual int advance(char b) = 0;       // returns lambda-steps taken
    virtual cursor_view view() const = 0;
    virtual std::unique_ptr<gambler_cursor> clone() const = 0;
};

class gambler_machine {
public:
    virtual ~gambler_machine() = default;
    virtual const alphabet& sigma() const = 0;
    virtual std::unique_ptr<gambler_cursor> fresh() const = 0;
};

class compressor_cursor {
public:
    virtual ~compressor_cursor() = default;
    virtual std::string advance(char b) = 0;  // emitted output for this symbol
    virtual cursor_view view() const = 0;
    virtual std::unique_ptr<compressor_cursor> clone() const = 0;
};

class compressor_machine {
public:
    virtual ~compressor_machine() = default;
    virtual const alphabet& sigma() const = 0;
    virtual std::unique_ptr<compressor_cursor> fresh() const = 0;
};

class table_gambler final : public gambler_machine {
public:
    explicit table_gambler(machine m) : m_(std::move(m)) {
        if (m_.kind != machine_kind::gambler)
            throw error(errc::precondition, "table_gambler: machine is not a gambler");
    }
    const machine& table() const { return m_; }
    const alphabet& sigma() const override { return m_.input; }

    class cursor final : public gambler_cursor {
    public:
        cursor(const machine& m, configuration c) : m_(&m), cfg_(std::move(c)) {}
        bet_dist bets() const override { return m_->bet_at(cfg_.state, cfg_.top()); }
        int advance(char b) override {
            step_result r = step(*m_, cfg_, b);
            cfg_ = std::move(r.next);
            return r.lambda_steps;
        }
        cursor_view view() const override { return {m_->states[cfg_.state], cfg_.stack}; }
        std::unique_ptr<gambler_cursor> clone() const override {
            return std::make_unique<cursor>(*m_, cfg_);
        }
        const configuration& config() const { return cfg_; }

    private:
        const machine* m_;
        configuration cfg_;
    };

    std::unique_ptr<gambler_cursor> fresh() const override {
        return std::make_unique<cursor>(m_, start_configuration(m_));
    }

private:
    machine m_;
};

class table_compressor final : public compressor_machine {
public:
    explicit table_compressor(machine m) : m_(std::move(m)) {
        if (m_.kind != machine_kind::compressor)
            throw error(errc::precondition, "table_compressor: machine is not a compressor");
    }
    const machine& table() const { return m_; }
    const alphabet& sigma() const override { return m_.input; }

    class cursor final : public compressor_cursor {
    public:
        cursor(const machine& m, configuration c) : m_(&m), cfg_(std::move(c)) {}
        std::string advance(char b) override {
            step_result r = step(*m_, cfg_, b);
            cfg_ = std::move(r.next);
            return r.output;
        }
        cursor_view view() const override { return {m_->states[cfg_.state], cfg_.stack}; }
        std::unique_ptr<compressor_cursor> clone() const override {
            return std::make_unique<cursor>(*m_, cfg_);
        }
        const configuration& config() const { return cfg_; }

    private:
        const machine* m_;
        configuration cfg_;
    };

    std::unique_ptr<compressor_cursor> fresh() const override {
        return std::make_unique<cursor>(m_, start_configuration(m_));
    }

private:
    machine m_;
};

}  // namespace bpd
