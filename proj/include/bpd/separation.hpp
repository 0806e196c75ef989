#pragma once

/*
 * The separation sequence S(k) and the gambler that wins on it.
 *
 * T_n = length-n binary strings with no run of k ones. Segment
 *   S_n = a_1..a_u 1^{2n} x_1..x_t 1^{2n+1} y_t..y_1,
 * a_i the palindromes of T_n (lex), {x_i, y_i = reverse(x_i)} the reversal
 * pairs, so the Y zone reads the reversed X zone. S starts with an early
 * segment: all strings of lengths 1..k-1 in lex order, then 1^k .. 1^{2k-1}.
 *
 * Orientation of the pairs is deterministic: pairs sorted by lex-smaller
 * element; a pair is endpoint-eligible iff its smaller element starts with 0;
 * the earliest eligible pair is moved to the front (x = the 0-starting
 * element), the latest to the back (x = the 0-ending element), middle pairs
 * take x = the smaller element. Too few eligible pairs is a degenerate-zone
 * error.
 *
 * Gambler modes:
 *   corrected (default, k >= 3): run counter up to tau = 2k-1 in the state;
 *     X-zone 1-runs are withheld and flushed on the next 0, so flag prefixes
 *     never touch the stack (zone-internal runs reach at most 2k-2 < tau).
 *   paper_faithful (k >= 2): threshold k, pushes every X-zone bit, k pop
 *     states. Kept verbatim as a negative control: zone-boundary runs of k
 *     ones trigger the detector early (see verify tooling). Pop transitions
 *     that would reach z0 keep z0 instead (unreachable on S; the literal
 *     table would break bottom preservation).
 */

#include "bpd/gale.hpp"
#include "bpd/lz.hpp"
#include "bpd/machine.hpp"

#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace bpd {

enum class sep_mode { corrected, paper_faithful };

struct separation_spec {
    int k = 3;
    sep_mode mode = sep_mode::corrected;
    double a() const { return 1.0 - 1.0 / static_cast<double>(k); }
};

inline big_int count_t(int n, int k) {
    if (n < 0 || k < 2) throw error(errc::domain, "count_t: need n >= 0, k >= 2");
    std::vector<big_int> f(static_cast<size_t>(n) + 1);
    f[0] = 1;
    for (int j = 1; j <= n; ++j) {
        big_int s = j <= k - 1 ? 1 : 0;  // the all-ones string of length j < k
        for (int i = 0; i <= std::min(k - 1, j - 1); ++i) s += f[static_cast<size_t>(j - 1 - i)];
        f[static_cast<size_t>(j)] = s;
    }
    return f[static_cast<size_t>(n)];
}

namespace detail {
inline void enum_t_rec(int n, int k, std::string& cur, int run, std::vector<std::string>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    cur += '0';
    enum_t_rec(n, k, cur, 0, out);
    cur.pop_back();
    if (run + 1 < k) {
        cur += '1';
        enum_t_rec(n, k, cur, run + 1, out);
        cur.pop_back();
    }
}
}  // namespace detail

inline std::vector<std::string> enumerate_t(int n, int k) {
    if (n < 1 || k < 2) throw error(errc::domain, "enumerate_t: need n >= 1, k >= 2");
    if (count_t(n, k) > enum_cap())
        throw error(errc::capacity, "enumerate_t: |T_n| exceeds enumeration cap");
    std::vector<std::string> out;
    std::string cur;
    detail::enum_t_rec(n, k, cur, 0, out);
    return out;
}

struct zone_split {
    std::vector<std::string> a;  // palindromes, lex order
    std::vector<std::string> x;  // x_1 .. x_t
    std::vector<std::string> y;  // y_i = reverse(x_i)
};

inline zone_split split_zones(int n, int k) {
    if (n < k) throw error(errc::domain, "split_zones: need n >= k");
    zone_split z;
    std::vector<std::pair<std::string, std::string>> pairs;  // (smaller, larger)
    for (const std::string& w : enumerate_t(n, k)) {
        std::string r = reversed(w);
        if (r == w)
            z.a.push_back(w);
        else if (w < r)
            pairs.emplace_back(w, r);
    }
    size_t t = pairs.size();
    if (t == 0) throw error(errc::degenerate_zone, "no reversal pairs at n=" + std::to_string(n));

    auto eligible = [](const std::pair<std::string, std::string>& p) {
        return p.first.front() == '0';  // some element starts with 0
    };

    if (t == 1) {
        // the sole pair must provide both x_1 (starts 0) and x_t (ends 0)
        const auto& [u, v] = pairs[0];
        std::string x;
        if (u.front() == '0' && u.back() == '0')
            x = u;
        else if (v.front() == '0' && v.back() == '0')
            x = v;
        else
            throw error(errc::degenerate_zone,
                        "sole pair {" + u + "," + v + "} cannot start and end the X zone");
        z.x.push_back(x);
        z.y.push_back(reversed(x));
        return z;
    }

    size_t i_f = t, i_l = t;
    for (size_t i = 0; i < t; ++i)
        if (eligible(pairs[i])) {
            if (i_f == t) i_f = i;
            i_l = i;
        }
    if (i_f == i_l || i_f == t)
        throw error(errc::degenerate_zone,
                    "fewer than two endpoint-eligible pairs at n=" + std::to_string(n));
    std::swap(pairs[0], pairs[i_f]);
    std::swap(pairs[t - 1], pairs[i_l]);

    for (size_t i = 0; i < t; ++i) {
        const auto& [u, v] = pairs[i];
        std::string x;
        if (i == 0) {
            x = u;  // the 0-starting element; if both start 0, u is lex-smaller
        } else if (i == t - 1) {
            x = u.back() == '0' ? u : v;  // v = reverse(u) ends with u.front() == '0'
        } else {
            x = u;
        }
        z.x.push_back(x);
        z.y.push_back(reversed(x));
    }
    return z;
}

// v = |S_1..S_{k-1}| + |1^k .. 1^{2k-1}|
inline size_t early_segment_length(int k) {
    size_t v = 0;
    for (int j = 1; j < k; ++j) v += static_cast<size_t>(j) << j;
    for (int j = k; j <= 2 * k - 1; ++j) v += static_cast<size_t>(j);
    return v;
}

struct zone_record {
    size_t begin, end;  // half-open
    std::string zone;   // early | A | flag1 | X | flag2 | Y
    int n;              // 0 for early
};

struct separation_sequence {
    int k = 0;
    std::string text;
    size_t early_len = 0;
    std::vector<zone_record> zones;
    std::vector<std::pair<int, size_t>> segment_ends;  // (n, position after S_n)

    size_t end_of(int n) const {
        for (const auto& [m, e] : segment_ends)
            if (m == n) return e;
        throw error(errc::domain, "no segment S_" + std::to_string(n));
    }
};

inline separation_sequence generate_s(int k, int upto) {
    if (k < 2) throw error(errc::domain, "generate_s: k >= 2 required");
    if (upto < k) throw error(errc::usage, "generate_s: upto >= k required");
    separation_sequence s;
    s.k = k;
    alphabet bin = binary_alphabet();
    for (int j = 1; j < k; ++j)
        for (const std::string& w : lex_enumerate(bin, static_cast<size_t>(j))) s.text += w;
    for (int j = k; j <= 2 * k - 1; ++j) s.text += std::string(static_cast<size_t>(j), '1');
    s.early_len = s.text.size();
    s.zones.push_back({0, s.early_len, "early", 0});

    for (int n = k; n <= upto; ++n) {
        zone_split z = split_zones(n, k);
        auto mark = [&](const char* name, const std::string& piece) {
            s.zones.push_back({s.text.size(), s.text.size() + piece.size(), name, n});
            s.text += piece;
        };
        std::string a_text, x_text;
        for (const std::string& w : z.a) a_text += w;
        for (const std::string& w : z.x) x_text += w;
        mark("A", a_text);
        mark("flag1", std::string(2 * static_cast<size_t>(n), '1'));
        mark("X", x_text);
        mark("flag2", std::string(2 * static_cast<size_t>(n) + 1, '1'));
        mark("Y", reversed(x_text));  // y_t .. y_1
        s.segment_ends.emplace_back(n, s.text.size());
    }
    return s;
}

inline void write_zones_csv(std::ostream& os, const separation_sequence& s) {
    os << "start,end,zone,n\n";
    for (const zone_record& z : s.zones)
        os << z.begin << "," << z.end << "," << z.zone << "," << z.n << "\n";
}

// ---------------------------------------------------------------------------
// The gambler.

inline machine build_separation_gambler(const separation_spec& spec) {
    int k = spec.k;
    if (spec.mode == sep_mode::corrected && k < 3)
        throw error(errc::domain, "corrected separation gambler needs k >= 3");
    if (k < 2) throw error(errc::domain, "separation gambler needs k >= 2");

    machine m;
    m.kind = machine_kind::gambler;
    m.input = binary_alphabet();
    m.stack_syms = alphabet("Z01");
    m.start_stack = 'Z';
    m.lambda_bound = 0;
    const std::string tops = "Z01";
    size_t v = early_segment_length(k);
    auto keep = [](char top) { return std::string(1, top); };

    if (spec.mode == sep_mode::corrected) {
        int tau = 2 * k - 1;
        auto e = [](size_t i) { return "e" + std::to_string(i); };
        auto a = [](int r) { return "a" + std::to_string(r); };
        auto x = [](int r) { return "x" + std::to_string(r); };
        for (size_t i = 0; i <= v; ++i) m.add_state(e(i));
        for (int r = 0; r < tau; ++r) m.add_state(a(r));
        m.add_state("f1");
        for (int r = 0; r < tau; ++r) m.add_state(x(r));
        m.add_state("f2");
        m.add_state("b");
        m.start_state = m.state_index(e(0));

        for (char A : tops) {
            for (size_t i = 0; i < v; ++i)
                for (char bch : {'0', '1'}) m.add_trans(e(i), bch, A, e(i + 1), keep(A));
            m.add_trans(e(v), '0', A, a(0), keep(A));
            m.add_trans(e(v), '1', A, a(1), keep(A));
            for (int r = 0; r < tau; ++r) {
                m.add_trans(a(r), '0', A, a(0), keep(A));
                m.add_trans(a(r), '1', A, r + 1 < tau ? a(r + 1) : "f1", keep(A));
            }
            m.add_trans("f1", '1', A, "f1", keep(A));
            m.add_trans("f1", '0', A, x(0), "0" + keep(A));
            for (int r = 0; r < tau; ++r) {
                // flush the withheld run; a run reaching tau is flag2, discard it
                m.add_trans(x(r), '0', A, x(0), "0" + std::string(static_cast<size_t>(r), '1') + keep(A));
                m.add_trans(x(r), '1', A, r + 1 < tau ? x(r + 1) : "f2", keep(A));
            }
            m.add_trans("f2", '1', A, "f2", keep(A));
            m.add_trans("f2", '0', A, "b", A == 'Z' ? keep(A) : std::string());
            if (A == 'Z') {
                m.add_trans("b", '0', A, a(0), keep(A));
                m.add_trans("b", '1', A, a(1), keep(A));
            } else {
                for (char bch : {'0', '1'}) m.add_trans("b", bch, A, "b", std::string());
            }
        }
        m.set_bet("b", '0', {rational(1), rational(0)});
        m.set_bet("b", '1', {rational(0), rational(1)});
        return m;
    }

    // paper_faithful
    auto q = [](size_t i) { return "q" + std::to_string(i); };
    auto qa = [](int j) { return "qa" + std::to_string(j); };
    auto qx = [](int j) { return "qx" + std::to_string(j); };
    auto qr = [](int i) { return "qr" + std::to_string(i); };
    for (size_t i = 0; i <= v; ++i) m.add_state(q(i));
    for (int j = 0; j < k; ++j) m.add_state(qa(j));
    m.add_state("q1f");
    for (int j = 0; j < k; ++j) m.add_state(qx(j));
    for (int i = 1; i <= k; ++i) m.add_state(qr(i));
    m.add_state("q2f");
    m.add_state("qb");
    m.start_state = m.state_index(q(0));

    for (char A : tops) {
        std::string pop = A == 'Z' ? keep(A) : std::string();  // z0-top pops keep z0
        for (size_t i = 0; i < v; ++i)
            for (char bch : {'0', '1'}) m.add_trans(q(i), bch, A, q(i + 1), keep(A));
        m.add_trans(q(v), '0', A, qa(0), keep(A));
        m.add_trans(q(v), '1', A, qa(1), keep(A));
        for (int j = 0; j < k; ++j) {
            m.add_trans(qa(j), '0', A, qa(0), keep(A));
            m.add_trans(qa(j), '1', A, j + 1 < k ? qa(j + 1) : "q1f", keep(A));
        }
        m.add_trans("q1f", '1', A, "q1f", keep(A));
        m.add_trans("q1f", '0', A, qx(0), "0" + keep(A));
        for (int j = 0; j < k; ++j) {
            // pushes every bit it sees, including the ones of a run that turns
            // out to be a flag -- hence the pop states below
            m.add_trans(qx(j), '0', A, qx(0), "0" + keep(A));
            m.add_trans(qx(j), '1', A, j + 1 < k ? qx(j + 1) : qr(1), "1" + keep(A));
        }
        for (int i = 1; i <= k; ++i)
            for (char bch : {'0', '1'})
                m.add_trans(qr(i), bch, A, i < k ? qr(i + 1) : "q2f", pop);
        m.add_trans("q2f", '1', A, "q2f", keep(A));
        m.add_trans("q2f", '0', A, "qb", pop);
        if (A == 'Z') {
            m.add_trans("qb", '0', A, qa(0), keep(A));
            m.add_trans("qb", '1', A, qa(1), keep(A));
        } else {
            for (char bch : {'0', '1'}) m.add_trans("qb", bch, A, "qb", std::string());
        }
    }
    m.set_bet("qb", '0', {rational(1), rational(0)});
    m.set_bet("qb", '1', {rational(0), rational(1)});
    return m;
}

// LZ parses each segment S_n into exactly T_n plus the two flags, and the
// early segment into all strings of lengths < k plus the early flags.
inline check_result verify_parse_claim(int k, int upto) {
    separation_sequence s = generate_s(k, upto);
    lz_phrase_table t = lz_parse(binary_alphabet(), s.text);
    if (t.final_incomplete) return {false, "sequence ends mid-phrase"};

    auto check_window = [&](size_t begin, size_t end, const std::set<std::string>& expect,
                            const std::string& what) -> check_result {
        std::vector<size_t> ids;
        try {
            ids = lz_phrases_of_segment(t, begin, end);
        } catch (const error& e) {
            return {false, what + ": " + e.what()};
        }
        std::set<std::string> got;
        for (size_t i : ids) got.insert(t.phrase_string(i));
        if (got == expect && ids.size() == expect.size()) return {true, ""};
        std::string diff;
        for (const std::string& w : expect)
            if (!got.count(w)) diff += " missing:" + w;
        for (const std::string& w : got)
            if (!expect.count(w)) diff += " extra:" + w;
        return {false, what + " phrase set differs:" + diff};
    };

    std::set<std::string> early;
    alphabet bin = binary_alphabet();
    for (int j = 1; j < k; ++j)
        for (const std::string& w : lex_enumerate(bin, static_cast<size_t>(j))) early.insert(w);
    for (int j = k; j <= 2 * k - 1; ++j) early.insert(std::string(static_cast<size_t>(j), '1'));
    if (check_result r = check_window(0, s.early_len, early, "early segment"); !r.ok) return r;

    size_t begin = s.early_len;
    for (int n = k; n <= upto; ++n) {
        std::set<std::string> expect;
        for (const std::string& w : enumerate_t(n, k)) expect.insert(w);
        expect.insert(std::string(2 * static_cast<size_t>(n), '1'));
        expect.insert(std::string(2 * static_cast<size_t>(n) + 1, '1'));
        size_t end = s.end_of(n);
        if (check_result r = check_window(begin, end, expect, "segment S_" + std::to_string(n));
            !r.ok)
            return r;
        begin = end;
    }
    return {true, ""};
}

}  // namespace bpd
