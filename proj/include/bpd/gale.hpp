#pragma once

/*
 * Martingales and s-gales of gamblers.
 *
 * d(empty) = 1 and d(wb) = |Sigma| * d(w) * beta(cfg_after_w)(b); the s-gale
 * view rescales by |Sigma|^((s-1)|w|). Scaled values m * |Sigma|^(p/q) are kept
 * exact and compared by clearing exponents (raise both sides to the q-th
 * power), so checks never rely on floating point.
 */

#include "bpd/machine.hpp"

#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace bpd {

struct capital_trace {
    size_t sigma = 2;
    std::vector<capital> values;  // values[i] = d(w[0..i))

    size_t steps() const { return values.empty() ? 0 : values.size() - 1; }
    double log_at(size_t i) const { return values.at(i).logv; }

    // 1 - log_sigma(d(w[0..i))) / i
    double dim_estimate_at(size_t i) const {
        if (i == 0) throw error(errc::domain, "dim estimate needs a nonempty prefix");
        double lg = values.at(i).logv;
        if (lg == -std::numeric_limits<double>::infinity())
            throw error(errc::zero_capital, "dim estimate undefined at zero capital");
        return 1.0 - lg / static_cast<double>(i);
    }
};

inline constexpr size_t no_exact_limit = static_cast<size_t>(-1);

// Capital trace of g on w. Positions > exact_limit carry only the log track.
inline capital_trace martingale(const gambler_machine& g, const std::string& w,
                                size_t exact_limit = no_exact_limit) {
    check_str(g.sigma(), w, "input");
    capital_trace t;
    t.sigma = g.sigma().size();
    capital cur = capital::one();
    t.values.push_back(cur);
    auto cur_cursor = g.fresh();
    rational sz(big_int(t.sigma));
    for (size_t i = 0; i < w.size(); ++i) {
        bet_dist b = cur_cursor->bets();
        if (b.size() != t.sigma)
            throw error(errc::validation, "bet distribution has wrong arity");
        cur.times(sz * b[g.sigma().index(w[i])], t.sigma);
        if (i + 1 > exact_limit) cur.drop_exact();
        t.values.push_back(cur);
        cur_cursor->advance(w[i]);
    }
    return t;
}

inline double dim_upper_estimate(const capital_trace& t) {
    return t.dim_estimate_at(t.steps());
}

// ---------------------------------------------------------------------------
// s-gale view: value = mantissa * sigma^exp, exact.

struct scaled_value {
    std::optional<rational> mantissa;  // absent when only the log track survives
    rational exp;
    double logv = 0.0;  // base-sigma log of the full value
};

// Compare a and b exactly; requires both mantissas present. Returns -1/0/1.
inline int scaled_cmp(const scaled_value& a, const scaled_value& b, size_t sigma) {
    if (!a.mantissa || !b.mantissa)
        throw error(errc::precondition, "scaled_cmp: exact mantissa required");
    const rational &ma = *a.mantissa, &mb = *b.mantissa;
    if (ma == 0 || mb == 0) return ma == mb ? 0 : (ma == 0 ? -1 : 1);
    rational d = a.exp - b.exp;
    long q = denominator(d).convert_to<long>();
    long p = numerator(d).convert_to<long>();
    // a <=> b  iff  ma^q * sigma^p <=> mb^q
    rational lhs = rat_pow(ma, q);
    rational rhs = rat_pow(mb, q);
    big_int s(sigma);
    if (p >= 0)
        lhs *= rational(int_pow(s, static_cast<unsigned long>(p)));
    else
        rhs *= rational(int_pow(s, static_cast<unsigned long>(-p)));
    return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}

struct sgale_trace {
    size_t sigma = 2;
    rational s = 1;
    std::vector<scaled_value> values;
};

// d^s(w) = sigma^((s-1)|w|) d(w)
inline sgale_trace to_s_gale(const capital_trace& t, const rational& s) {
    sgale_trace out;
    out.sigma = t.sigma;
    out.s = s;
    double sd = numerator(s).convert_to<double>() / denominator(s).convert_to<double>();
    for (size_t i = 0; i < t.values.size(); ++i) {
        scaled_value v;
        v.mantissa = t.values[i].exact;
        v.exp = (s - 1) * static_cast<long>(i);
        v.logv = t.values[i].logv + (sd - 1.0) * static_cast<double>(i);
        out.values.push_back(std::move(v));
    }
    return out;
}

struct check_result {
    bool ok = true;
    std::string witness;
};

// Exact Sum_a d^s(wa) == sigma^s d^s(w) for every prefix w up to max_len; each
// d is computed by an independent interpreter run from the start configuration.
inline check_result check_gale_condition(const gambler_machine& g, size_t max_len,
                                         const rational& s = 1) {
    const alphabet& sig = g.sigma();
    for (size_t n = 0; n <= max_len; ++n) {
        for (const std::string& w : lex_enumerate(sig, n)) {
            rational dw = *martingale(g, w).values.back().exact;
            rational sum = 0;
            for (char a : sig.syms) sum += *martingale(g, w + a).values.back().exact;
            scaled_value lhs{sum, (s - 1) * static_cast<long>(n + 1), 0};
            scaled_value rhs{dw, s + (s - 1) * static_cast<long>(n), 0};
            if (scaled_cmp(lhs, rhs, sig.size()) != 0)
                return {false, "gale condition fails after '" + w + "'"};
        }
    }
    return {true, ""};
}

// beta' = rho * beta + (1 - rho)/|Sigma| on every explicit bet entry; uniform
// defaults are a fixed point. Guarantees d'(w) >= rho^|w| d(w).
inline machine nonvanishing_transform(const machine& g, const rational& rho) {
    if (g.kind != machine_kind::gambler)
        throw error(errc::precondition, "nonvanishing_transform: gambler required");
    if (!(rho > 0 && rho < 1))
        throw error(errc::domain, "nonvanishing_transform: rho must be in (0,1)");
    machine out = g;
    rational mix = (1 - rho) / big_int(g.input.size());
    for (auto& [key, d] : out.bets) {
        (void)key;
        for (rational& p : d) p = rho * p + mix;
    }
    return out;
}

inline std::string format_double(double x) {
    if (x == std::numeric_limits<double>::infinity()) return "inf";
    if (x == -std::numeric_limits<double>::infinity()) return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// CSV rows (n, capital_num, capital_den, log_capital, dim_estimate) at the
// given checkpoints; num/den are blank once the exact track was dropped,
// dim_estimate is blank at n = 0.
inline void write_trace_csv(std::ostream& os, const capital_trace& t,
                            const std::vector<size_t>& checkpoints) {
    os << "n,capital_num,capital_den,log_capital,dim_estimate\n";
    for (size_t n : checkpoints) {
        if (n >= t.values.size())
            throw error(errc::usage, "checkpoint beyond trace length");
        const capital& c = t.values[n];
        os << n << ",";
        if (c.exact)
            os << numerator(*c.exact) << "," << denominator(*c.exact);
        else
            os << ",";
        os << "," << format_double(c.logv) << ",";
        if (n > 0 && c.logv != -std::numeric_limits<double>::infinity())
            os << format_double(t.dim_estimate_at(n));
        os << "\n";
    }
}

}  // namespace bpd
