#pragma once

// Alphabets, finite strings, and the dual-track capital value (exact rational
// alongside a base-|Sigma| log float). Strings are std::string over single-char
// symbols; the alphabet fixes symbol order for enumeration and bet vectors.

#include "bpd/rational.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpd {

// Error taxonomy surfaced through exceptions; the CLI maps kinds to exit codes.
enum class errc {
    usage,
    syntax,
    validation,
    undefined_transition,
    lambda_overflow,
    stack_underflow,
    capacity,
    domain,
    zero_capital,
    degenerate_zone,
    precondition,
    io,
};

struct error : std::runtime_error {
    errc kind;
    error(errc k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct alphabet {
    std::string syms;  // distinct visible characters, enumeration order

    alphabet() = default;
    explicit alphabet(std::string s) : syms(std::move(s)) {
        if (syms.empty()) throw error(errc::domain, "alphabet: empty");
        for (size_t i = 0; i < syms.size(); ++i) {
            if (syms[i] <= ' ' || syms[i] == '#' || syms[i] == '~')
                throw error(errc::domain, "alphabet: symbol must be visible and not '#' or '~'");
            if (syms.find(syms[i], i + 1) != std::string::npos)
                throw error(errc::domain, std::string("alphabet: duplicate symbol '") + syms[i] + "'");
        }
    }

    size_t size() const { return syms.size(); }
    bool contains(char c) const { return syms.find(c) != std::string::npos; }
    int index(char c) const {
        auto p = syms.find(c);
        if (p == std::string::npos)
            throw error(errc::domain, std::string("symbol '") + c + "' not in alphabet " + syms);
        return static_cast<int>(p);
    }
    bool operator==(const alphabet& o) const { return syms == o.syms; }
};

inline alphabet binary_alphabet() { return alphabet("01"); }

inline void check_str(const alphabet& a, const std::string& w, const char* what = "string") {
    for (char c : w)
        if (!a.contains(c))
            throw error(errc::domain,
                        std::string(what) + ": symbol '" + c + "' not in alphabet " + a.syms);
}

// Enumeration guard. BPD_ENUM_CAP overrides the default (entry count).
inline size_t enum_cap() {
    if (const char* e = std::getenv("BPD_ENUM_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(e, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
    }
    return size_t(1) << 20;
}

// All strings of length n over `a`, lexicographic in alphabet order.
inline std::vector<std::string> lex_enumerate(const alphabet& a, size_t n) {
    size_t cap = enum_cap(), total = 1;
    for (size_t i = 0; i < n; ++i) {
        if (total > cap / a.size())
            throw error(errc::capacity, "lex_enumerate: |alphabet|^n exceeds enumeration cap");
        total *= a.size();
    }
    std::vector<std::string> out;
    out.reserve(total);
    std::string cur(n, a.syms[0]);
    for (size_t t = 0;; ++t) {
        out.push_back(cur);
        if (t + 1 == total) break;
        // odometer increment, most significant on the left
        size_t i = n;
        while (i > 0) {
            --i;
            int d = a.index(cur[i]);
            if (d + 1 < static_cast<int>(a.size())) {
                cur[i] = a.syms[d + 1];
                std::fill(cur.begin() + i + 1, cur.end(), a.syms[0]);
                break;
            }
        }
    }
    return out;
}

inline std::string reversed(std::string w) {
    std::reverse(w.begin(), w.end());
    return w;
}

// log_sigma(x) as double; domain error unless x > 0 and sigma >= 2.
inline double log_sigma(const rational& x, size_t sigma) {
    if (sigma < 2) throw error(errc::domain, "log_sigma: base >= 2 required");
    if (x <= 0) throw error(errc::domain, "log_sigma: positive argument required");
    return log2_rational(x) / std::log2(static_cast<double>(sigma));
}

// Capital: exact nonnegative rational (optional, droppable for long runs) plus
// a base-|Sigma| log track. logv == -inf iff the value is zero.
struct capital {
    std::optional<rational> exact;
    double logv = 0.0;

    static capital one() { return capital{rational(1), 0.0}; }

    void times(const rational& f, size_t sigma) {
        if (f < 0) throw error(errc::domain, "capital: negative factor");
        if (exact) *exact *= f;
        if (f == 0)
            logv = -std::numeric_limits<double>::infinity();
        else if (logv != -std::numeric_limits<double>::infinity())
            logv += log_sigma(f, sigma);
    }

    void plus(const capital& o, size_t sigma) {
        if (exact && o.exact)
            *exact += *o.exact;
        else
            exact.reset();
        double a = logv, b = o.logv;
        if (a == -std::numeric_limits<double>::infinity()) { logv = b; return; }
        if (b == -std::numeric_limits<double>::infinity()) { logv = a; return; }
        double hi = std::max(a, b), lo = std::min(a, b);
        double lg2sigma = std::log2(static_cast<double>(sigma));
        logv = hi + std::log2(1.0 + std::exp2((lo - hi) * lg2sigma)) / lg2sigma;
    }

    void drop_exact() { exact.reset(); }

    bool is_zero() const {
        return exact ? *exact == 0 : logv == -std::numeric_limits<double>::infinity();
    }
};

}  // namespace bpd
