#pragma once

/*
 * Compressor evaluation: cumulative outputs, information-lossless check,
 * compression-ratio traces.
 *
 * IL means w |-> (C(w), final state) is injective over equal-length inputs;
 * checked exhaustively per length with shortest witnesses first.
 */

#include "bpd/machine.hpp"

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace bpd {

inline std::string compress(const compressor_machine& c, const std::string& w) {
    check_str(c.sigma(), w, "input");
    auto cur = c.fresh();
    std::string out;
    for (char b : w) out += cur->advance(b);
    return out;
}

// output_lengths(c, w)[i] = |C(w[0..i))|
inline std::vector<size_t> output_lengths(const compressor_machine& c, const std::string& w) {
    check_str(c.sigma(), w, "input");
    auto cur = c.fresh();
    std::vector<size_t> lens{0};
    size_t total = 0;
    for (char b : w) {
        total += cur->advance(b).size();
        lens.push_back(total);
    }
    return lens;
}

struct il_result {
    bool il = true;
    std::string witness_a, witness_b;  // equal-length inputs with equal (output, state)
};

inline il_result il_check(const compressor_machine& c, size_t max_len) {
    const alphabet& sig = c.sigma();
    for (size_t n = 1; n <= max_len; ++n) {
        std::map<std::pair<std::string, std::string>, std::string> seen;
        for (const std::string& w : lex_enumerate(sig, n)) {
            auto cur = c.fresh();
            std::string out;
            for (char b : w) out += cur->advance(b);
            auto key = std::make_pair(out, cur->view().state);
            auto [it, fresh] = seen.emplace(key, w);
            if (!fresh) return {false, it->second, w};
        }
    }
    return {true, "", ""};
}

inline rational compression_ratio(const compressor_machine& c, const std::string& w) {
    if (w.empty()) throw error(errc::domain, "compression ratio needs nonempty input");
    return rational(big_int(compress(c, w).size())) / big_int(w.size());
}

// CSV rows (n, output_len, ratio_num, ratio_den); ratio blank at n = 0.
inline void write_compression_csv(std::ostream& os, const compressor_machine& c,
                                  const std::string& w,
                                  const std::vector<size_t>& checkpoints) {
    std::vector<size_t> lens = output_lengths(c, w);
    os << "n,output_len,ratio_num,ratio_den\n";
    for (size_t n : checkpoints) {
        if (n >= lens.size()) throw error(errc::usage, "checkpoint beyond input length");
        os << n << "," << lens[n] << ",";
        if (n > 0) {
            rational r = rational(big_int(lens[n])) / big_int(n);
            os << numerator(r) << "," << denominator(r);
        } else {
            os << ",";
        }
        os << "\n";
    }
}

}  // namespace bpd
