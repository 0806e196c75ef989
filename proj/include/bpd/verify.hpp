#pragma once

// The acceptance suite: ten self-contained checks over the fixture machines
// and the separation sequence, each returning one pass/fail line.

#include "bpd/compressor.hpp"
#include "bpd/constructions.hpp"
#include "bpd/fixtures.hpp"
#include "bpd/gale.hpp"
#include "bpd/lz.hpp"
#include "bpd/separation.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace bpd {

struct criterion_result {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // empty on pass unless informative
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct named_machine {
    std::string name;
    machine m;
};

}  // namespace detail

// 1. Fairness and the s-gale condition hold exactly for every fixture
//    gambler on all inputs up to length 8, within the time budget.
inline criterion_result acc_fairness_gale() {
    criterion_result r{1, "gale-condition-exact", false, ""};
    auto t0 = std::chrono::steady_clock::now();
    std::vector<detail::named_machine> gs;
    gs.push_back({"g_uni", fixtures::g_uni()});
    gs.push_back({"g_all0", fixtures::g_all0()});
    gs.push_back({"nonvanishing(g_all0,1/2)",
                  nonvanishing_transform(fixtures::g_all0(), rational(1, 2))});
    gs.push_back({"separation k=3", build_separation_gambler({3, sep_mode::corrected})});
    const rational svals[] = {rational(0), rational(1, 2), rational(1), rational(2)};
    for (const auto& [name, m] : gs) {
        table_gambler tg(m);
        for (const rational& s : svals) {
            check_result c = check_gale_condition(tg, 8, s);
            if (!c.ok) {
                r.detail = name + " s=" + format_rational(s) + ": " + c.witness;
                return r;
            }
        }
    }
    double el = detail::seconds_since(t0);
    if (el >= 10.0) {
        r.detail = "exceeded 10 s budget";
        return r;
    }
    r.pass = true;
    r.detail = "4 gamblers, 4 exponents, |w| <= 8";
    return r;
}

// 2. The block-capital quotient and product identities hold with zero
//    mismatches for the fixture compressors at k in {1,2,3}.
inline criterion_result acc_block_identities() {
    criterion_result r{2, "block-identities-exact", false, ""};
    std::vector<detail::named_machine> cs;
    cs.push_back({"c_id", fixtures::c_id()});
    cs.push_back({"c_drop0", fixtures::c_drop0()});
    cs.push_back({"random2", fixtures::random_compressor()});
    alphabet bin = binary_alphabet();
    for (const auto& [name, m] : cs) {
        for (int k : {1, 2, 3}) {
            for (size_t len = 0; len <= 6; len += static_cast<size_t>(k)) {
                for (const std::string& w : lex_enumerate(bin, len)) {
                    check_result c = verify_block_identities(m, k, w);
                    if (!c.ok) {
                        r.detail = name + " k=" + std::to_string(k) + " w=" + w + ": " + c.witness;
                        return r;
                    }
                }
            }
        }
    }
    r.pass = true;
    r.detail = "3 compressors, k in {1,2,3}, block-aligned |w| <= 6";
    return r;
}

// 3. The capital lower bound holds exactly for the information-lossless
//    fixtures at k in {2,3} on all inputs up to length 6.
inline criterion_result acc_capital_lower_bound() {
    criterion_result r{3, "capital-lower-bound", false, ""};
    std::vector<detail::named_machine> cs;
    cs.push_back({"c_id", fixtures::c_id()});
    cs.push_back({"table(C(g_uni,2))", tabulate(gambler_to_compressor(fixtures::g_uni(), 2)).m});
    for (const auto& [name, m] : cs) {
        for (int k : {2, 3}) {
            check_result c = verify_capital_lower_bound(m, k, 6);
            if (!c.ok) {
                r.detail = name + " k=" + std::to_string(k) + ": " + c.witness;
                return r;
            }
        }
    }
    r.pass = true;
    r.detail = "c_id and tabulated block coder, k in {2,3}, |w| <= 6";
    return r;
}

// 4. Block coding: information-lossless to length 8, prefix-free block codes
//    with Kraft sum <= 1, output upper bound exact to length 8, and the exact
//    4/3 ratio for the uniform gambler at k=3.
inline criterion_result acc_block_coding() {
    criterion_result r{4, "block-coding-suite", false, ""};
    std::vector<detail::named_machine> gs;
    gs.push_back({"g_uni", fixtures::g_uni()});
    gs.push_back({"nonvanishing(g_all0,1/2)",
                  nonvanishing_transform(fixtures::g_all0(), rational(1, 2))});
    alphabet bin = binary_alphabet();
    for (const auto& [name, m] : gs) {
        for (int k : {1, 2, 3}) {
            block_compressor bc = gambler_to_compressor(m, k);
            il_result il = il_check(bc, 8);
            if (!il.il) {
                r.detail = name + " k=" + std::to_string(k) + ": not IL, '" + il.witness_a +
                           "' vs '" + il.witness_b + "'";
                return r;
            }
            // every block-start configuration reachable from inputs up to 8
            std::set<std::pair<int, std::string>> cfgs;
            for (size_t len = 0; len <= 8; len += static_cast<size_t>(k)) {
                for (const std::string& w : lex_enumerate(bin, len)) {
                    configuration cfg{bc.base().start_state,
                                      std::string(2 * static_cast<size_t>(k),
                                                  bc.base().start_stack)};
                    for (char b : w) cfg = step(bc.base(), cfg, b).next;
                    cfgs.insert({cfg.state, cfg.stack});
                }
            }
            for (const auto& [st, stk] : cfgs) {
                const sfe_code& tbl = bc.code_table_at({st, stk});
                if (!tbl.prefix_free()) {
                    r.detail = name + " k=" + std::to_string(k) + ": block code not prefix-free";
                    return r;
                }
                if (tbl.kraft() > rational(1)) {
                    r.detail = name + " k=" + std::to_string(k) + ": Kraft sum exceeds 1";
                    return r;
                }
            }
            check_result c = verify_output_upper_bound(m, k, 8);
            if (!c.ok) {
                r.detail = name + " k=" + std::to_string(k) + ": " + c.witness;
                return r;
            }
        }
    }
    block_compressor bc3 = gambler_to_compressor(fixtures::g_uni(), 3);
    for (size_t len : {3u, 6u, 9u}) {
        for (const std::string& w : lex_enumerate(bin, len)) {
            size_t out = compress(bc3, w).size();
            if (rational(big_int(out)) / big_int(w.size()) != rational(4, 3)) {
                r.detail = "g_uni k=3 ratio differs from 4/3 at w=" + w;
                return r;
            }
        }
    }
    r.pass = true;
    r.detail = "IL to 8, prefix-free + Kraft, output bound to 8, 4/3 ratio";
    return r;
}

// 5. The nonvanishing transform loses at most the rho^|w| factor, exactly.
inline criterion_result acc_nonvanishing() {
    criterion_result r{5, "nonvanishing-transform-bound", false, ""};
    alphabet bin = binary_alphabet();
    table_gambler base(fixtures::g_all0());
    for (const rational& rho : {rational(1, 2), rational(3, 4)}) {
        table_gambler prim(nonvanishing_transform(fixtures::g_all0(), rho));
        for (size_t n = 0; n <= 8; ++n) {
            for (const std::string& w : lex_enumerate(bin, n)) {
                capital_trace a = martingale(base, w);
                capital_trace b = martingale(prim, w);
                rational bound = rat_pow(rho, static_cast<long>(n)) * *a.values.back().exact;
                if (*b.values.back().exact < bound) {
                    r.detail = "rho=" + format_rational(rho) + " w=" + w;
                    return r;
                }
            }
        }
    }
    r.pass = true;
    r.detail = "rho in {1/2,3/4}, |w| <= 8";
    return r;
}

// 6. LZ parses every segment of S(3) through S_6 into exactly the no-long-run
//    strings plus the two flags, with no straddling phrases.
inline criterion_result acc_parse_claim() {
    criterion_result r{6, "lz-parse-claim", false, ""};
    auto t0 = std::chrono::steady_clock::now();
    check_result c = verify_parse_claim(3, 6);
    double el = detail::seconds_since(t0);
    if (!c.ok) {
        r.detail = c.witness;
        return r;
    }
    if (el >= 5.0) {
        r.detail = "exceeded 5 s budget";
        return r;
    }
    r.pass = true;
    r.detail = "k=3 through S_6";
    return r;
}

// 7. LZ compresses S(3) through S_12 no better than ratio 0.60, and the k=5
//    sequence compresses strictly worse at the same segment index.
inline criterion_result acc_lz_ratio() {
    criterion_result r{7, "lz-ratio-surrogate", false, ""};
    alphabet bin = binary_alphabet();
    rational r3 = lz_ratio(bin, generate_s(3, 12).text);
    rational r5 = lz_ratio(bin, generate_s(5, 12).text);
    std::ostringstream os;
    os << "k=3: " << format_double(r3.convert_to<double>())
       << ", k=5: " << format_double(r5.convert_to<double>());
    r.detail = os.str();
    if (r3 < rational(3, 5)) {
        r.detail += " (k=3 ratio below 0.60)";
        return r;
    }
    if (!(r5 > r3)) {
        r.detail += " (k=5 not strictly above k=3)";
        return r;
    }
    r.pass = true;
    return r;
}

// 8. The corrected gambler on S(3): capital positive through S_12, log2
//    capital after each complete segment equals the closed form exactly, and
//    the dimension estimate at S_12 is <= 0.56 and non-increasing from S_8 on.
inline criterion_result acc_separation_gambler() {
    criterion_result r{8, "separation-gambler-capital", false, ""};
    separation_sequence s = generate_s(3, 12);
    machine gm = build_separation_gambler({3, sep_mode::corrected});
    table_gambler tg(gm);
    size_t exact_limit = s.end_of(6);
    capital_trace tr = martingale(tg, s.text, exact_limit);
    for (size_t i = 0; i <= tr.steps(); ++i) {
        if (tr.values[i].is_zero()) {
            r.detail = "capital hit zero at position " + std::to_string(i);
            return r;
        }
    }
    long expo = 0;
    for (int n = 3; n <= 12; ++n) {
        expo += static_cast<long>(n) * static_cast<long>(split_zones(n, 3).x.size()) - 1;
        size_t pos = s.end_of(n);
        if (n <= 6) {
            const auto& v = tr.values[pos].exact;
            if (!v || *v != rat_pow(rational(2), expo)) {
                r.detail = "exact capital after S_" + std::to_string(n) + " differs from 2^" +
                           std::to_string(expo);
                return r;
            }
        } else if (std::fabs(tr.log_at(pos) - static_cast<double>(expo)) > 1e-6) {
            r.detail = "log capital after S_" + std::to_string(n) + " differs from " +
                       std::to_string(expo);
            return r;
        }
    }
    double est12 = tr.dim_estimate_at(s.end_of(12));
    r.detail = "dim estimate at S_12 = " + format_double(est12);
    if (est12 > 0.56) {
        r.detail += " (> 0.56)";
        return r;
    }
    for (int n = 8; n < 12; ++n) {
        double a = tr.dim_estimate_at(s.end_of(n));
        double b = tr.dim_estimate_at(s.end_of(n + 1));
        if (b > a + 0.01) {
            r.detail += " (estimate rises after S_" + std::to_string(n) + ")";
            return r;
        }
    }
    r.pass = true;
    return r;
}

// 9. The literal run-threshold gambler goes broke inside S_3: its detector
//    fires on the k-run crossing a boundary between adjacent X-zone strings.
inline criterion_result acc_negative_control() {
    criterion_result r{9, "paper-mode-negative-control", false, ""};
    auto t0 = std::chrono::steady_clock::now();
    separation_sequence s = generate_s(3, 3);
    machine gm = build_separation_gambler({3, sep_mode::paper_faithful});
    table_gambler tg(gm);
    auto cur = tg.fresh();
    rational cap(1);
    size_t zero_at = s.text.size(), detect_at = s.text.size();
    for (size_t i = 0; i < s.text.size(); ++i) {
        bet_dist b = cur->bets();
        cap *= rational(2) * b[binary_alphabet().index(s.text[i])];
        cur->advance(s.text[i]);
        if (cap == 0 && zero_at == s.text.size()) zero_at = i;
        if (cur->view().state == "qr1" && detect_at == s.text.size()) detect_at = i;
    }
    double el = detail::seconds_since(t0);
    size_t seg_begin = s.early_len, seg_end = s.end_of(3);
    if (zero_at >= seg_end || zero_at < seg_begin) {
        r.detail = "capital did not reach zero inside S_3";
        return r;
    }
    size_t x_begin = 0, x_end = 0;
    for (const zone_record& z : s.zones)
        if (z.zone == "X" && z.n == 3) {
            x_begin = z.begin;
            x_end = z.end;
        }
    if (detect_at < x_begin || detect_at >= x_end) {
        r.detail = "detector did not fire inside the X zone (position " +
                   std::to_string(detect_at) + ")";
        return r;
    }
    // the triggering 1-run must lie strictly inside the zone: a spurious hit
    size_t lo = detect_at, hi = detect_at;
    while (lo > x_begin && s.text[lo - 1] == '1') --lo;
    while (hi + 1 < x_end && s.text[hi + 1] == '1') ++hi;
    if (lo == x_begin || hi == x_end - 1) {
        r.detail = "triggering run touches the zone edge";
        return r;
    }
    if (el >= 1.0) {
        r.detail = "exceeded 1 s budget";
        return r;
    }
    r.pass = true;
    r.detail = "broke at position " + std::to_string(zero_at) + ", detector fired at " +
               std::to_string(detect_at);
    return r;
}

// 10. The CSV emitters behind the sequence experiments are deterministic.
inline criterion_result acc_determinism() {
    criterion_result r{10, "csv-determinism", false, ""};
    alphabet bin = binary_alphabet();
    auto emit = [&]() {
        std::ostringstream os;
        separation_sequence s6 = generate_s(3, 6);
        write_zones_csv(os, s6);
        separation_sequence s12 = generate_s(3, 12);
        std::vector<size_t> cps;
        for (const auto& [n, e] : s12.segment_ends) cps.push_back(e);
        write_lz_csv(os, bin, s12.text, cps);
        table_gambler tg(build_separation_gambler({3, sep_mode::corrected}));
        capital_trace tr = martingale(tg, s12.text, s12.end_of(6));
        write_trace_csv(os, tr, cps);
        return os.str();
    };
    std::string a = emit(), b = emit();
    if (a != b) {
        r.detail = "repeated emission differs";
        return r;
    }
    r.pass = true;
    r.detail = std::to_string(a.size()) + " bytes, byte-identical";
    return r;
}

inline std::vector<criterion_result> run_acceptance() {
    std::vector<criterion_result (*)()> fns = {
        acc_fairness_gale,  acc_block_identities,      acc_capital_lower_bound,
        acc_block_coding,   acc_nonvanishing,          acc_parse_claim,
        acc_lz_ratio,       acc_separation_gambler,    acc_negative_control,
        acc_determinism};
    std::vector<criterion_result> out;
    int id = 1;
    for (auto* fn : fns) {
        try {
            out.push_back(fn());
        } catch (const std::exception& e) {
            out.push_back({id, "criterion-" + std::to_string(id), false,
                           std::string("exception: ") + e.what()});
        }
        ++id;
    }
    return out;
}

}  // namespace bpd
