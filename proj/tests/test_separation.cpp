#include "bpd/gale.hpp"
#include "bpd/separation.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <string_view>

using namespace bpd;

TEST_CASE("counting strings without a k-run") {
    // k=3: tribonacci-style growth
    const long expect3[] = {1, 2, 4, 7, 13, 24, 44, 81, 149, 274, 504, 927, 1705};
    for (int n = 0; n <= 12; ++n) CHECK(count_t(n, 3) == big_int(expect3[n]));
    CHECK(count_t(3, 2) == 5);
    CHECK(count_t(0, 5) == 1);
    CHECK_THROWS_AS(count_t(-1, 3), error);
    CHECK_THROWS_AS(count_t(4, 1), error);
}

TEST_CASE("enumeration is lex-ordered, complete, run-bounded") {
    auto v = enumerate_t(3, 3);
    CHECK(v == std::vector<std::string>{"000", "001", "010", "011", "100", "101", "110"});
    for (int k : {2, 3, 5}) {
        for (int n = 1; n <= 10; ++n) {
            auto t = enumerate_t(n, k);
            CHECK(big_int(t.size()) == count_t(n, k));
            CHECK(std::is_sorted(t.begin(), t.end()));
            for (const std::string& w : t)
                CHECK(w.find(std::string(static_cast<size_t>(k), '1')) == std::string::npos);
        }
    }
}

TEST_CASE("growth bound: |T_n| >= 2^((1-1/k)n)") {
    for (int k : {2, 3, 5}) {
        for (int n = 1; n <= 12; ++n) {
            big_int lhs = int_pow(count_t(n, k), static_cast<unsigned long>(k));
            big_int rhs = int_pow(big_int(2), static_cast<unsigned long>((k - 1) * n));
            CHECK(lhs >= rhs);
        }
    }
}

TEST_CASE("every length-n string is a prefix of some longer run-bounded string") {
    for (int n = 1; n <= 10; ++n) {
        std::set<std::string> prefixes;
        for (const std::string& w : enumerate_t(n + 1, 3)) prefixes.insert(w.substr(0, n));
        for (const std::string& w : enumerate_t(n, 3)) CHECK(prefixes.count(w));
    }
}

TEST_CASE("palindrome count stays small") {
    for (int n = 3; n <= 16; ++n) {
        zone_split z = split_zones(n, 3);
        CHECK(big_int(z.a.size()) <= int_pow(big_int(2), (n + 1) / 2));
    }
}

TEST_CASE("zone split at n=3, k=3") {
    zone_split z = split_zones(3, 3);
    CHECK(z.a == std::vector<std::string>{"000", "010", "101"});
    CHECK(z.x == std::vector<std::string>{"001", "110"});
    CHECK(z.y == std::vector<std::string>{"100", "011"});
}

TEST_CASE("zone split invariants for larger n") {
    for (int n = 3; n <= 9; ++n) {
        zone_split z = split_zones(n, 3);
        // pairs partition T_n together with palindromes
        CHECK(z.a.size() + 2 * z.x.size() == enumerate_t(n, 3).size());
        REQUIRE_FALSE(z.x.empty());
        CHECK(z.x.front().front() == '0');  // X zone opens with 0
        CHECK(z.x.back().back() == '0');    // X zone closes with 0
        std::set<std::string> all;
        for (size_t i = 0; i < z.x.size(); ++i) {
            CHECK(z.y[i] == reversed(z.x[i]));
            all.insert(z.x[i]);
            all.insert(z.y[i]);
        }
        CHECK(all.size() == 2 * z.x.size());
    }
    // frozen pair counts t_n for k=3
    const size_t tn[] = {2, 5, 9, 19, 35, 69};
    for (int n = 3; n <= 8; ++n) CHECK(split_zones(n, 3).x.size() == tn[n - 3]);
    // frozen palindrome counts u_n for k=3
    const size_t un[] = {3, 3, 6, 6, 11, 11};
    for (int n = 3; n <= 8; ++n) CHECK(split_zones(n, 3).a.size() == un[n - 3]);
}

TEST_CASE("degenerate zones are reported") {
    CHECK_THROWS_AS(split_zones(2, 2), error);  // the sole pair 01/10 cannot anchor both ends
    CHECK_THROWS_AS(split_zones(2, 3), error);  // n < k
}

TEST_CASE("early segment layout") {
    CHECK(early_segment_length(3) == 22);
    separation_sequence s = generate_s(3, 3);
    CHECK(s.early_len == 22);
    CHECK(s.text.substr(0, 22) == "0100011011" + std::string("111111111111"));
    CHECK(s.text.rfind("0100011011111111", 0) == 0);
}

TEST_CASE("segment S_3 layout and zone records") {
    separation_sequence s = generate_s(3, 3);
    REQUIRE(s.zones.size() == 6);
    CHECK(s.zones[0].zone == "early");
    CHECK(s.zones[0].begin == 0);
    CHECK(s.zones[0].end == 22);
    const char* names[] = {"A", "flag1", "X", "flag2", "Y"};
    size_t begins[] = {22, 31, 37, 43, 50};
    size_t ends[] = {31, 37, 43, 50, 56};
    for (int i = 0; i < 5; ++i) {
        CHECK(s.zones[i + 1].zone == names[i]);
        CHECK(s.zones[i + 1].begin == begins[i]);
        CHECK(s.zones[i + 1].end == ends[i]);
        CHECK(s.zones[i + 1].n == 3);
    }
    CHECK(s.text.substr(22, 9) == "000010101");   // palindromes
    CHECK(s.text.substr(31, 6) == "111111");      // 1^6
    CHECK(s.text.substr(37, 6) == "001110");      // x_1 x_2
    CHECK(s.text.substr(43, 7) == "1111111");     // 1^7
    CHECK(s.text.substr(50, 6) == "011100");      // reverse of the X text
    CHECK(s.end_of(3) == 56);
    CHECK(s.text.size() == 56);
    CHECK_THROWS_AS(s.end_of(4), error);
}

TEST_CASE("sequence sizes at depth 12") {
    separation_sequence s = generate_s(3, 12);
    CHECK(s.text.size() == 40711);
    CHECK(s.end_of(12) == s.text.size());
    separation_sequence s5 = generate_s(5, 12);
    CHECK(s5.early_len == 133);
    CHECK(s5.text.size() == 78981);
}

TEST_CASE("generate_s argument checks") {
    CHECK_THROWS_AS(generate_s(1, 5), error);
    CHECK_THROWS_AS(generate_s(3, 2), error);
}

TEST_CASE("zone CSV") {
    separation_sequence s = generate_s(3, 3);
    std::ostringstream os;
    write_zones_csv(os, s);
    CHECK(os.str() ==
          "start,end,zone,n\n"
          "0,22,early,0\n"
          "22,31,A,3\n"
          "31,37,flag1,3\n"
          "37,43,X,3\n"
          "43,50,flag2,3\n"
          "50,56,Y,3\n");
}

TEST_CASE("no zone-internal run reaches the detection threshold") {
    int k = 3, tau = 2 * k - 1;
    separation_sequence s = generate_s(k, 8);
    for (const zone_record& z : s.zones) {
        std::string_view zone(s.text.data() + z.begin, z.end - z.begin);
        size_t run = 0, max_run = 0;
        for (char c : zone) {
            run = c == '1' ? run + 1 : 0;
            max_run = std::max(max_run, run);
        }
        if (z.zone == "flag1" || z.zone == "flag2") {
            CHECK(max_run >= static_cast<size_t>(2 * k));
        } else if (z.zone == "A" || z.zone == "X") {
            CHECK(max_run < static_cast<size_t>(tau));
        }
    }
}

TEST_CASE("LZ parse claim holds through S_6") {
    CHECK(verify_parse_claim(3, 6).ok);
    CHECK(verify_parse_claim(4, 6).ok);
}

TEST_CASE("corrected gambler: structure and exact capital") {
    machine m = build_separation_gambler({3, sep_mode::corrected});
    validation_report rep = validate(m);
    REQUIRE(rep.ok());
    for (const auto& w : rep.warnings) CHECK(w.code != "non-total");

    separation_sequence s = generate_s(3, 4);
    table_gambler tg(m);
    capital_trace t = martingale(tg, s.text);
    for (const capital& c : t.values) CHECK_FALSE(c.is_zero());
    // log2 gain per segment: n*t_n - 1
    CHECK(*t.values[s.end_of(3)].exact == rat_pow(rational(2), 3 * 2 - 1));
    CHECK(*t.values[s.end_of(4)].exact == rat_pow(rational(2), (3 * 2 - 1) + (4 * 5 - 1)));
    // dimension estimate after S_3: 1 - 5/56
    CHECK(t.dim_estimate_at(56) == Catch::Approx(1.0 - 5.0 / 56.0).margin(1e-12));
}

TEST_CASE("corrected gambler rejects k < 3; paper mode allows k = 2") {
    CHECK_THROWS_AS(build_separation_gambler({2, sep_mode::corrected}), error);
    machine m = build_separation_gambler({2, sep_mode::paper_faithful});
    CHECK(validate(m).ok());
}

TEST_CASE("paper-faithful gambler goes broke inside S_3") {
    machine m = build_separation_gambler({3, sep_mode::paper_faithful});
    REQUIRE(validate(m).ok());
    separation_sequence s = generate_s(3, 3);
    table_gambler tg(m);
    auto cur = tg.fresh();
    rational cap(1);
    size_t zero_at = 0, detect_at = 0;
    for (size_t i = 0; i < s.text.size(); ++i) {
        bet_dist b = cur->bets();
        cap *= rational(2) * b[binary_alphabet().index(s.text[i])];
        cur->advance(s.text[i]);
        if (cap == 0 && zero_at == 0) zero_at = i;
        if (cur->view().state == "qr1" && detect_at == 0) detect_at = i;
    }
    CHECK(detect_at == 41);  // inside the X zone, on the run crossing x_1|x_2
    CHECK(zero_at == 51);    // betting on the stale stack during the Y zone
    CHECK(cap == 0);
}

TEST_CASE("spec reporting exponent") {
    separation_spec spec{4, sep_mode::corrected};
    CHECK(spec.a() == Catch::Approx(0.75));
}
