#include "bpd/lz.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <sstream>

using namespace bpd;

namespace {
const alphabet bin = binary_alphabet();

std::string rebuild(const lz_phrase_table& t) {
    std::string s;
    for (size_t i = 1; i <= t.count(); ++i) s += t.phrase_string(i);
    if (t.final_incomplete) s += t.phrase_string(static_cast<size_t>(t.final_incomplete));
    return s;
}
}  // namespace

TEST_CASE("parse of 0000") {
    lz_phrase_table t = lz_parse(bin, "0000");
    CHECK(t.count() == 2);  // 0, 00; the final 0 matches phrase 1
    CHECK(t.phrase_string(1) == "0");
    CHECK(t.phrase_string(2) == "00");
    CHECK(t.final_incomplete == 1);
    CHECK(lz_output_length(t) == 5);  // (0+1) + (1+1) + ceil(log2 3)
}

TEST_CASE("parse of 001011") {
    lz_phrase_table t = lz_parse(bin, "001011");
    REQUIRE(t.count() == 3);
    CHECK(t.phrase_string(1) == "0");
    CHECK(t.phrase_string(2) == "01");
    CHECK(t.phrase_string(3) == "011");
    CHECK(t.final_incomplete == 0);
    CHECK(lz_output_length(t) == 6);
    CHECK(lz_ratio(bin, "001011") == rational(1));
}

TEST_CASE("unary-ish input compresses to ratio one at length 16") {
    std::string w(16, '0');
    lz_phrase_table t = lz_parse(bin, w);
    CHECK(t.count() == 5);
    CHECK(t.final_incomplete == 1);
    CHECK(lz_output_length(t) == 16);
    CHECK(lz_ratio(bin, w) == rational(1));
}

TEST_CASE("empty input") {
    lz_phrase_table t = lz_parse(bin, "");
    CHECK(t.count() == 0);
    CHECK(t.final_incomplete == 0);
    CHECK(lz_output_length(t) == 0);
    CHECK_THROWS_AS(lz_ratio(bin, ""), error);
}

TEST_CASE("phrases are distinct and prefix-closed") {
    std::mt19937 rng(11);
    std::string w;
    for (int i = 0; i < 10000; ++i) w += rng() % 2 ? '1' : '0';
    lz_phrase_table t = lz_parse(bin, w);
    CHECK(rebuild(t) == w);
    std::set<std::string> seen;
    for (size_t i = 1; i <= t.count(); ++i) {
        std::string p = t.phrase_string(i);
        CHECK(seen.insert(p).second);  // distinct
        if (p.size() > 1) CHECK(seen.count(p.substr(0, p.size() - 1)));  // prefix present
        CHECK(t.parent[i - 1] < static_cast<int>(i));
    }
}

TEST_CASE("pointer accounting matches the closed form") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::string w;
        size_t len = 1 + rng() % 400;
        for (size_t i = 0; i < len; ++i) w += rng() % 2 ? '1' : '0';
        lz_phrase_table t = lz_parse(bin, w);
        size_t total = 0;
        for (size_t i = 1; i <= t.count(); ++i) {
            size_t bits = 0, v = i - 1;
            // ceil(log2 i) pointer digits plus one literal symbol
            while ((size_t{1} << bits) < i) ++bits;
            (void)v;
            total += bits + 1;
        }
        if (t.final_incomplete) {
            size_t bits = 0;
            while ((size_t{1} << bits) < t.count() + 1) ++bits;
            total += bits;
        }
        CHECK(lz_output_length(t) == total);
    }
}

TEST_CASE("gamma pointer coding is a monotone variant") {
    lz_phrase_table t = lz_parse(bin, "001011");
    // parents 0,1,2 -> gamma costs 1,3,3; plus one literal each
    CHECK(lz_output_length(t, pointer_coding::gamma) == 10);
    std::string w(16, '0');
    lz_phrase_table u = lz_parse(bin, w);
    // parents 0,1,2,3,4; tail phrase 1 -> 2*floor(log2 2)+1 = 3
    CHECK(lz_output_length(u, pointer_coding::gamma) == (1 + 3 + 3 + 5 + 5) + 5 + 3);
}

TEST_CASE("scan checkpoints agree with independent reparses") {
    std::mt19937 rng(3);
    std::string w;
    for (int i = 0; i < 600; ++i) w += rng() % 2 ? '1' : '0';
    std::vector<size_t> cps = {0, 1, 17, 130, 599, 600};
    auto rows = lz_scan(bin, w, cps);
    REQUIRE(rows.size() == cps.size());
    for (size_t j = 0; j < cps.size(); ++j) {
        lz_phrase_table t = lz_parse(bin, w.substr(0, cps[j]));
        CHECK(rows[j].n == cps[j]);
        CHECK(rows[j].phrases == t.count());
        CHECK(rows[j].out_len == lz_output_length(t));
    }
    CHECK_THROWS_AS(lz_scan(bin, w, {601}), error);
    CHECK_THROWS_AS(lz_scan(bin, w, {5, 5}), error);
}

TEST_CASE("segment phrase extraction and straddle detection") {
    // phrases: 0 | 01 | 011 bounds [0,1) [1,3) [3,6)
    lz_phrase_table t = lz_parse(bin, "001011");
    CHECK(lz_phrases_of_segment(t, 0, 1) == std::vector<size_t>{1});
    CHECK(lz_phrases_of_segment(t, 1, 6) == std::vector<size_t>{2, 3});
    CHECK(lz_phrases_of_segment(t, 0, 6).size() == 3);
    CHECK(lz_phrases_of_segment(t, 3, 3).empty());
    CHECK_THROWS_AS(lz_phrases_of_segment(t, 0, 2), error);   // cuts phrase 2
    CHECK_THROWS_AS(lz_phrases_of_segment(t, 2, 6), error);   // cuts phrase 2
    lz_phrase_table u = lz_parse(bin, "0000");
    CHECK_THROWS_AS(lz_phrases_of_segment(u, 0, 4), error);   // tail overlaps
    CHECK(lz_phrases_of_segment(u, 0, 3) == std::vector<size_t>{1, 2});
}

TEST_CASE("lz CSV format") {
    std::ostringstream os;
    write_lz_csv(os, bin, "001011", {0, 3, 6});
    CHECK(os.str() ==
          "n,phrase_count,output_len,ratio\n"
          "0,0,0,\n"
          "3,2,3,1\n"
          "6,3,6,1\n");
}

TEST_CASE("phrase dump lists parent and symbol") {
    std::ostringstream os;
    write_phrase_dump(os, lz_parse(bin, "001011"));
    CHECK(os.str() == "1 0 0\n2 1 1\n3 2 1\n");
}
