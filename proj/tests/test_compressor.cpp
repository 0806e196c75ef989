#include "bpd/compressor.hpp"
#include "bpd/fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace bpd;

TEST_CASE("identity compressor copies input") {
    table_compressor c(fixtures::c_id());
    CHECK(compress(c, "0110") == "0110");
    CHECK(compress(c, "") == "");
    CHECK(output_lengths(c, "0110") == std::vector<size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("drop0 erases zeros") {
    table_compressor c(fixtures::c_drop0());
    CHECK(compress(c, "0101") == "11");
    CHECK(compress(c, "0000") == "");
    CHECK(output_lengths(c, "0101") == std::vector<size_t>{0, 0, 1, 1, 2});
}

TEST_CASE("il_check accepts the identity and rejects drop0") {
    table_compressor id(fixtures::c_id());
    il_result a = il_check(id, 6);
    CHECK(a.il);

    table_compressor drop(fixtures::c_drop0());
    il_result b = il_check(drop, 6);
    REQUIRE_FALSE(b.il);
    CHECK(b.witness_a == "01");
    CHECK(b.witness_b == "10");
    CHECK(b.witness_a.size() == b.witness_b.size());
    CHECK(compress(drop, b.witness_a) == compress(drop, b.witness_b));
}

TEST_CASE("compression ratio is exact") {
    table_compressor c(fixtures::c_id());
    CHECK(compression_ratio(c, "0101") == rational(1));
    table_compressor d(fixtures::c_drop0());
    CHECK(compression_ratio(d, "0101") == rational(1, 2));
    CHECK_THROWS_AS(compression_ratio(c, ""), error);
}

TEST_CASE("random fixture is a valid total compressor") {
    machine m = fixtures::random_compressor();
    validation_report rep = validate(m);
    REQUIRE(rep.ok());
    for (const auto& w : rep.warnings) CHECK(w.code != "non-total");
    table_compressor c(m);
    std::string out1 = compress(c, "01101001");
    std::string out2 = compress(c, "01101001");
    CHECK(out1 == out2);
    CHECK(fixtures::random_compressor() == fixtures::random_compressor());
}

TEST_CASE("compression CSV format") {
    table_compressor c(fixtures::c_drop0());
    std::ostringstream os;
    write_compression_csv(os, c, "0101", {0, 2, 4});
    CHECK(os.str() ==
          "n,output_len,ratio_num,ratio_den\n"
          "0,0,,\n"
          "2,1,1,2\n"
          "4,2,1,2\n");
    CHECK_THROWS_AS(write_compression_csv(os, c, "01", {5}), error);
}
