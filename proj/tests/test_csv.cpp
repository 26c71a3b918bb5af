#include <doctest.h>

#include <sstream>

#include "hdb/csv.hpp"
#include "hdb/errors.hpp"

using namespace hdb;

TEST_CASE("plain rows") {
    std::istringstream in("a,b,c\n1,2,3\n");
    auto rows = csv::read_all(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == csv::Row{"a", "b", "c"});
    CHECK(rows[1] == csv::Row{"1", "2", "3"});
}

TEST_CASE("quoted fields with separators, quotes and newlines") {
    std::istringstream in("name,note\n\"Vegetables, Other\",\"he said \"\"hi\"\"\"\n\"two\nlines\",x\n");
    auto rows = csv::read_all(in);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][0] == "Vegetables, Other");
    CHECK(rows[1][1] == "he said \"hi\"");
    CHECK(rows[2][0] == "two\nlines");
}

TEST_CASE("CRLF endings and UTF-8 BOM") {
    std::istringstream in("\xEF\xBB\xBFx,y\r\n1,2\r\n");
    auto rows = csv::read_all(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == "x");
    CHECK(rows[1][1] == "2");
}

TEST_CASE("missing trailing newline still yields the last row") {
    std::istringstream in("a,b\n1,2");
    auto rows = csv::read_all(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][1] == "2");
}

TEST_CASE("empty trailing field") {
    std::istringstream in("a,b,\n");
    auto rows = csv::read_all(in);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].size() == 3);
    CHECK(rows[0][2] == "");
}

TEST_CASE("unterminated quote throws") {
    std::istringstream in("a,\"oops\n");
    CHECK_THROWS_AS(csv::read_all(in), Error);
}

TEST_CASE("header lookup is case- and space-insensitive") {
    csv::Header h({"Area Code", "Item Code", " Value "});
    CHECK(h.require("area code") == 0);
    CHECK(h.require("Value") == 2);
    CHECK(!h.find("Year"));
    CHECK_THROWS_AS(h.require("Year"), MissingColumn);
}

TEST_CASE("write_row quotes only when needed") {
    std::ostringstream out;
    csv::write_row(out, {"plain", "with,comma", "with\"quote", ""});
    CHECK(out.str() == "plain,\"with,comma\",\"with\"\"quote\",\n");
}

TEST_CASE("round trip through writer and reader") {
    std::ostringstream out;
    csv::write_row(out, {"a,b", "c\nd", "\"e\""});
    std::istringstream in(out.str());
    auto rows = csv::read_all(in);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0] == csv::Row{"a,b", "c\nd", "\"e\""});
}

TEST_CASE("fixed formatting") {
    CHECK(csv::format_fixed(0.4321999, 3) == "0.432");
    CHECK(csv::format_fixed(1.0, 3) == "1.000");
    CHECK(csv::format_fixed(-0.00001, 3) == "0.000");  // no negative zero
    CHECK(csv::format_fixed(2203.0, 3) == "2203.000");
}
