#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dcx/schema.hpp"

using namespace dcx;

namespace {

ValueSpace binary_space(const std::string& id) {
    return {id, {"0", "1"}, {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}};
}

Schema two_binary() {
    Schema s;
    s.spaces = {binary_space("bit")};
    s.attributes = {{"a", "bit"}, {"b", "bit"}};
    return s;
}

size_t error_count(const std::vector<SchemaViolation>& v) {
    size_t n = 0;
    for (const auto& x : v)
        if (x.severity == "error") ++n;
    return n;
}

}  // namespace

TEST_CASE("unit metric two-point space validates") {
    CHECK(validate_schema(two_binary()).empty());
}

TEST_CASE("asymmetric metric is flagged") {
    Schema s = two_binary();
    s.spaces[0].metric[0][1] = 1;
    s.spaces[0].metric[1][0] = 2;
    auto v = validate_schema(s);
    REQUIRE(error_count(v) > 0);
    bool found = false;
    for (const auto& x : v)
        if (x.message == "metric not symmetric") found = true;
    CHECK(found);
}

TEST_CASE("zero distance between distinct points is flagged") {
    Schema s = two_binary();
    s.spaces[0].metric[0][1] = 0;
    s.spaces[0].metric[1][0] = 0;
    auto v = validate_schema(s);
    bool found = false;
    for (const auto& x : v)
        if (x.message == "zero distance between distinct points") found = true;
    CHECK(found);
}

TEST_CASE("triangle inequality failures are warnings, not errors") {
    Schema s;
    s.spaces = {{"w",
                 {"p", "q", "r"},
                 {{Rational(0), Rational(1), Rational(5)},
                  {Rational(1), Rational(0), Rational(1)},
                  {Rational(5), Rational(1), Rational(0)}}}};
    s.attributes = {{"a", "w"}};
    auto v = validate_schema(s);
    CHECK(error_count(v) == 0);
    REQUIRE(v.size() == 1);
    CHECK(v[0].severity == "warning");
}

TEST_CASE("duplicate names and dangling spaces are errors") {
    Schema s = two_binary();
    s.attributes.push_back({"a", "bit"});
    s.attributes.push_back({"c", "nope"});
    CHECK(error_count(validate_schema(s)) == 2);
}

TEST_CASE("product distance is the max over positions") {
    Schema s = two_binary();
    AttributeList list{"a", "b"};
    CHECK(product_distance(s, list, {"0", "0"}, {"1", "0"}) == 1);
    CHECK(product_distance(s, list, {"0", "1"}, {"0", "1"}) == 0);

    Schema w;
    w.spaces = {binary_space("bit"),
                {"tri",
                 {"x", "y"},
                 {{Rational(0), Rational(3)}, {Rational(3), Rational(0)}}}};
    w.attributes = {{"a", "bit"}, {"b", "tri"}};
    CHECK(product_distance(w, {"a", "b"}, {"0", "x"}, {"1", "y"}) == 3);
    CHECK(product_distance(w, {}, {}, {}) == 0);
}

TEST_CASE("product distance rejects unknown labels") {
    Schema s = two_binary();
    CHECK_THROWS_AS(product_distance(s, {"a"}, {"7"}, {"0"}), std::invalid_argument);
}

TEST_CASE("product metric satisfies the metric axioms exhaustively") {
    // Two spaces of sizes 3 and 4 with integer metrics.
    Schema s;
    s.spaces = {{"s3",
                 {"0", "1", "2"},
                 {{Rational(0), Rational(1), Rational(2)},
                  {Rational(1), Rational(0), Rational(1)},
                  {Rational(2), Rational(1), Rational(0)}}},
                {"s4",
                 {"0", "1", "2", "3"},
                 {{Rational(0), Rational(1), Rational(1), Rational(2)},
                  {Rational(1), Rational(0), Rational(1), Rational(1)},
                  {Rational(1), Rational(1), Rational(0), Rational(1)},
                  {Rational(2), Rational(1), Rational(1), Rational(0)}}}};
    s.attributes = {{"a", "s3"}, {"b", "s4"}};
    REQUIRE(validate_schema(s).empty());

    AttributeList list{"a", "b"};
    std::vector<std::vector<std::string>> tuples;
    for (const auto& x : s.spaces[0].points)
        for (const auto& y : s.spaces[1].points) tuples.push_back({x, y});

    for (const auto& x : tuples)
        for (const auto& y : tuples) {
            Rational dxy = product_distance(s, list, x, y);
            CHECK(dxy == product_distance(s, list, y, x));
            CHECK((x == y) == (dxy == 0));
            for (const auto& z : tuples) {
                CHECK(product_distance(s, list, x, z) <=
                      dxy + product_distance(s, list, y, z));
            }
        }
}

TEST_CASE("singleton list reproduces the attribute metric exactly") {
    Schema s = two_binary();
    for (const auto& x : s.spaces[0].points)
        for (const auto& y : s.spaces[0].points) {
            Rational expected =
                s.spaces[0].metric[s.spaces[0].index_of(x)][s.spaces[0].index_of(y)];
            CHECK(product_distance(s, {"a"}, {x}, {y}) == expected);
        }
}
