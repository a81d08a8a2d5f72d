#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dcx/complex.hpp"
#include "test_helpers.hpp"

using namespace dcx;
using dcx::testing::mixed_schema;

namespace {

DataTable make(const AttributeList& list,
               std::initializer_list<std::pair<Tuple, Rational>> atoms) {
    DataTable t;
    t.list = list;
    for (const auto& [tuple, mass] : atoms) t.add_mass(tuple, mass);
    return t;
}

DataComplexGen pair_complex() {
    DataComplexGen c;
    c.schema = mixed_schema();
    c.generators = {make({"a", "b"}, {{{"0", "1"}, Rational(1) / 2}, {{"1", "0"}, Rational(1) / 2}})};
    return c;
}

}  // namespace

TEST_CASE("closure of a single pair generator at length two") {
    DataComplexGen c = pair_complex();
    std::set<DataTable> closure = closure_up_to(c, 2);

    const DataTable& gen = c.generators[0];
    CHECK(closure.count(gen) == 1);
    CHECK(closure.count(marginalize(gen, 0)) == 1);
    CHECK(closure.count(marginalize(gen, 1)) == 1);

    AttributeInclusion empty_inc;
    empty_inc.target = gen.list;
    DataTable trivial = reduce(gen, empty_inc);
    CHECK(closure.count(trivial) == 1);

    // Degeneracies of the single-attribute marginals fit under the cap.
    CHECK(closure.count(diagonal(marginalize(gen, 0), 0)) == 1);
    CHECK(closure.count(diagonal(marginalize(gen, 1), 0)) == 1);
    CHECK(closure.size() == 6);
}

TEST_CASE("closure lengths are capped") {
    DataComplexGen c = pair_complex();
    std::set<DataTable> closure1 = closure_up_to(c, 1);
    for (const auto& t : closure1) CHECK(t.list.size() <= 1);
    CHECK(closure1.size() == 3);  // two marginals and the trivial table

    std::set<DataTable> closure0 = closure_up_to(c, 0);
    CHECK(closure0.size() == 1);  // only the trivial table fits
    CHECK(closure0.begin()->list.empty());

    CHECK_THROWS_AS(closure_up_to(c, -1), std::invalid_argument);
}

TEST_CASE("permutation flag adds the swapped generator") {
    DataComplexGen c = pair_complex();
    DataTable swapped = permute(c.generators[0], {1, 0});
    CHECK(closure_up_to(c, 2).count(swapped) == 0);
    c.closed_under_permutation = true;
    CHECK(closure_up_to(c, 2).count(swapped) == 1);
}

TEST_CASE("a single generator is well-aligned") {
    DataComplexGen c = pair_complex();
    CHECK_FALSE(is_well_aligned(c, 2).has_value());
}

TEST_CASE("a repeated-attribute generator with asymmetric mass is not well-aligned") {
    // Both inclusions of [a] into [a,a] must reduce to the same table; an
    // off-diagonal atom breaks that.
    DataComplexGen c;
    c.schema = mixed_schema();
    c.generators = {make({"a", "a"}, {{{"0", "1"}, Rational(1)}})};
    auto failure = is_well_aligned(c, 2);
    REQUIRE(failure.has_value());
    CHECK(failure->left_inclusion.source == AttributeList{"a"});

    // The diagonal table self-agrees.
    c.generators = {make({"a", "a"}, {{{"0", "0"}, Rational(1) / 2},
                                      {{"1", "1"}, Rational(1) / 2}})};
    CHECK_FALSE(is_well_aligned(c, 2).has_value());
}

TEST_CASE("mass mismatch breaks alignment through the empty overlap") {
    DataComplexGen c;
    c.schema = mixed_schema();
    c.generators = {make({"a"}, {{{"0"}, Rational(1)}}), make({"b"}, {{{"0"}, Rational(2)}})};
    auto failure = is_well_aligned(c, 1);
    REQUIRE(failure.has_value());
    CHECK(failure->left_inclusion.source.empty());
}

TEST_CASE("two pair tables sharing an attribute with equal marginals align") {
    DataComplexGen c;
    c.schema = mixed_schema();
    DataTable ab = make({"a", "b"}, {{{"0", "0"}, Rational(1) / 2}, {{"1", "1"}, Rational(1) / 2}});
    DataTable bd = make({"b", "d"}, {{{"0", "1"}, Rational(1) / 2}, {{"1", "0"}, Rational(1) / 2}});
    c.generators = {ab, bd};
    CHECK_FALSE(is_well_aligned(c, 2).has_value());

    // Perturbing one marginal breaks it.
    DataTable bd2 = make({"b", "d"}, {{{"0", "1"}, Rational(1) / 4}, {{"1", "0"}, Rational(3) / 4}});
    c.generators = {ab, bd2};
    CHECK(is_well_aligned(c, 2).has_value());
}

TEST_CASE("path connectivity by overlap chains") {
    DataComplexGen c;
    c.schema = mixed_schema();
    c.generators = {pair_complex().generators[0]};
    CHECK(is_path_connected(c).connected);

    // Disjoint attributes: no nonempty overlap.
    c.generators = {make({"a"}, {{{"0"}, Rational(1)}}), make({"b"}, {{{"0"}, Rational(1)}})};
    ConnectivityReport rep = is_path_connected(c);
    CHECK_FALSE(rep.connected);
    CHECK(rep.components.size() == 2);

    // Chain a-b, b-c with matching b marginals.
    DataTable ab = make({"a", "b"}, {{{"0", "0"}, Rational(1) / 2}, {{"1", "1"}, Rational(1) / 2}});
    DataTable bc = make({"b", "c"}, {{{"0", "2"}, Rational(1) / 2}, {{"1", "0"}, Rational(1) / 2}});
    c.generators = {ab, bc};
    CHECK(is_path_connected(c).connected);

    // Same chain with a mismatched b marginal is disconnected.
    DataTable bc2 = make({"b", "c"}, {{{"0", "2"}, Rational(1)}});
    c.generators = {ab, bc2};
    CHECK_FALSE(is_path_connected(c).connected);
}

TEST_CASE("validate_complex reports bad generators") {
    DataComplexGen c;
    c.schema = mixed_schema();
    CHECK_FALSE(validate_complex(c).empty());  // empty generator set

    c.generators = {make({"a"}, {{{"7"}, Rational(1)}})};
    auto problems = validate_complex(c);
    REQUIRE(problems.size() == 1);
    CHECK(problems[0].find("label '7'") != std::string::npos);
}
