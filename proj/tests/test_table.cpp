#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_helpers.hpp"

using namespace dcx;
using dcx::testing::mixed_schema;
using dcx::testing::random_list;
using dcx::testing::random_table;

namespace {

DataTable make(const AttributeList& list,
               std::initializer_list<std::pair<Tuple, Rational>> atoms) {
    DataTable t;
    t.list = list;
    for (const auto& [tuple, mass] : atoms) t.add_mass(tuple, mass);
    return t;
}

}  // namespace

TEST_CASE("total mass sums the atoms") {
    DataTable t = make({"a", "b"}, {{{"0", "1"}, Rational(1) / 2}, {{"1", "0"}, Rational(1) / 2}});
    CHECK(total_mass(t) == 1);
    CHECK(total_mass(DataTable{{"a"}, {}}) == 0);
}

TEST_CASE("zero atoms are dropped and negatives rejected") {
    DataTable t;
    t.list = {"a"};
    t.add_mass({"0"}, Rational(1));
    t.add_mass({"0"}, Rational(-1));
    CHECK(t.atoms.empty());
    CHECK_THROWS_AS(t.add_mass({"0"}, Rational(-1)), std::invalid_argument);
}

TEST_CASE("marginalize sums masses over the dropped position") {
    DataTable t = make({"a", "b"}, {{{"0", "0"}, Rational(1) / 4},
                                    {{"0", "1"}, Rational(1) / 4},
                                    {{"1", "0"}, Rational(1) / 2}});
    DataTable d1 = marginalize(t, 1);
    CHECK(d1 == make({"a"}, {{{"0"}, Rational(1) / 2}, {{"1"}, Rational(1) / 2}}));
    CHECK(total_mass(d1) == total_mass(t));

    DataTable point = make({"a", "b"}, {{{"0", "1"}, Rational(2)}});
    CHECK(marginalize(point, 1) == make({"a"}, {{{"0"}, Rational(2)}}));
    CHECK_THROWS_AS(marginalize(point, 2), std::out_of_range);
}

TEST_CASE("diagonal duplicates a coordinate and retracts by its face") {
    DataTable t = make({"a"}, {{{"0"}, Rational(1) / 3}, {{"1"}, Rational(2) / 3}});
    DataTable s0 = diagonal(t, 0);
    CHECK(s0 == make({"a", "a"}, {{{"0", "0"}, Rational(1) / 3}, {{"1", "1"}, Rational(2) / 3}}));
    CHECK(marginalize(s0, 0) == t);
    CHECK(marginalize(s0, 1) == t);
}

TEST_CASE("simplicial identities hold exactly on random tables") {
    Schema schema = mixed_schema();
    std::mt19937 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        AttributeList list = random_list(rng, schema, 2, 4);
        DataTable t = random_table(rng, schema, list);
        size_t n = list.size() - 1;
        size_t j = rng() % (n + 1);
        size_t i = rng() % (n + 1);

        if (i < j) {
            CHECK(marginalize(marginalize(t, j), i) == marginalize(marginalize(t, i), j - 1));
            CHECK(marginalize(diagonal(t, j), i) == diagonal(marginalize(t, i), j - 1));
        }
        CHECK(marginalize(diagonal(t, j), j) == t);
        CHECK(marginalize(diagonal(t, j), j + 1) == t);
        if (i > j + 1) CHECK(marginalize(diagonal(t, j), i) == diagonal(marginalize(t, i - 1), j));
        if (i <= j) CHECK(diagonal(diagonal(t, j), i) == diagonal(diagonal(t, i), j + 1));
    }
}

TEST_CASE("reduce projects through the inclusion and preserves mass") {
    DataTable t = make({"a", "b"}, {{{"0", "1"}, Rational(1)}, {{"1", "1"}, Rational(2)}});
    CHECK(reduce(t, AttributeInclusion::identity(t.list)) == t);

    AttributeInclusion empty_inc;
    empty_inc.target = t.list;
    DataTable trivial = reduce(t, empty_inc);
    CHECK(trivial.list.empty());
    CHECK(total_mass(trivial) == 3);
    CHECK(trivial.atoms.size() == 1);
}

TEST_CASE("reduce equals the composite of face maps over the complement") {
    Schema schema = mixed_schema();
    std::mt19937 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        AttributeList list = random_list(rng, schema, 1, 4);
        DataTable t = random_table(rng, schema, list);
        auto subs = enumerate_subinclusions(list);
        const AttributeInclusion& inc = subs[rng() % subs.size()];

        DataTable direct = reduce(t, inc);
        DataTable iterated = t;
        std::vector<size_t> seq = inclusion_to_faces(inc);
        for (size_t k = seq.size(); k-- > 0;) iterated = marginalize(iterated, seq[k]);
        CHECK(direct == iterated);
        CHECK(total_mass(direct) == total_mass(t));
    }
}

TEST_CASE("permute reindexes tuples and acts as a group") {
    DataTable t = make({"a", "b"}, {{{"0", "1"}, Rational(1)}});
    CHECK(permute(t, {1, 0}) == make({"b", "a"}, {{{"1", "0"}, Rational(1)}}));
    CHECK(permute(t, {0, 1}) == t);

    Schema schema = mixed_schema();
    std::mt19937 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        AttributeList list = random_list(rng, schema, 2, 4);
        DataTable x = random_table(rng, schema, list);
        std::vector<size_t> sigma(list.size());
        for (size_t i = 0; i < sigma.size(); ++i) sigma[i] = i;
        std::shuffle(sigma.begin(), sigma.end(), rng);
        std::vector<size_t> inverse(sigma.size());
        for (size_t i = 0; i < sigma.size(); ++i) inverse[sigma[i]] = i;
        CHECK(permute(permute(x, sigma), inverse) == x);
        CHECK(total_mass(permute(x, sigma)) == total_mass(x));

        // Composition law: applying sigma then tau equals applying the
        // composite position map i -> sigma[tau[i]].
        std::vector<size_t> tau(sigma.size());
        for (size_t i = 0; i < tau.size(); ++i) tau[i] = i;
        std::shuffle(tau.begin(), tau.end(), rng);
        std::vector<size_t> composite(sigma.size());
        for (size_t i = 0; i < sigma.size(); ++i) composite[i] = sigma[tau[i]];
        CHECK(permute(permute(x, sigma), tau) == permute(x, composite));
    }
}

TEST_CASE("independent product scales by the common mass and projects back") {
    DataTable d0 = make({"a"}, {{{"0"}, Rational(1)}});
    DataTable d1 = make({"b"}, {{{"1"}, Rational(1)}});
    CHECK(independent_product(d0, d1) == make({"a", "b"}, {{{"0", "1"}, Rational(1)}}));

    DataTable u1 = make({"a"}, {{{"0"}, Rational(1)}, {{"1"}, Rational(1)}});
    DataTable u2 = make({"b"}, {{{"0"}, Rational(1)}, {{"1"}, Rational(1)}});
    DataTable prod = independent_product(u1, u2);  // masses 2 and 2
    CHECK(total_mass(prod) == 2);
    CHECK(prod.mass_at({"0", "1"}) == Rational(1) / 2);

    SumResult sum = concat_sum(u1.list, u2.list);
    CHECK(reduce(prod, sum.left) == u1);
    CHECK(reduce(prod, sum.right) == u2);

    DataTable heavier = make({"b"}, {{{"0"}, Rational(3)}});
    CHECK_THROWS_AS(independent_product(u1, heavier), std::invalid_argument);
}

TEST_CASE("uniform times uniform gives four quarter atoms") {
    DataTable u1 = make({"a"}, {{{"0"}, Rational(1) / 2}, {{"1"}, Rational(1) / 2}});
    DataTable u2 = make({"d"}, {{{"0"}, Rational(1) / 2}, {{"1"}, Rational(1) / 2}});
    DataTable prod = independent_product(u1, u2);
    CHECK(prod.atoms.size() == 4);
    for (const auto& [tuple, mass] : prod.atoms) CHECK(mass == Rational(1) / 4);
}

TEST_CASE("boundary of a table chain marginalizes each cell") {
    DataTable t = make({"a", "b", "c"}, {{{"0", "1", "2"}, Rational(1)}});
    TableChain2 chain;
    chain.toggle(t);
    TableChain2 b = boundary_table_chain(chain);
    CHECK(b.cells.size() == 3);
    CHECK(b.cells.count(marginalize(t, 0)) == 1);
    CHECK(b.cells.count(marginalize(t, 1)) == 1);
    CHECK(b.cells.count(marginalize(t, 2)) == 1);
}

TEST_CASE("boundary squared of table chains is empty") {
    Schema schema = mixed_schema();
    std::mt19937 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        TableChain2 chain;
        size_t len = 2 + rng() % 3;  // levels 1..3
        AttributeList list = random_list(rng, schema, len, len);
        size_t cells = 1 + rng() % 3;
        for (size_t k = 0; k < cells; ++k) chain.toggle(random_table(rng, schema, list));
        if (chain.empty()) continue;
        CHECK(boundary_table_chain(boundary_table_chain(chain)).empty());
    }

    DataTable four = make({"a", "b", "c", "d"}, {{{"0", "1", "2", "1"}, Rational(2)},
                                                 {{"1", "0", "0", "0"}, Rational(1)}});
    TableChain2 chain;
    chain.toggle(four);
    CHECK(boundary_table_chain(boundary_table_chain(chain)).empty());
}

TEST_CASE("projection commutes with the boundary") {
    Schema schema = mixed_schema();
    std::mt19937 rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        TableChain2 chain;
        size_t len = 2 + rng() % 3;
        size_t cells = 1 + rng() % 3;
        for (size_t k = 0; k < cells; ++k)
            chain.toggle(random_table(rng, schema, random_list(rng, schema, len, len)));
        if (chain.empty()) continue;
        Chain2 left = project_chain(boundary_table_chain(chain));
        Chain2 right = boundary_chain(project_chain(chain));
        CHECK(left.cells == right.cells);
    }
}

TEST_CASE("enumerate_value_tuples walks the product space in order") {
    Schema schema = mixed_schema();
    auto tuples = enumerate_value_tuples(schema, {"a", "a"}, 100);
    CHECK(tuples == std::vector<Tuple>{{"0", "0"}, {"0", "1"}, {"1", "0"}, {"1", "1"}});
    CHECK(enumerate_value_tuples(schema, {}, 10).size() == 1);
    CHECK_THROWS_AS(enumerate_value_tuples(schema, {"c", "c", "c"}, 10), std::runtime_error);
}
