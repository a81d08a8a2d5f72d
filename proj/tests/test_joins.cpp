#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dcx/joins.hpp"
#include "test_helpers.hpp"

using namespace dcx;
using dcx::testing::mixed_schema;
using dcx::testing::random_list;
using dcx::testing::random_table;
using dcx::testing::xyz_schema;

namespace {

DataTable make(const AttributeList& list,
               std::initializer_list<std::pair<Tuple, Rational>> atoms) {
    DataTable t;
    t.list = list;
    for (const auto& [tuple, mass] : atoms) t.add_mass(tuple, mass);
    return t;
}

DataTable anti_pair(const std::string& a, const std::string& b) {
    return make({a, b}, {{{"0", "1"}, Rational(1) / 2}, {{"1", "0"}, Rational(1) / 2}});
}

DataTable uniform_pair(const std::string& a, const std::string& b) {
    return make({a, b}, {{{"0", "0"}, Rational(1) / 4},
                         {{"0", "1"}, Rational(1) / 4},
                         {{"1", "0"}, Rational(1) / 4},
                         {{"1", "1"}, Rational(1) / 4}});
}

// The anti-correlated triangle boundary on [x, y, z].
HornProblem triangle_boundary(const Rational& slack) {
    HornProblem h;
    h.full_list = {"x", "y", "z"};
    h.faces[0] = anti_pair("y", "z");
    h.faces[1] = anti_pair("x", "z");
    h.faces[2] = anti_pair("x", "y");
    h.slack = slack;
    return h;
}

JoinProblem problem_over(const DataTable& t01, const DataTable& t02, const AttributeList& overlap,
                         std::vector<size_t> map1, std::vector<size_t> map2) {
    JoinProblem p;
    p.t01 = t01;
    p.t02 = t02;
    p.i01 = {overlap, t01.list, std::move(map1)};
    p.i02 = {overlap, t02.list, std::move(map2)};
    return p;
}

}  // namespace

TEST_CASE("overlap consistency") {
    DataTable ab = make({"a", "b"}, {{{"0", "0"}, Rational(1)}});
    DataTable bd = make({"b", "d"}, {{{"0", "1"}, Rational(1)}});
    CHECK(overlap_consistent(problem_over(ab, bd, {"b"}, {1}, {0})));

    // Empty overlap with equal masses.
    CHECK(overlap_consistent(problem_over(ab, bd, {}, {}, {})));

    // Equal tables with identity inclusions.
    CHECK(overlap_consistent(problem_over(ab, ab, {"a", "b"}, {0, 1}, {0, 1})));

    DataTable bd2 = make({"b", "d"}, {{{"1", "1"}, Rational(1)}});
    CHECK_FALSE(overlap_consistent(problem_over(ab, bd2, {"b"}, {1}, {0})));
}

TEST_CASE("conditional glue over an empty overlap is the independent product") {
    DataTable a = make({"a"}, {{{"0"}, Rational(1) / 2}, {{"1"}, Rational(1) / 2}});
    DataTable b = make({"b"}, {{{"0"}, Rational(1)}});
    GlueResult g = conditional_glue(problem_over(a, b, {}, {}, {}));
    CHECK(g.table == independent_product(a, b));
}

TEST_CASE("conditional glue on full overlap is the table itself") {
    DataTable ab = anti_pair("a", "b");
    GlueResult g = conditional_glue(problem_over(ab, ab, {"a", "b"}, {0, 1}, {0, 1}));
    CHECK(g.table == ab);
}

TEST_CASE("glueing two uniform pairs over a shared middle gives the eight-atom table") {
    DataTable ab = uniform_pair("a", "b");
    DataTable bd = uniform_pair("b", "d");
    GlueResult g = conditional_glue(problem_over(ab, bd, {"b"}, {1}, {0}));
    CHECK(g.table.list == AttributeList{"a", "b", "d"});
    CHECK(g.table.atoms.size() == 8);
    for (const auto& [tuple, mass] : g.table.atoms) CHECK(mass == Rational(1) / 8);
    CHECK(reduce(g.table, g.merge.mu01) == ab);
    CHECK(reduce(g.table, g.merge.mu02) == bd);
}

TEST_CASE("glue reductions reproduce the inputs on random consistent problems") {
    Schema schema = mixed_schema();
    std::mt19937 rng(53);
    for (int trial = 0; trial < 120; ++trial) {
        // Build a random joint and carve two faces so the overlap is consistent.
        AttributeList list = random_list(rng, schema, 2, 3);
        DataTable joint = random_table(rng, schema, list, 6);
        auto subs = enumerate_subinclusions(list);
        const AttributeInclusion& i1 = subs[rng() % subs.size()];
        const AttributeInclusion& i2 = subs[rng() % subs.size()];
        if (i1.index_map.empty() || i2.index_map.empty()) continue;

        // Overlap = entries selected by both; realize it inside each face.
        std::vector<size_t> both;
        for (size_t v : i1.index_map)
            if (std::find(i2.index_map.begin(), i2.index_map.end(), v) != i2.index_map.end())
                both.push_back(v);

        JoinProblem p;
        p.t01 = reduce(joint, i1);
        p.t02 = reduce(joint, i2);
        for (size_t v : both) {
            p.i01.source.push_back(list[v]);
            p.i02.source.push_back(list[v]);
            size_t pos1 = std::find(i1.index_map.begin(), i1.index_map.end(), v) -
                          i1.index_map.begin();
            size_t pos2 = std::find(i2.index_map.begin(), i2.index_map.end(), v) -
                          i2.index_map.begin();
            p.i01.index_map.push_back(pos1);
            p.i02.index_map.push_back(pos2);
        }
        p.i01.target = p.t01.list;
        p.i02.target = p.t02.list;

        REQUIRE(overlap_consistent(p));
        GlueResult g = conditional_glue(p);
        CHECK(reduce(g.table, g.merge.mu01) == p.t01);
        CHECK(reduce(g.table, g.merge.mu02) == p.t02);
        CHECK(joins_feasible(p));
    }
}

TEST_CASE("join feasibility agrees with a direct LP over the merged space") {
    // Cross-check: the join space is nonempty iff an LP over merged-list
    // atoms with both reduction constraints is feasible.
    Schema schema = mixed_schema();
    std::mt19937 rng(73);
    auto lp_joins_nonempty = [&](const JoinProblem& p) {
        MergeResult m = merge_lists(p.i01, p.i02);
        LinearProgram lp;
        std::vector<Tuple> tuples = enumerate_value_tuples(schema, m.merged, 100000);
        std::map<Tuple, size_t> index;
        for (const auto& u : tuples) index[u] = lp.add_variable("x");
        auto tie = [&](const AttributeInclusion& mu, const DataTable& target) {
            std::map<Tuple, std::vector<size_t>> fibers;
            for (const auto& u : tuples) {
                Tuple proj(mu.index_map.size());
                for (size_t i = 0; i < mu.index_map.size(); ++i) proj[i] = u[mu.index_map[i]];
                fibers[proj].push_back(index[u]);
            }
            for (const auto& [a, vars] : fibers) {
                std::vector<LinearTerm> terms;
                for (size_t v : vars) terms.push_back({v, Rational(1)});
                lp.add_constraint(std::move(terms), Sense::Equal, target.mass_at(a));
            }
        };
        tie(m.mu01, p.t01);
        tie(m.mu02, p.t02);
        return solve_feasibility(lp).status == LPStatus::Feasible;
    };

    for (int trial = 0; trial < 30; ++trial) {
        AttributeList list = random_list(rng, schema, 2, 3);
        DataTable joint = random_table(rng, schema, list, 5);
        auto subs = enumerate_subinclusions(list);
        const AttributeInclusion& i1 = subs[rng() % subs.size()];
        const AttributeInclusion& i2 = subs[rng() % subs.size()];
        if (i1.index_map.empty() || i2.index_map.empty()) continue;

        JoinProblem p;
        p.t01 = reduce(joint, i1);
        p.t02 = reduce(joint, i2);
        for (size_t v : i1.index_map) {
            auto it = std::find(i2.index_map.begin(), i2.index_map.end(), v);
            if (it == i2.index_map.end()) continue;
            p.i01.source.push_back(list[v]);
            p.i02.source.push_back(list[v]);
            p.i01.index_map.push_back(
                std::find(i1.index_map.begin(), i1.index_map.end(), v) - i1.index_map.begin());
            p.i02.index_map.push_back(it - i2.index_map.begin());
        }
        p.i01.target = p.t01.list;
        p.i02.target = p.t02.list;
        CHECK(joins_feasible(p));
        CHECK(lp_joins_nonempty(p));

        // Break the overlap and confirm both verdicts flip together.
        if (!p.i01.source.empty() && !p.t02.atoms.empty()) {
            JoinProblem broken = p;
            DataTable& t = broken.t02;
            Tuple tup = t.atoms.begin()->first;
            Rational m = t.atoms.begin()->second;
            const ValueSpace& vs = schema.space_of(t.list[broken.i02.index_map[0]]);
            Tuple moved = tup;
            size_t pos = broken.i02.index_map[0];
            moved[pos] = vs.points[(vs.index_of(tup[pos]) + 1) % vs.size()];
            t.add_mass(tup, -m);
            t.add_mass(moved, m);
            bool consistent = overlap_consistent(broken);
            CHECK(consistent == lp_joins_nonempty(broken));
        }
    }
}

TEST_CASE("glue commutes with permutations of the inputs") {
    DataTable ab = make({"a", "b"}, {{{"0", "0"}, Rational(1) / 4},
                                     {{"0", "1"}, Rational(1) / 4},
                                     {{"1", "0"}, Rational(1) / 2}});
    DataTable b_marg = marginalize(ab, 0);
    DataTable d_half = make({"d"}, {{{"0"}, Rational(1) / 2}, {{"1"}, Rational(1) / 2}});
    DataTable bd = independent_product(b_marg, d_half);

    GlueResult g = conditional_glue(problem_over(ab, bd, {"b"}, {1}, {0}));

    // Permute t01's coordinates and glue again; results agree up to the
    // induced permutation of the merged list.
    DataTable ba = permute(ab, {1, 0});
    GlueResult gp = conditional_glue(problem_over(ba, bd, {"b"}, {0}, {0}));
    // g.table is on [a,b,d]; gp.table is on [b,a,d].
    CHECK(permute(g.table, {1, 0, 2}) == gp.table);
}

TEST_CASE("boundary of a glue fills exactly") {
    DataTable ab = uniform_pair("a", "b");
    DataTable bd = uniform_pair("b", "d");
    GlueResult g = conditional_glue(problem_over(ab, bd, {"b"}, {1}, {0}));

    HornProblem h;
    h.full_list = g.table.list;
    for (size_t i = 0; i < h.full_list.size(); ++i) h.faces[i] = marginalize(g.table, i);
    h.slack = 0;
    FillResult fill = fill_boundary(mixed_schema(), h);
    REQUIRE(fill.status == FillStatus::Filled);
    for (const auto& [i, d] : fill.achieved_slacks) CHECK(d == 0);
    for (const auto& [i, f] : h.faces) CHECK(marginalize(fill.table, i) == f);
}

TEST_CASE("no tuple avoids agreement on all three pairs") {
    // Independent parity oracle for the anti-correlated triangle: an exact
    // filler could only sit on tuples whose three pairs all disagree, and no
    // such binary tuple exists.
    for (int bits = 0; bits < 8; ++bits) {
        int x = bits & 1, y = (bits >> 1) & 1, z = (bits >> 2) & 1;
        bool all_disagree = (x != y) && (y != z) && (x != z);
        CHECK_FALSE(all_disagree);
    }
}

TEST_CASE("anti-correlated triangle: infeasible at slack zero, filled at one third") {
    Schema schema = xyz_schema();
    FillResult at0 = fill_boundary(schema, triangle_boundary(Rational(0)));
    CHECK(at0.status == FillStatus::Infeasible);

    FillResult at13 = fill_boundary(schema, triangle_boundary(Rational(1) / 3));
    REQUIRE(at13.status == FillStatus::Filled);
    for (const auto& [i, d] : at13.achieved_slacks) CHECK(d <= Rational(1) / 3);

    // The uniform measure on the six non-constant tuples achieves exactly 1/3
    // on every face; verify the frozen witness.
    DataTable six;
    six.list = {"x", "y", "z"};
    for (int bits = 0; bits < 8; ++bits) {
        int x = bits & 1, y = (bits >> 1) & 1, z = (bits >> 2) & 1;
        if (x == y && y == z) continue;
        six.add_mass({std::to_string(x), std::to_string(y), std::to_string(z)}, Rational(1) / 6);
    }
    for (size_t i = 0; i < 3; ++i) {
        Rational d = wasserstein(schema, marginalize(six, i),
                                 triangle_boundary(Rational(0)).faces.at(i));
        CHECK(d == Rational(1) / 3);
    }

    FillResult min_fill = fill_boundary_min_slack(schema, triangle_boundary(Rational(0)));
    REQUIRE(min_fill.status == FillStatus::Filled);
    CHECK(*min_fill.minimal_slack == Rational(1) / 3);
}

TEST_CASE("slack monotonicity of boundary filling") {
    Schema schema = xyz_schema();
    for (int num = 1; num <= 3; ++num) {
        Rational t = Rational(num) / 3;
        CHECK(fill_boundary(schema, triangle_boundary(t)).status == FillStatus::Filled);
    }
    CHECK(fill_boundary(schema, triangle_boundary(Rational(1) / 4)).status ==
          FillStatus::Infeasible);
}

TEST_CASE("horn of two consistent pair tables fills exactly") {
    Schema schema = xyz_schema();
    HornProblem h;
    h.full_list = {"x", "y", "z"};
    h.faces[1] = anti_pair("x", "z");
    h.faces[2] = anti_pair("x", "y");
    FillResult fill = fill_horn_lp(schema, h);
    REQUIRE(fill.status == FillStatus::Filled);
    CHECK(marginalize(fill.table, 1) == h.faces[1]);
    CHECK(marginalize(fill.table, 2) == h.faces[2]);
}

TEST_CASE("anti-correlated triangle minus one face fills as a horn") {
    Schema schema = xyz_schema();
    HornProblem h = triangle_boundary(Rational(0));
    h.faces.erase(0);
    FillResult fill = fill_horn_lp(schema, h);
    REQUIRE(fill.status == FillStatus::Filled);
    CHECK(marginalize(fill.table, 1) == anti_pair("x", "z"));
    CHECK(marginalize(fill.table, 2) == anti_pair("x", "y"));
}

TEST_CASE("incompatible horns are rejected") {
    Schema schema = xyz_schema();
    HornProblem h;
    h.full_list = {"x", "y", "z"};
    h.faces[1] = anti_pair("x", "z");
    // x-marginal of this face disagrees with faces[1]'s.
    h.faces[2] = make({"x", "y"}, {{{"0", "1"}, Rational(1)}});
    CHECK_THROWS_AS(fill_horn_lp(schema, h), std::invalid_argument);
    CHECK_THROWS_AS(fill_horn_constructive(schema, h), std::invalid_argument);
}

TEST_CASE("constructive filler matches the horn faces exactly") {
    Schema schema = xyz_schema();
    HornProblem h;
    h.full_list = {"x", "y", "z"};
    h.faces[1] = anti_pair("x", "z");
    h.faces[2] = anti_pair("x", "y");
    FillResult fill = fill_horn_constructive(schema, h);
    REQUIRE(fill.status == FillStatus::Filled);
    CHECK(marginalize(fill.table, 1) == h.faces[1]);
    CHECK(marginalize(fill.table, 2) == h.faces[2]);
}

TEST_CASE("constructive filler fills horns carved from random joints") {
    Schema schema = mixed_schema();
    std::mt19937 rng(59);
    int fallbacks = 0;
    for (int trial = 0; trial < 120; ++trial) {
        size_t len = 2 + rng() % 3;  // n in {1, 2, 3}
        AttributeList list = random_list(rng, schema, len, len);
        DataTable joint = random_table(rng, schema, list, 6);
        HornProblem h;
        h.full_list = list;
        size_t missing = rng() % list.size();
        for (size_t i = 0; i < list.size(); ++i)
            if (i != missing) h.faces[i] = marginalize(joint, i);

        FillResult fill = fill_horn_constructive(schema, h);
        REQUIRE(fill.status == FillStatus::Filled);
        if (fill.fallback_to_lp) ++fallbacks;
        for (const auto& [i, f] : h.faces) CHECK(marginalize(fill.table, i) == f);

        // The constructive result is also a valid LP-filler witness.
        FillResult lp = fill_horn_lp(schema, h);
        REQUIRE(lp.status == FillStatus::Filled);
        for (const auto& [i, f] : h.faces) CHECK(marginalize(lp.table, i) == f);
    }
    MESSAGE("constructive fallbacks: ", fallbacks, "/120");
}

TEST_CASE("a horn where the probability-selection condition fails falls back to the LP") {
    // Frozen instance (found by seeded search): the per-point caps of the
    // correction step sum below one, so the constructive path cannot certify
    // a valid correction measure and delegates to the LP, which fills.
    Schema schema = mixed_schema();
    DataTable joint;
    joint.list = {"a", "b", "b", "d"};
    joint.add_mass({"0", "0", "0", "0"}, Rational(4) / 3);
    joint.add_mass({"0", "0", "1", "0"}, Rational(1) / 4);
    joint.add_mass({"0", "0", "2", "1"}, Rational(5) / 3);
    joint.add_mass({"0", "1", "1", "0"}, Rational(1));
    joint.add_mass({"0", "1", "2", "1"}, Rational(1));

    HornProblem h;
    h.full_list = joint.list;
    for (size_t i = 1; i < 4; ++i) h.faces[i] = marginalize(joint, i);

    FillResult fill = fill_horn_constructive(schema, h);
    REQUIRE(fill.status == FillStatus::Filled);
    CHECK(fill.fallback_to_lp);
    for (const auto& [i, f] : h.faces) CHECK(marginalize(fill.table, i) == f);
}

TEST_CASE("missing-face index other than zero is handled by reordering") {
    Schema schema = xyz_schema();
    DataTable joint;
    joint.list = {"x", "y", "z"};
    joint.add_mass({"0", "1", "0"}, Rational(1) / 2);
    joint.add_mass({"1", "0", "1"}, Rational(1) / 4);
    joint.add_mass({"1", "1", "1"}, Rational(1) / 4);
    for (size_t missing = 0; missing < 3; ++missing) {
        HornProblem h;
        h.full_list = joint.list;
        for (size_t i = 0; i < 3; ++i)
            if (i != missing) h.faces[i] = marginalize(joint, i);
        FillResult fill = fill_horn_constructive(schema, h);
        REQUIRE(fill.status == FillStatus::Filled);
        for (const auto& [i, f] : h.faces) CHECK(marginalize(fill.table, i) == f);
    }
}
