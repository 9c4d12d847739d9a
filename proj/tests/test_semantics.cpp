#include <doctest.h>

#include <fstream>

#include "helpers.hpp"
#include "pdl/random.hpp"
#include "pdl/semantics.hpp"

using namespace pdl;
using namespace pdl::test;

#ifndef PDL_TEST_DATA
#define PDL_TEST_DATA "tests/data"
#endif

TEST_CASE("the split example: dep fails, dep | dep holds") {
    Team t = team_of({"x", "y"}, {"00", "01", "10", "11"});
    for (SplitMode mode : {SplitMode::Lax, SplitMode::Strict}) {
        CHECK_FALSE(evaluate(t, parse("dep(x;y)"), mode));
        CHECK(evaluate(t, parse("dep(x;y) | dep(x;y)"), mode));
    }
}

TEST_CASE("table 1 functional dependencies") {
    std::ifstream in(std::string(PDL_TEST_DATA) + "/table1.csv");
    EncodedTable table = encode_table_csv(in);

    Formula holds = conj(rewrite_dep_over_columns(table, {"Room", "Time"}, {"Course"}),
                         rewrite_dep_over_columns(table, {"Instructor", "Time"},
                                                  {"Room", "Course"}));
    CHECK(evaluate(table.team, holds, SplitMode::Lax));

    Formula fails = rewrite_dep_over_columns(table, {"Room", "Time"}, {"Instructor"});
    CHECK_FALSE(evaluate(table.team, fails, SplitMode::Lax));

    auto chk = check_dep(table.team, fails->premise, fails->conclusion);
    CHECK_FALSE(chk.holds);
    REQUIRE(chk.witness);
    auto r1 = table.decode(chk.witness->first);
    auto r2 = table.decode(chk.witness->second);
    CHECK(((r1[0] == "Jonni" && r2[0] == "Juha") || (r1[0] == "Juha" && r2[0] == "Jonni")));
    CHECK(r1[1] == "C.30");
    CHECK(r2[1] == "C.30");
}

TEST_CASE("empty team satisfies everything under the default bottom") {
    Team empty = Team::from_rows({"x", "y"}, {});
    CHECK(evaluate(empty, parse("x & !x"), SplitMode::Lax));
    CHECK(evaluate(empty, parse("dep(x;y) | F"), SplitMode::Strict));
    CHECK(evaluate(empty, bot(), SplitMode::Lax));
    CHECK(evaluate(empty, parse("!dep(x;y)"), SplitMode::Lax));

    EvalOptions never;
    never.bottom = BottomMode::Never;
    CHECK_FALSE(evaluate(empty, bot(), never));
    CHECK(evaluate(empty, top(), never));
    // T | F becomes unsatisfiable under the literal reading
    Team one = team_of({"x"}, {"1"});
    CHECK(evaluate(one, parse("T | F"), SplitMode::Lax));
    CHECK_FALSE(evaluate(one, parse("T | F"), never));
}

TEST_CASE("nonempty team never satisfies bottom") {
    Team t = team_of({"x"}, {"0"});
    CHECK_FALSE(evaluate(t, bot(), SplitMode::Lax));
    CHECK_FALSE(evaluate(t, parse("!dep(;x)"), SplitMode::Lax));
}

TEST_CASE("check_dep basics") {
    Team single = team_of({"x", "y"}, {"10"});
    CHECK(check_dep(single, {"x"}, {"y"}).holds);

    Team const_q = team_of({"p", "q"}, {"01", "11"});
    CHECK(check_dep(const_q, {}, {"q"}).holds);
    Team varying = team_of({"p", "q"}, {"00", "01"});
    auto chk = check_dep(varying, {}, {"q"});
    CHECK_FALSE(chk.holds);
    REQUIRE(chk.witness);
    CHECK(chk.witness->first.to_string() == "00");
    CHECK(chk.witness->second.to_string() == "01");

    CHECK_THROWS_AS(check_dep(single, {"nope"}, {"y"}), UnknownVariable);
}

TEST_CASE("unknown variables and caps are reported") {
    Team t = team_of({"x"}, {"1"});
    CHECK_THROWS_AS(evaluate(t, parse("y"), SplitMode::Lax), UnknownVariable);

    EvalOptions tight;
    tight.max_team = 2;
    Team three = team_of({"x"}, {"0", "1"});
    CHECK_NOTHROW(evaluate(three, parse("x"), tight));
    Team big = team_of({"x", "y"}, {"00", "01", "10"});
    CHECK_THROWS_AS(evaluate(big, parse("x"), tight), CapExceeded);
}

TEST_CASE("flatness holds for dep-free formulas and fails for dep") {
    auto probes = all_two_var_teams();
    CHECK(is_flat(parse("x & (y | !x)"), probes));
    CHECK(is_flat(top(), probes));
    CHECK_FALSE(is_flat(parse("dep(x;y)"), probes));
}

TEST_CASE("dependence atoms are 2-coherent") {
    Rng rng(5);
    for (int round = 0; round < 100; ++round) {
        Team t = random_team(rng, {"a", "b", "c"}, 1 + static_cast<int>(rng() % 8));
        CHECK(is_2coherent_atom({"a"}, {"b"}, t));
        CHECK(is_2coherent_atom({}, {"c"}, t));
        CHECK(is_2coherent_atom({"a", "b"}, {"c"}, t));
    }
    CHECK(is_2coherent_atom({"a"}, {"b"}, team_of({"a", "b"}, {"00"})));
}

TEST_CASE("downward closure and lax/strict agreement on random instances") {
    Rng rng(17);
    FormulaGen gen;
    gen.num_vars = 3;
    for (int round = 0; round < 300; ++round) {
        Formula f = random_formula(rng, 1 + static_cast<int>(rng() % 9), gen);
        Team t = random_team(rng, {"v1", "v2", "v3"}, 1 + static_cast<int>(rng() % 5));
        bool lax = evaluate(t, f, SplitMode::Lax);
        bool strict = evaluate(t, f, SplitMode::Strict);
        CHECK(lax == strict);
        if (lax) {
            for (uint32_t m = 0; m < (uint32_t(1) << t.size()); ++m)
                CHECK(evaluate_mask(t, f, m));
        }
    }
}

TEST_CASE("monotone split soundness") {
    Rng rng(29);
    FormulaGen gen;
    gen.num_vars = 3;
    std::vector<std::string> universe{"v1", "v2", "v3"};
    for (int round = 0; round < 200; ++round) {
        Formula a = random_formula(rng, 1 + static_cast<int>(rng() % 5), gen);
        Formula b = random_formula(rng, 1 + static_cast<int>(rng() % 5), gen);
        Team t1 = random_team(rng, universe, 1 + static_cast<int>(rng() % 4));
        Team t2 = random_team(rng, universe, 1 + static_cast<int>(rng() % 4));
        if (!evaluate(t1, a, SplitMode::Lax) || !evaluate(t2, b, SplitMode::Lax)) continue;
        std::vector<Assignment> both = t1.members();
        both.insert(both.end(), t2.members().begin(), t2.members().end());
        Team united = Team::from_assignments(universe, both);
        CHECK(evaluate(united, disj(a, b), SplitMode::Lax));
    }
}

TEST_CASE("subset splits equal the full cover enumeration") {
    Rng rng(31);
    FormulaGen gen;
    gen.num_vars = 2;
    for (int round = 0; round < 200; ++round) {
        Formula f = random_formula(rng, 1 + static_cast<int>(rng() % 7), gen);
        Team t = random_team(rng, {"v1", "v2"}, 1 + static_cast<int>(rng() % 4));
        CHECK(evaluate(t, f, SplitMode::Lax) == evaluate_lax_pairs(t, f));
    }
}

TEST_CASE("memoised evaluation equals the raw recursion") {
    Rng rng(37);
    FormulaGen gen;
    gen.num_vars = 3;
    for (int round = 0; round < 150; ++round) {
        Formula f = random_formula(rng, 1 + static_cast<int>(rng() % 9), gen);
        Team t = random_team(rng, {"v1", "v2", "v3"}, 1 + static_cast<int>(rng() % 5));
        EvalOptions memo, raw;
        raw.memo = false;
        CHECK(evaluate(t, f, memo) == evaluate(t, f, raw));
    }
}
