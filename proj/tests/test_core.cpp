#include <doctest.h>

#include "fgames/core.hpp"
#include "helpers.hpp"

using namespace fgames;
using namespace fgames::testing;

namespace {

FiniteGame one_alice() { return FiniteGame{{RunSpec::make({}, 0)}, {0}}; }

}  // namespace

TEST_CASE("runspec canonicalization and denotation") {
    const RunSpec r = RunSpec::make({3, 1, 1, 1}, 1);
    CHECK(r.stem == std::vector<Move>{3});
    CHECK(r.tail == 1);
    CHECK(r.at(0) == 3);
    CHECK(r.at(5) == 1);
    CHECK(r.prefix(3) == Moment{3, 1, 1});
    CHECK(RunSpec::make({}, 0).is_canonical());
    CHECK_FALSE(RunSpec{{0}, 0}.is_canonical());
}

TEST_CASE("delta on the stated examples") {
    CHECK(delta(RunSpec::make({}, 0), RunSpec::make({1}, 0)) == 0);
    CHECK(delta(RunSpec::make({0, 1}, 0), RunSpec::make({0, 2}, 0)) == 1);

    // Derived case: oracle expands both runs and compares elementwise.
    const RunSpec a = RunSpec::make({0}, 1);
    const RunSpec b = RunSpec::make({}, 0);
    CHECK(expanded_delta(a, b) == 1);
    CHECK(delta(a, b) == 1);

    CHECK_THROWS_WITH_AS(delta(RunSpec::make({}, 2), RunSpec::make({2, 2}, 2)), "EqualRuns: delta of a run with itself is undefined", GameError);
}

TEST_CASE("delta agrees with the expansion oracle and is symmetric") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const RunSpec a = random_run(rng, 5, 4);
        const RunSpec b = random_run(rng, 5, 4);
        const auto oracle = expanded_delta(a, b);
        if (!oracle) {
            CHECK(a == b);
            continue;
        }
        CHECK(delta(a, b) == *oracle);
        CHECK(delta(b, a) == *oracle);
        CHECK(delta(a, b) < std::max(a.stem.size(), b.stem.size()) + 1);
    }
}

TEST_CASE("validate_game on the stated examples") {
    CHECK(validate_game(one_alice()).ok());
    CHECK(validate_game(FiniteGame{}).ok());  // empty game is the initial object

    const FiniteGame dup{{RunSpec::make({}, 0), RunSpec{{0}, 0}}, {}};
    const auto dup_report = validate_game(dup);
    REQUIRE_FALSE(dup_report.ok());
    bool has_dup = false, has_canon = false;
    for (const auto& issue : dup_report.issues) {
        if (issue.code == "DuplicateRun") has_dup = true;
        if (issue.code == "NonCanonicalRunSpec") has_canon = true;
    }
    CHECK(has_dup);
    CHECK(has_canon);

    const FiniteGame bad_alice{{RunSpec::make({}, 0)}, {3}};
    REQUIRE_FALSE(validate_game(bad_alice).ok());
    CHECK(validate_game(bad_alice).issues.front().code == "BadAliceIndex");
}

TEST_CASE("tree_of matches prefix enumeration") {
    const FiniteGame single = one_alice();
    const TruncatedTree t1 = tree_of(single, 3);
    CHECK(t1.moments.size() == 4);  // chain of 4 moments

    const FiniteGame split0{{RunSpec::make({}, 0), RunSpec::make({1}, 0)}, {0, 1}};
    const TruncatedTree t2 = tree_of(split0, 2);
    CHECK(t2.level_size(0) == 1);
    CHECK(t2.level_size(1) == 2);
    CHECK(t2.level_size(2) == 2);
    CHECK(t2.moments == prefix_enumeration(split0, 2));

    const FiniteGame split1{{RunSpec::make({}, 0), RunSpec::make({0, 1}, 0)}, {0, 1}};
    const TruncatedTree t3 = tree_of(split1, 2);
    CHECK(t3.level_size(0) == 1);
    CHECK(t3.level_size(1) == 1);
    CHECK(t3.level_size(2) == 2);
    CHECK(t3.moments == prefix_enumeration(split1, 2));
}

TEST_CASE("tree_of windows are prefix closed with successors") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const FiniteGame g = random_game(rng, 4, 6);
        REQUIRE(validate_game(g).ok());
        for (std::size_t d = 0; d <= 10; d += 5) {
            const TruncatedTree t = tree_of(g, d);
            CHECK(t.moments == prefix_enumeration(g, d));
            for (const Moment& m : t.moments) {
                if (!m.empty())
                    CHECK(t.contains(Moment(m.begin(), m.end() - 1)));
                if (m.size() < d) {
                    bool has_successor = false;
                    for (const Moment& other : t.moments)
                        if (other.size() == m.size() + 1 &&
                            Moment(other.begin(), other.end() - 1) == m)
                            has_successor = true;
                    CHECK(has_successor);
                }
            }
        }
    }
}

TEST_CASE("level sizes grow then stabilize at the run count") {
    const FiniteGame g{{RunSpec::make({}, 0), RunSpec::make({0, 0, 0, 1}, 0),
                        RunSpec::make({2}, 0)},
                       {0, 1}};
    REQUIRE(validate_game(g).ok());
    const std::size_t bd = branching_depth(g);
    const TruncatedTree t = tree_of(g, bd + 3);
    std::size_t prev = 1;
    for (std::size_t n = 0; n <= bd + 3; ++n) {
        const std::size_t size = t.level_size(n);
        CHECK(size >= prev);
        prev = size;
    }
    CHECK(t.level_size(bd + 3) == g.size());
}

TEST_CASE("branching_depth on the stated examples") {
    CHECK(branching_depth(one_alice()) == 0);
    const FiniteGame two{{RunSpec::make({}, 0), RunSpec::make({1}, 0)}, {}};
    CHECK(branching_depth(two) == 1);
    // three runs with pairwise deltas {0, 4}
    const FiniteGame three{{RunSpec::make({}, 0), RunSpec::make({0, 0, 0, 0, 1}, 0),
                            RunSpec::make({1}, 0)},
                           {}};
    CHECK(delta(three.runs[0], three.runs[1]) == 4);
    CHECK(delta(three.runs[0], three.runs[2]) == 0);
    CHECK(branching_depth(three) == 5);
    CHECK_THROWS_AS(branching_depth(FiniteGame{}), GameError);
}

TEST_CASE("pairwise deltas satisfy the ultrametric law") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const FiniteGame g = random_game(rng, 5, 6);
        const auto d = delta_matrix(g);
        CHECK(is_ultrametric_delta(d));
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j)
                for (std::size_t k = 0; k < g.size(); ++k) {
                    if (i == j || j == k || i == k) continue;
                    CHECK(d[i][k] >= std::min(d[i][j], d[j][k]));
                }
    }
}

TEST_CASE("build_game_from_delta realizes the prescribed matrix") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        const FiniteGame g = random_game(rng, 5, 5);
        const auto d = delta_matrix(g);
        std::vector<bool> flags(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) flags[i] = g.is_alice(i);
        const FiniteGame built = build_game_from_delta(d, flags);
        REQUIRE(validate_game(built).ok());
        CHECK(delta_matrix(built) == d);
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(built.is_alice(i) == g.is_alice(i));
    }
    const std::vector<std::vector<std::size_t>> bad{
        {kNoDelta, 2, 0}, {2, kNoDelta, 1}, {0, 1, kNoDelta}};
    CHECK_THROWS_AS(build_game_from_delta(bad, {true, true, true}), GameError);
}
