#include <doctest.h>

#include "fgames/fraisse.hpp"
#include "helpers.hpp"

using namespace fgames;
using namespace fgames::testing;

namespace {

const FiniteGame kOneAlice{{RunSpec::make({}, 0)}, {0}};
const FiniteGame kOneBob{{RunSpec::make({}, 0)}, {}};

GflEmbedding embed_from_scratch(const FiniteGame& g) {
    return extend_embedding(FiniteGame{}, g, GflEmbedding{});
}

}  // namespace

TEST_CASE("extend_embedding base cases from the empty game") {
    const GflEmbedding alice = embed_from_scratch(kOneAlice);
    REQUIRE(alice.image.size() == 1);
    CHECK(alice.image[0] == RunSpec::make({}, 0));  // continuation by zeros

    const GflEmbedding bob = embed_from_scratch(kOneBob);
    REQUIRE(bob.image.size() == 1);
    CHECK(bob.image[0] == RunSpec::make({}, 1));  // constant-one tail
}

TEST_CASE("extend_embedding takes the least unused index at old moments") {
    // One Alice run mapped to the zero run; the supergame adds a Bob run at delta 0.
    FiniteGame sup{{RunSpec::make({}, 0), RunSpec::make({1}, 0)}, {0}};
    const GflEmbedding f{kOneAlice, {RunSpec::make({}, 0)}};
    const GflEmbedding ext = extend_embedding(kOneAlice, sup, f);
    CHECK(ext.image[0] == RunSpec::make({}, 0));  // extension keeps f
    CHECK(ext.image[1] == RunSpec::make({}, 1));  // first move 1, then one-tail
    CHECK(validate_gfl_embedding(ext).ok());
    CHECK(extension_gap_issues(kOneAlice, sup, ext).empty());
}

TEST_CASE("extend_embedding output contract on random pairs") {
    std::mt19937 rng(701);
    for (int trial = 0; trial < 60; ++trial) {
        const FiniteGame sup = random_game(rng, 5, 4);
        // Random subgame: keep a random subset of runs.
        FiniteGame sub;
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < sup.size(); ++i) {
            if (rng() % 2) continue;
            kept.push_back(i);
            if (sup.is_alice(i)) sub.alice.insert(sub.runs.size());
            sub.runs.push_back(sup.runs[i]);
        }
        const GflEmbedding base = embed_from_scratch(sub);
        REQUIRE(validate_gfl_embedding(base).ok());
        const GflEmbedding ext = extend_embedding(sub, sup, base);
        REQUIRE(validate_gfl_embedding(ext).ok());
        // Extension equality on the shared runs.
        for (std::size_t p = 0; p < kept.size(); ++p)
            CHECK(ext.image[kept[p]] == base.image[p]);
        // Payoff criterion and gap-freeness.
        for (std::size_t i = 0; i < sup.size(); ++i)
            CHECK(ext.image[i].eventually_zero() == sup.is_alice(i));
        CHECK(extension_gap_issues(sub, sup, ext).empty());
    }
}

TEST_CASE("extending in two steps and in one step both give valid embeddings") {
    const FiniteGame g1{{RunSpec::make({}, 0)}, {0}};
    const FiniteGame g2{{RunSpec::make({}, 0), RunSpec::make({1}, 0)}, {0}};
    const FiniteGame g3{{RunSpec::make({}, 0), RunSpec::make({1}, 0), RunSpec::make({0, 1}, 0)},
                        {0, 2}};
    const GflEmbedding f1 = embed_from_scratch(g1);
    const GflEmbedding two_step = extend_embedding(g2, g3, extend_embedding(g1, g2, f1));
    const GflEmbedding one_step = extend_embedding(g1, g3, f1);
    CHECK(validate_gfl_embedding(two_step).ok());
    CHECK(validate_gfl_embedding(one_step).ok());
    CHECK(two_step.image[0] == f1.image[0]);
    CHECK(one_step.image[0] == f1.image[0]);
}

TEST_CASE("extend_embedding rejects bad inputs") {
    const FiniteGame other{{RunSpec::make({2}, 0)}, {0}};
    CHECK_THROWS_WITH_AS(extend_embedding(other, kOneAlice, embed_from_scratch(other)),
                         "NotSubgame: run 0 missing from the supergame", GameError);
    const GflEmbedding broken{kOneAlice, {RunSpec::make({}, 1)}};  // Alice to a one-tail
    CHECK_THROWS_AS(extend_embedding(kOneAlice, kOneAlice, broken), GameError);
}

TEST_CASE("fraisse_sequence starts at the first enumerated domain and links embed") {
    const GameSequence one = fraisse_sequence(1, 1);
    REQUIRE(one.stages() == 1);
    CHECK(are_isomorphic(one.games[0], kOneAlice).has_value());

    const GameSequence seq = fraisse_sequence(12, 2);
    REQUIRE(seq.stages() == 12);
    CHECK(seq.validate().ok());
    CHECK(seq.is_embedding_sequence());
}

TEST_CASE("fraisse_sequence is deterministic") {
    const GameSequence a = fraisse_sequence(8, 2);
    const GameSequence b = fraisse_sequence(8, 2);
    CHECK(a.games == b.games);
}

TEST_CASE("verify_fraisse accepts the real thing and rejects constant chains") {
    const GameSequence seq = fraisse_sequence(40, 2);
    const FraisseReport report = verify_fraisse(seq, 2, 2);
    CHECK(report.u_ok);
    CHECK(report.a_ok);
    CHECK(report.a_checked > 0);

    // Constant one-run Alice sequence: (U) fails for the one-run Bob game.
    GameSequence constant;
    constant.games = {kOneAlice, kOneAlice};
    constant.links = {identity_morphism(kOneAlice)};
    const FraisseReport cr = verify_fraisse(constant, 1, 1);
    CHECK_FALSE(cr.u_ok);
    bool bob_missing = false;
    for (const FiniteGame& g : cr.u_missing)
        if (g.alice.empty()) bob_missing = true;
    CHECK(bob_missing);

    // The trivially-Alice chain misses every Bob-run game as well.
    const FraisseReport chain_report = verify_fraisse(example_chain_full(5), 1, 1);
    CHECK_FALSE(chain_report.u_ok);
}

TEST_CASE("canonical cocone legs commute with links and are inclusions on the chain") {
    const GameSequence chain = example_chain_full(6);
    const auto legs = canonical_cocone_to_gfl(chain);
    REQUIRE(legs.size() == chain.stages());
    for (std::size_t n = 0; n < legs.size(); ++n) {
        CHECK(validate_gfl_embedding(legs[n]).ok());
        for (std::size_t i = 0; i < chain.games[n].size(); ++i)
            CHECK(legs[n].image[i] == chain.games[n].runs[i]);  // inclusion legs
    }
    for (std::size_t n = 0; n + 1 < legs.size(); ++n)
        for (std::size_t i = 0; i < chain.games[n].size(); ++i)
            CHECK(legs[n + 1].image[chain.links[n].run_map[i]] == legs[n].image[i]);
}

TEST_CASE("canonical cocone of a fraisse sequence is jointly E-star on a window") {
    const std::size_t depth = 2;
    const Move width = 2;
    const GameSequence seq = fraisse_sequence(40, 2);
    const auto legs = canonical_cocone_to_gfl(seq);
    for (std::size_t n = 0; n + 1 < legs.size(); ++n)
        for (std::size_t i = 0; i < seq.games[n].size(); ++i)
            CHECK(legs[n + 1].image[seq.links[n].run_map[i]] == legs[n].image[i]);

    std::vector<std::vector<RunSpec>> leg_runs(legs.size());
    for (std::size_t n = 0; n < legs.size(); ++n) leg_runs[n] = legs[n].image;
    const GflView window{depth, width};
    const auto report =
        jointly_e_star(seq, leg_runs, window.moments(), window.payoff_runs(), depth);
    CHECK(report.ok());
}

TEST_CASE("back_and_forth on the stated examples") {
    // f = g: the automorphism fixes the image of f.
    const GflEmbedding f{kOneAlice, {RunSpec::make({}, 0)}};
    const PartialAutomorphism fix = back_and_forth(kOneAlice, f, f, 4, 3);
    CHECK(validate_partial_automorphism(fix).ok());
    CHECK(fix.run_image(RunSpec::make({}, 0)) == RunSpec::make({}, 0));

    // Zero run against the run branching off at 1: the window swap.
    const GflEmbedding g{kOneAlice, {RunSpec::make({1}, 0)}};
    const PartialAutomorphism u = back_and_forth(kOneAlice, f, g, 4, 4);
    CHECK(validate_partial_automorphism(u).ok());
    CHECK(u.forward.at(Moment{0}) == Moment{1});
    CHECK(u.run_image(RunSpec::make({}, 0)) == RunSpec::make({1}, 0));

    // Forward then backward is the identity on the window.
    for (const auto& [m, v] : u.forward) CHECK(u.backward.at(v) == m);

    // Level-wise bijectivity to the window depth.
    const GflView window{4, 4};
    for (const Moment& m : window.moments()) {
        REQUIRE(u.forward.count(m) == 1);
        CHECK(window.contains(u.forward.at(m)));
    }
}

TEST_CASE("back_and_forth transports payoff status and composes with f") {
    const std::vector<FiniteGame> pool = enumerate_canonical(2, 2);
    int checked = 0;
    for (const FiniteGame& a : pool) {
        const auto embs = enumerate_window_embeddings(a, 4, 4, 6);
        for (std::size_t i = 0; i < embs.size() && checked < 24; ++i)
            for (std::size_t j = 0; j < embs.size() && checked < 24; ++j) {
                const PartialAutomorphism u = back_and_forth(a, embs[i], embs[j], 4, 4);
                ++checked;
                REQUIRE(validate_partial_automorphism(u).ok());
                for (std::size_t r = 0; r < a.size(); ++r) {
                    const auto img = u.run_image(embs[i].image[r]);
                    REQUIRE(img.has_value());
                    CHECK(*img == embs[j].image[r]);  // u . f = g on the runs of a
                }
            }
    }
    CHECK(checked > 0);
}

TEST_CASE("back_and_forth window escape raises WindowTooSmall") {
    const GflEmbedding f{kOneAlice, {RunSpec::make({}, 0)}};
    const GflEmbedding g{kOneAlice, {RunSpec::make({7}, 0)}};
    CHECK_THROWS_WITH_AS(back_and_forth(kOneAlice, f, g, 3, 3),
                         "WindowTooSmall: embedding image leaves the window alphabet", GameError);
}

TEST_CASE("enumerate_window_embeddings respects payoff and delta") {
    const FiniteGame mixed{{RunSpec::make({}, 0), RunSpec::make({1}, 0)}, {0}};
    const auto embs = enumerate_window_embeddings(mixed, 3, 2, 0);
    CHECK(!embs.empty());
    for (const GflEmbedding& e : embs) {
        CHECK(validate_gfl_embedding(e).ok());
        CHECK(e.image[0].eventually_zero());
        CHECK_FALSE(e.image[1].eventually_zero());
        CHECK(delta(e.image[0], e.image[1]) == 0);
    }
}

TEST_CASE("verify_matching on the trivially-Alice chain") {
    const std::size_t depth = 2;
    const Move width = 2;
    const GameSequence chain = example_chain_covering(zero_run_cover_count(depth, width));
    std::vector<GflEmbedding> legs;
    for (const FiniteGame& g : chain.games) legs.push_back(GflEmbedding{g, g.runs});
    const MatchingReport report =
        verify_matching(chain, legs, 2, depth, width, MatchingSetting::FreeAlice);
    CHECK(report.f1_ok);
    CHECK(report.f2_ok);
    CHECK(report.h_ok);
    CHECK(report.bf_ok);
    CHECK(report.f1_checked > 0);
}

TEST_CASE("verify_tight_squeeze handles the degenerate collapse instance") {
    // Constant two-run-Bob chain squeezed onto a one-run-Bob chain by the
    // collapsing map: the transformation is not a levelwise embedding, so the
    // check is vacuous.
    const FiniteGame two_bob{{RunSpec::make({}, 0), RunSpec::make({1}, 0)}, {}};
    GameSequence sp;  // constant two-run chain
    sp.games = {two_bob, two_bob};
    sp.links = {identity_morphism(two_bob)};
    GameSequence s;  // constant one-run chain
    s.games = {kOneBob, kOneBob};
    s.links = {identity_morphism(kOneBob)};
    const std::vector<GameMorphism> theta{GameMorphism{two_bob, kOneBob, {0, 0}},
                                          GameMorphism{two_bob, kOneBob, {0, 0}}};
    const std::vector<GflEmbedding> legs{GflEmbedding{kOneBob, {RunSpec::make({}, 1)}},
                                         GflEmbedding{kOneBob, {RunSpec::make({}, 1)}}};
    const SqueezeReport report = verify_tight_squeeze(sp, s, theta, legs, 2, 2, 1, 1);
    CHECK_FALSE(report.theta_embeddings);
    CHECK(report.vacuous);

    // Identity transformation on an honest chain inherits both conditions.
    const GameSequence chain = example_chain_covering(zero_run_cover_count(2, 2));
    std::vector<GameMorphism> id_theta;
    std::vector<GflEmbedding> chain_legs;
    for (const FiniteGame& g : chain.games) {
        id_theta.push_back(identity_morphism(g));
        chain_legs.push_back(GflEmbedding{g, g.runs});
    }
    const SqueezeReport ok = verify_tight_squeeze(chain, chain, id_theta, chain_legs, 2, 2, 1, 1);
    CHECK_FALSE(ok.vacuous);
    CHECK(ok.precondition_colimit);
    CHECK(ok.i_ok);
    // (U) fails within bound 1 for Bob games on a trivially-Alice chain, so the
    // Fraisse transfer is vacuously inherited.
    CHECK(ok.ii_vacuous);
    CHECK(ok.ii_ok);

    const std::vector<GameMorphism> bad_theta{identity_morphism(kOneAlice)};
    CHECK_THROWS_AS(verify_tight_squeeze(chain, chain, bad_theta, chain_legs, 2, 2, 1, 1),
                    GameError);
}
