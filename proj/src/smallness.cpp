#include "fgames/smallness.hpp"

#include <algorithm>

namespace fgames {

GameSequence padding_sequence(const FiniteGame& g, std::size_t run, std::size_t stages,
                              bool free_payoff) {
    if (run >= g.size()) throw GameError("BadAliceIndex", "no such run");
    const RunSpec& removed = g.runs[run];
    Move fresh = 0;
    for (const RunSpec& r : g.runs) {
        fresh = std::max(fresh, r.tail + 1);
        for (Move x : r.stem) fresh = std::max(fresh, x + 1);
    }

    GameSequence seq;
    for (std::size_t n = 0; n <= stages; ++n) {
        FiniteGame stage;
        auto add = [&](RunSpec r, bool alice) {
            if (free_payoff || alice) stage.alice.insert(stage.runs.size());
            stage.runs.push_back(std::move(r));
        };
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i == run) continue;
            if (delta(g.runs[i], removed) < n) add(g.runs[i], g.is_alice(i));
        }
        for (std::size_t k = 0; k <= n; ++k)
            add(RunSpec::make(removed.prefix(k), fresh), false);  // comb at R|k
        seq.games.push_back(std::move(stage));
    }
    for (std::size_t n = 0; n + 1 < seq.games.size(); ++n) {
        GameMorphism link{seq.games[n], seq.games[n + 1], {}};
        for (const RunSpec& r : seq.games[n].runs) {
            std::size_t target = kNoDelta;
            for (std::size_t j = 0; j < seq.games[n + 1].size(); ++j)
                if (seq.games[n + 1].runs[j] == r) {
                    target = j;
                    break;
                }
            link.run_map.push_back(target);
        }
        seq.links.push_back(std::move(link));
    }
    return seq;
}

std::pair<GameSequence, std::vector<RunSpec>> bob_counterexample(const FiniteGame& g,
                                                                 std::size_t bob_run,
                                                                 std::size_t stages) {
    if (bob_run >= g.size()) throw GameError("BadAliceIndex", "no such run");
    if (g.is_alice(bob_run)) throw GameError("RunIsAlice", "padded run must be won by Bob");
    GameSequence seq = padding_sequence(g, bob_run, stages, false);
    // Window coordinates: the colimit of an inclusion chain keeps run specs as
    // they are, so the inclusion of g is its own run list.
    return {std::move(seq), g.runs};
}

GameSequence partition_counterexample(const FiniteGame& window_game, std::size_t stages) {
    std::vector<Move> first_moves;
    for (const RunSpec& r : window_game.runs) {
        const Move x = r.at(0);
        if (std::find(first_moves.begin(), first_moves.end(), x) == first_moves.end())
            first_moves.push_back(x);
    }
    std::sort(first_moves.begin(), first_moves.end());
    if (first_moves.size() < stages + 2)
        throw GameError("TooFewBranches",
                        "window has " + std::to_string(first_moves.size()) +
                            " root cones, need " + std::to_string(stages + 2));

    GameSequence seq;
    for (std::size_t n = 0; n <= stages; ++n) {
        FiniteGame stage;
        for (std::size_t i = 0; i < window_game.size(); ++i) {
            const Move x = window_game.runs[i].at(0);
            const auto it = std::find(first_moves.begin(), first_moves.end(), x);
            if (static_cast<std::size_t>(it - first_moves.begin()) <= n) {
                if (window_game.is_alice(i)) stage.alice.insert(stage.runs.size());
                stage.runs.push_back(window_game.runs[i]);
            }
        }
        seq.games.push_back(std::move(stage));
    }
    for (std::size_t n = 0; n + 1 < seq.games.size(); ++n) {
        GameMorphism link{seq.games[n], seq.games[n + 1], {}};
        for (const RunSpec& r : seq.games[n].runs)
            for (std::size_t j = 0; j < seq.games[n + 1].size(); ++j)
                if (seq.games[n + 1].runs[j] == r) {
                    link.run_map.push_back(j);
                    break;
                }
        seq.links.push_back(std::move(link));
    }
    return seq;
}

std::pair<std::size_t, GameMorphism> wfs_positive_certificate(
    const FiniteGame& g, const GameSequence& seq, const std::vector<RunSpec>& window_runs) {
    if (g.alice.size() != g.size())
        throw GameError("NotTrivialForAlice", "positive certificates need trivially-Alice games");
    if (window_runs.size() != g.size())
        throw GameError("InvalidEmbedding", "window assignment does not cover the runs");
    const std::size_t last = seq.stages() - 1;

    // Representatives per run of g, found stage by stage: rep i at the current
    // stage pushes onto the class of window_runs[i] and realizes all pairwise
    // deltas demanded by the window assignment (the repeated lifting lemma).
    std::vector<std::size_t> reps;
    std::size_t cur = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool placed = false;
        for (std::size_t m = cur; m < seq.stages() && !placed; ++m) {
            std::vector<std::size_t> pushed(reps.size());
            for (std::size_t j = 0; j < reps.size(); ++j) pushed[j] = seq.push_run(cur, reps[j], m);
            for (std::size_t y : seq.games[m].alice) {
                if (seq.pushed_runspec(m, y, last) != window_runs[i]) continue;
                bool ok = true;
                for (std::size_t j = 0; j < reps.size() && ok; ++j) {
                    if (pushed[j] == y) {
                        ok = false;
                        break;
                    }
                    const std::size_t want = delta(window_runs[i], window_runs[j]);
                    if (delta(seq.games[m].runs[y], seq.games[m].runs[pushed[j]]) != want) ok = false;
                }
                if (!ok) continue;
                for (std::size_t j = 0; j < reps.size(); ++j) reps[j] = pushed[j];
                reps.push_back(y);
                cur = m;
                placed = true;
                break;
            }
        }
        if (!placed)
            throw GameError("UnstableWindow", "no materialized stage realizes the factoring");
    }

    GameMorphism factoring{g, seq.games[cur], reps};
    if (!is_nonexpanding(factoring) || !classify(factoring).is_a)
        throw GameError("UnstableWindow", "lifted representatives do not assemble to an A-morphism");
    return {cur, std::move(factoring)};
}

SmallnessVerdict wfs_verdict(const FiniteGame& g, SmallnessSetting setting, std::size_t stages) {
    SmallnessVerdict verdict;
    verdict.setting = setting;
    if (setting == SmallnessSetting::Gmes) {
        verdict.is_wfs = g.empty();
        if (verdict.is_wfs) {
            PositiveCertificate cert;
            cert.seq = example_chain_full(0);
            cert.stage = 0;
            cert.factoring = GameMorphism{FiniteGame{}, cert.seq.games[0], {}};
            verdict.positive = std::move(cert);
        } else {
            // Trees carry no payoff: pad the trivially-Alice copy of the tree.
            FiniteGame freed = g;
            freed.alice.clear();
            for (std::size_t i = 0; i < freed.size(); ++i) freed.alice.insert(i);
            NegativeCertificate cert;
            cert.seq = padding_sequence(freed, 0, stages, true);
            cert.window_runs = freed.runs;
            cert.refuted_stages = stages;
            verdict.negative = std::move(cert);
        }
        return verdict;
    }

    verdict.is_wfs = (g.alice.size() == g.size());
    if (verdict.is_wfs) {
        // Demonstrate on the canonical chain: embed g into the limit game, then
        // factor. The chain must materialize every image run; images produced by
        // the extension recursion have stems of length <= L over moves < W, and
        // all such runs appear within the first zero_run_cover_count(L, W).
        const GflEmbedding emb = extend_embedding(FiniteGame{}, g, GflEmbedding{});
        std::size_t max_stem = 1;
        Move max_move = 1;
        for (const RunSpec& r : emb.image) {
            max_stem = std::max(max_stem, r.stem.size());
            max_move = std::max(max_move, static_cast<Move>(r.tail + 1));
            for (Move x : r.stem) max_move = std::max(max_move, static_cast<Move>(x + 1));
        }
        const std::size_t need = zero_run_cover_count(max_stem, max_move);
        PositiveCertificate cert;
        cert.seq = example_chain_covering(need);
        cert.window_runs = emb.image;
        auto [stage, factoring] = wfs_positive_certificate(g, cert.seq, cert.window_runs);
        cert.stage = stage;
        cert.factoring = std::move(factoring);
        verdict.positive = std::move(cert);
    } else {
        std::size_t bob = 0;
        while (g.is_alice(bob)) ++bob;
        auto [seq, inclusion] = bob_counterexample(g, bob, stages);
        NegativeCertificate cert;
        cert.seq = std::move(seq);
        cert.window_runs = std::move(inclusion);
        cert.refuted_stages = stages;
        verdict.negative = std::move(cert);
    }
    return verdict;
}

}  // namespace fgames
