#pragma once

#include "fgames/fraisse.hpp"

namespace fgames {

enum class SmallnessSetting {
    GamesA,        // all games, A-morphisms
    GamesEmbPair,  // finite games with embeddings inside the A-morphism category
    Gmes,          // bare trees, chronological maps
};

/// Positive certificate: a demonstration sequence, an embedding of the game into
/// its colimit window, and the stage factoring found for it.
struct PositiveCertificate {
    GameSequence seq;
    std::vector<RunSpec> window_runs;  // image of the game in window coordinates
    std::size_t stage = 0;
    GameMorphism factoring;
};

/// Negative certificate: the padding sequence, the non-factoring inclusion and
/// the bound up to which factoring was refuted.
struct NegativeCertificate {
    GameSequence seq;
    std::vector<RunSpec> window_runs;
    std::size_t refuted_stages = 0;
};

struct SmallnessVerdict {
    SmallnessSetting setting = SmallnessSetting::GamesA;
    bool is_wfs = false;
    std::optional<PositiveCertificate> positive;
    std::optional<NegativeCertificate> negative;
};

/// Weak finite smallness verdict with a constructive certificate attached:
/// in the game settings true iff the game is trivially won by Alice, in the
/// bare-tree setting true iff the tree is empty.
SmallnessVerdict wfs_verdict(const FiniteGame& g, SmallnessSetting setting,
                             std::size_t stages = 5);

/// The padding construction: stage n removes the strict extensions of R|n and
/// grafts constant-b combs at R|k for k <= n, with b a fresh move. Links are
/// inclusions. With free_payoff the stages are trivially-Alice (bare-tree
/// variant); otherwise payoff restricts from g and the combs are Bob runs.
GameSequence padding_sequence(const FiniteGame& g, std::size_t run, std::size_t stages,
                              bool free_payoff);

/// Non-factoring witness sequence for a Bob run: the padding construction with
/// induced payoff; the inclusion of g into the window (its own runs, including
/// the padded-away Bob run) fails to factor through any materialized stage.
/// Throws RunIsAlice. Returns the sequence and the inclusion in window
/// coordinates.
std::pair<GameSequence, std::vector<RunSpec>> bob_counterexample(const FiniteGame& g,
                                                                 std::size_t bob_run,
                                                                 std::size_t stages);

/// Partition counterexample over a window game with at least stages+2 cones at
/// the root: stage n keeps the runs whose first move lies in the first n+1
/// cones; the identity on the window then fails to factor through any stage.
/// Throws TooFewBranches.
GameSequence partition_counterexample(const FiniteGame& window_game, std::size_t stages);

/// Constructs the stage factoring of a trivially-Alice finite game through a
/// colimit window, matching all pairwise deltas by repeated payoff-run lifting.
/// window_runs[i] names the class (as a last-stage run spec) of run i of g.
/// Throws NotTrivialForAlice / UnstableWindow.
std::pair<std::size_t, GameMorphism> wfs_positive_certificate(const FiniteGame& g,
                                                              const GameSequence& seq,
                                                              const std::vector<RunSpec>& window_runs);

}  // namespace fgames
