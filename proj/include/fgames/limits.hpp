#pragma once

#include <functional>
#include <optional>

#include "fgames/constructions.hpp"

namespace fgames {

/// Finitely materialized prefix of an omega-sequence of finite games.
struct GameSequence {
    std::vector<FiniteGame> games;
    std::vector<GameMorphism> links;  // links[n]: games[n] -> games[n+1]
    /// Optional rule producing further stages on demand: given the index of the
    /// next stage and the current last game, returns (next game, link into it).
    std::function<std::pair<FiniteGame, GameMorphism>(std::size_t, const FiniteGame&)> generator;

    std::size_t stages() const { return games.size(); }
    void materialize_to(std::size_t stage_count);

    /// Composite run map from stage n to stage m (n <= m).
    std::size_t push_run(std::size_t n, std::size_t run, std::size_t m) const;
    /// Composite image of a stage-n moment at stage m.
    Moment push_moment(std::size_t n, const Moment& t, std::size_t m) const;
    /// The run of stage m that a stage-n run maps onto, as a RunSpec.
    RunSpec pushed_runspec(std::size_t n, std::size_t run, std::size_t m) const;

    /// Stage games valid, links well-typed and non-expanding.
    ValidationReport validate() const;
    bool is_embedding_sequence() const;
    bool links_are_a_morphisms() const;
};

/// (stage, run index) pair naming a run of a specific stage.
struct StageRun {
    std::size_t stage = 0;
    std::size_t run = 0;
    auto operator<=>(const StageRun&) const = default;
};

/// Depth-bounded window onto the colimit of a sequence in the A-morphism
/// category. Classes of moments are labelled by their image at the last
/// materialized stage (links are functions, so forward pushing decides
/// identification).
struct ColimitView {
    std::size_t depth = 0;
    std::size_t last_stage = 0;
    TruncatedTree classes;  // run_markers carry payoff-class indices
    /// Earliest representative per payoff class.
    std::vector<StageRun> payoff_runs;
    /// The class label (a last-stage run spec) per payoff class.
    std::vector<RunSpec> payoff_labels;
    /// legs[n]: window moments of stage n -> class labels.
    std::vector<std::map<Moment, Moment>> legs;
};

/// Materializes the colimit window. Throws UnstableWindow when the final link
/// still merges distinct window moments of its source stage, and requires links
/// to be A-morphisms.
ColimitView colimit(const GameSequence& seq, std::size_t depth);

/// Assembles the window as a finite game (class runs with payoff flags) together
/// with the per-stage run maps into it. Used by universal-property checks.
struct ColimitGame {
    FiniteGame game;
    std::vector<std::vector<std::size_t>> stage_run_maps;  // stage n run -> class run
};
ColimitGame colimit_game(const GameSequence& seq, std::size_t depth);

/// Depth/width window of the universal limit game: moments are all sequences
/// over {0,...,width-1} of length <= depth; a run is a payoff run exactly when
/// it is eventually zero.
struct GflView {
    std::size_t depth = 0;
    Move width = 0;

    bool contains(const Moment& m) const;
    std::vector<Moment> moments() const;
    /// Eventually-zero runs whose constancy is visible inside the window
    /// (stem shorter than depth, all moves < width).
    std::vector<RunSpec> payoff_runs() const;
    /// All window-visible runs regardless of tail (stem shorter than depth).
    std::vector<RunSpec> visible_runs() const;
};

/// The fixed enumeration of eventually-zero runs: blocks of increasing bound
/// k = max(stem length, max stem entry + 1), ordered by (length, lex) inside
/// each block. enumerate_zero_runs(count) returns the first `count` of them.
std::vector<RunSpec> enumerate_zero_runs(std::size_t count);

/// Number of leading runs of the fixed enumeration needed so that their
/// prefixes cover every moment of GflView(depth, width).
std::size_t zero_run_cover_count(std::size_t depth, Move width);

/// The increasing chain G_0 <= G_1 <= ... of trivially-Alice games where G_n
/// consists of the first n+1 eventually-zero runs; stage r of the result has
/// run_counts[r] runs. Links are inclusions.
GameSequence example_chain(const std::vector<std::size_t>& run_counts);
/// Stages 1, 2, ..., n+1 runs (the chain verbatim).
GameSequence example_chain_full(std::size_t last_stage);
/// Geometric (cofinal) materialization reaching at least `run_count` runs.
GameSequence example_chain_covering(std::size_t run_count);

/// Depth-bounded witnesses that the window has branches no stage run maps onto:
/// eventually-constant branches consistent with the class tree (constancy
/// visible within the window) that are not the push of any stage run. Returns
/// their depth-length moments. Requires an embedding sequence.
std::vector<Moment> new_branches(const GameSequence& seq, std::size_t depth);

/// Realizes the payoff-run lifting lemma: given x in the payoff of stage k and a
/// payoff class `target` distinct from the class of x, finds the earliest stage
/// M >= k and y in the payoff of stage M with class(y) = target and
/// delta_M(y, push of x) equal to the delta of the two classes.
/// Throws NotInPayoff / SameClass.
std::pair<std::size_t, std::size_t> lift_run_with_delta(const GameSequence& seq, std::size_t k,
                                                        std::size_t x, const ColimitView& view,
                                                        std::size_t target_class);

/// Jointly-E* check of a cocone given run-level legs: every window moment must
/// be covered by a leg image and every tracked payoff run must be the image of a
/// stage payoff run.
struct JointlyEStarReport {
    bool moments_ok = true;
    bool payoff_ok = true;
    std::vector<Moment> uncovered_moments;
    std::vector<RunSpec> uncovered_payoff;
    bool ok() const { return moments_ok && payoff_ok; }
};
JointlyEStarReport jointly_e_star(const GameSequence& seq,
                                  const std::vector<std::vector<RunSpec>>& leg_runs,
                                  const std::vector<Moment>& window_moments,
                                  const std::vector<RunSpec>& tracked_payoff, std::size_t depth);

/// Searches stages n <= search_bound for a morphism f1: g -> stage n whose
/// composite with the stage leg equals the given window assignment
/// (run i of g |-> window_runs[i]). Legs are given run-level, one RunSpec per
/// stage run. Returns the first factoring found.
std::optional<std::pair<std::size_t, GameMorphism>> factor_through(
    const GameSequence& seq, const std::vector<std::vector<RunSpec>>& leg_runs,
    const FiniteGame& g, const std::vector<RunSpec>& window_runs, std::size_t search_bound);

/// Run-level legs of the forward-pushing colimit cocone: stage n run i maps to
/// its push at the last stage, as a RunSpec.
std::vector<std::vector<RunSpec>> colimit_leg_runs(const GameSequence& seq);

}  // namespace fgames
