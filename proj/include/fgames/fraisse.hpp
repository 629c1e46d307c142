#pragma once

#include "fgames/limits.hpp"

namespace fgames {

/// An embedding of a finite game into the universal limit game, given by the
/// image run (a run spec over the naturals) of each source run. Alice runs map
/// to eventually-zero runs and Bob runs to eventually-nonzero ones.
struct GflEmbedding {
    FiniteGame source;
    std::vector<RunSpec> image;

    auto operator<=>(const GflEmbedding&) const = default;
};

ValidationReport validate_gfl_embedding(const GflEmbedding& f);

/// The subgame of the limit game spanned by the given runs: payoff decided by
/// the eventually-zero criterion. Runs are deduplicated and sorted.
FiniteGame limit_subgame(std::vector<RunSpec> runs);

/// For g a subgame of g_sup (runs of g literally among runs of g_sup, alice sets
/// consistent), returns for each g run its index in g_sup.
/// Throws NotSubgame.
std::vector<std::size_t> subgame_indices(const FiniteGame& g, const FiniteGame& g_sup);

/// The extension recursion: extends an embedding of g into the limit game to all
/// of g_sup. Old moments keep their values; a new moment below territory outside
/// g's tree continues with 0 when a unique Alice run remains, with 1 when a
/// unique Bob run remains (falling back to the least unused index when the
/// preferred one is taken), and otherwise takes the least index unused by its
/// siblings. Throws NotSubgame / InvalidEmbedding.
GflEmbedding extend_embedding(const FiniteGame& g, const FiniteGame& g_sup, const GflEmbedding& f);

/// Per-moment index-gap report of an extension, for the gap-freeness property:
/// whenever a new child takes index n, every k < n is taken by some sibling,
/// except for the designated Bob-tail steps which take index 1 outright.
struct GapIssue {
    Moment parent;
    Move used;
    Move missing;
};
std::vector<GapIssue> extension_gap_issues(const FiniteGame& g, const FiniteGame& g_sup,
                                           const GflEmbedding& extended);

/// Deterministic Fraissé chain: fairly cycles through all embeddings between
/// canonical games within enum_bound (runs and delta both bounded), absorbing
/// each one by a pushout (when the domain matches an earlier stage up to
/// isomorphism) or a coproduct followed by a pushout.
GameSequence fraisse_sequence(std::size_t steps, std::size_t enum_bound);

struct FraisseReport {
    bool u_ok = true;
    std::vector<FiniteGame> u_missing;
    bool a_ok = true;
    std::size_t a_checked = 0;
    struct AFailure {
        std::size_t stage;
        FiniteGame target;
        std::vector<std::size_t> run_map;
    };
    std::vector<AFailure> a_failures;
    bool ok() const { return u_ok && a_ok; }
};

/// (U): every canonical game within u_bound embeds into some stage.
/// (A): for every stage with at most a_bound runs and every embedding f of it
/// into a canonical game x within a_bound, some later stage m and g: x -> F(m)
/// satisfy g . f = F_n^m (found by brute force).
FraisseReport verify_fraisse(const GameSequence& seq, std::size_t u_bound, std::size_t a_bound);

/// Cocone legs into the limit game obtained by iterating the extension
/// recursion along the links, starting from the empty embedding. Legs commute
/// with the links exactly.
std::vector<GflEmbedding> canonical_cocone_to_gfl(const GameSequence& seq);

/// Depth-bounded window automorphism of the limit game.
struct PartialAutomorphism {
    std::size_t depth = 0;
    Move width = 0;
    std::map<Moment, Moment> forward;
    std::map<Moment, Moment> backward;
    std::vector<std::pair<RunSpec, RunSpec>> tracked_runs;

    bool is_identity() const;
    /// Image of a run resolvable in the window (tracked, or transported by the
    /// forward moment map when its constancy settles within the window).
    std::optional<RunSpec> run_image(const RunSpec& r) const;
};

ValidationReport validate_partial_automorphism(const PartialAutomorphism& u);

/// Builds an automorphism u of the (depth, width) window with u.f = g, by
/// zig-zagging the extension recursion over the canonical exhaustion of the
/// limit game (stages = leading eventually-zero runs). Throws WindowTooSmall
/// when images leave the window alphabet.
PartialAutomorphism back_and_forth(const FiniteGame& a, const GflEmbedding& f,
                                   const GflEmbedding& g, std::size_t depth, Move width);

enum class MatchingSetting {
    FreeAlice,  // quantify over trivially-Alice canonical games
    AllGames,   // quantify over all canonical games
};

struct MatchingReport {
    bool f1_ok = true;
    std::vector<GflEmbedding> f1_witnesses;  // non-factoring window embeddings
    bool f2_ok = true;
    bool h_ok = true;
    bool bf_ok = true;
    std::size_t f1_checked = 0;
    std::size_t automorphisms_checked = 0;
    bool ok() const { return f1_ok && f2_ok && h_ok && bf_ok; }
};

/// Matching-pair conditions for a sequence with cocone legs into the limit game:
/// (F1) every embedding of a canonical game within f1_bound into the
/// (depth, width) window factors through some leg; (F2) legs are monic;
/// (H) every nonidentity automorphism produced from fixture back-and-forth runs
/// moves some leg; (BF) those back-and-forth runs succeed.
MatchingReport verify_matching(const GameSequence& seq, const std::vector<GflEmbedding>& legs,
                               std::size_t f1_bound, std::size_t depth, Move width,
                               MatchingSetting setting);

struct SqueezeReport {
    bool theta_natural = true;
    bool theta_embeddings = true;
    bool precondition_colimit = true;  // legs . theta injective and jointly E*
    bool vacuous = false;
    bool i_ok = false;   // legs themselves jointly E* (and injective)
    bool ii_ok = false;  // s inherits the Fraisse conditions from s_prime
    bool ii_vacuous = false;
};

/// Tight-squeeze transfer along a levelwise natural transformation
/// theta: s_prime -> s with cocone legs on s into the (depth, width) window.
SqueezeReport verify_tight_squeeze(const GameSequence& s_prime, const GameSequence& s,
                                   const std::vector<GameMorphism>& theta,
                                   const std::vector<GflEmbedding>& legs, std::size_t depth,
                                   Move width, std::size_t u_bound, std::size_t a_bound);

/// All embeddings of a canonical game into the (depth, width) window, as window
/// run assignments: delta-preserving, injective, Alice iff eventually zero.
/// Enumeration is deterministic; cap = 0 means unbounded.
std::vector<GflEmbedding> enumerate_window_embeddings(const FiniteGame& g, std::size_t depth,
                                                      Move width, std::size_t cap);

}  // namespace fgames
