#pragma once

#include <optional>

#include "fgames/core.hpp"

namespace fgames {

/// A morphism between finite games, stored as its run-to-run map. The moment map
/// is recovered from it: a non-expanding run map induces a unique chronological
/// map on moments.
struct GameMorphism {
    FiniteGame source;
    FiniteGame target;
    std::vector<std::size_t> run_map;

    auto operator<=>(const GameMorphism&) const = default;
};

struct MorphismKind {
    bool is_a = false;
    bool is_b = false;
    bool is_injective = false;
    bool is_embedding = false;
};

GameMorphism identity_morphism(const FiniteGame& g);

/// True when run_map is total, in range, and non-expanding:
/// delta_target(f(i), f(j)) >= delta_source(i, j) for all distinct mapped runs.
bool is_nonexpanding(const GameMorphism& m);

/// Flags of the morphism. Throws NotChronological when non-expansion fails.
/// is_injective holds iff the induced moment map is injective, which for run maps
/// means injective and delta-preserving (with equality).
MorphismKind classify(const GameMorphism& m);

/// Image of a source-tree moment under the induced chronological map.
/// Throws MomentNotInTree when t is not a moment of the source tree.
Moment moment_image(const GameMorphism& m, const Moment& t);

/// All embeddings g1 -> g2: injective, delta-preserving run maps with
/// i in alice1 <=> run_map(i) in alice2. Exhaustive, deterministic order.
std::vector<GameMorphism> enumerate_embeddings(const FiniteGame& g1, const FiniteGame& g2);

/// A bijective embedding if one exists.
std::optional<GameMorphism> are_isomorphic(const FiniteGame& g1, const FiniteGame& g2);

/// Distinguished representative of the isomorphism class: minimize the
/// (delta-matrix, payoff-flags) key over run permutations, then rebuild the game
/// with build_game_from_delta. Idempotent and a complete isomorphism invariant.
FiniteGame canonical_form(const FiniteGame& g);

/// Composition m2 after m1. Throws SourceTargetMismatch.
GameMorphism compose(const GameMorphism& m1, const GameMorphism& m2);

/// All canonical games with 1..max_runs runs and pairwise delta <= max_delta,
/// pairwise non-isomorphic, in a fixed deterministic order.
std::vector<FiniteGame> enumerate_canonical(std::size_t max_runs, std::size_t max_delta);

}  // namespace fgames
