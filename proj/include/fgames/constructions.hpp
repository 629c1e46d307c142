#pragma once

#include "fgames/morphisms.hpp"

namespace fgames {

/// Span of embeddings out of a common apex, the input data of an amalgamation.
struct Span {
    FiniteGame apex;
    GameMorphism left;   // apex -> A
    GameMorphism right;  // apex -> B
};

/// Two legs into a common target; produced by coproducts and pushouts.
struct CoconePair {
    FiniteGame target;
    GameMorphism left_inj;
    GameMorphism right_inj;
};

/// Coproduct of finitely many games: summands glued at the root only, so runs
/// from different summands split immediately (cross delta 0). Realized by moving
/// each summand's first moves into a fresh disjoint range, then recanonicalizing.
std::pair<FiniteGame, std::vector<GameMorphism>> coproduct(const std::vector<FiniteGame>& gs);

/// Amalgamated pushout of a span of embeddings. Runs of the result are
/// runs(A) + (runs(B) minus the image of the right leg); the cross delta between
/// a from A and new b from B is max over apex runs c of
/// min(delta_A(a, left(c)), delta_B(b, right(c))), 0 when the apex is empty.
/// Throws NotEmbedding when a leg fails to be an embedding.
CoconePair pushout(const Span& s);

/// Joint-embedding witness: the binary coproduct with its injections.
CoconePair jep_witness(const FiniteGame& g1, const FiniteGame& g2);

/// Joint embedding in the comma category over a common target: given embeddings
/// f: G1 -> G and g: G2 -> G, returns the union subgame G', the corestrictions
/// f', g' and the inclusion i: G' -> G with i.f' = f and i.g' = g.
/// Throws TargetMismatch / NotEmbedding.
struct CommaWitness {
    FiniteGame union_game;
    GameMorphism left;       // G1 -> G'
    GameMorphism right;      // G2 -> G'
    GameMorphism inclusion;  // G' -> G
};
CommaWitness comma_jep_witness(const GameMorphism& f, const GameMorphism& g);

/// The game trivially won by Alice on the prefix tree of the given runs.
/// Throws DuplicateRun.
FiniteGame free_game(const std::vector<RunSpec>& runs);

}  // namespace fgames
