#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgames {

using Move = std::uint32_t;
using Moment = std::vector<Move>;

/// Error carrying a stable machine-readable code (reused verbatim by CLI diagnostics).
class GameError : public std::runtime_error {
public:
    GameError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// One run of a finite game: the eventually constant infinite sequence
///   stem[0], ..., stem[k-1], tail, tail, ...
/// Canonical form forbids a stem ending in the tail symbol, so denotation is injective.
struct RunSpec {
    std::vector<Move> stem;
    Move tail = 0;

    /// Builds a canonical RunSpec (trims trailing tail symbols off the stem).
    static RunSpec make(std::vector<Move> stem_in, Move tail_in);

    Move at(std::size_t i) const { return i < stem.size() ? stem[i] : tail; }
    Moment prefix(std::size_t n) const;
    bool eventually_zero() const { return tail == 0; }
    bool is_canonical() const { return stem.empty() || stem.back() != tail; }
    /// True when the denoted sequence passes through the given moment.
    bool passes_through(const Moment& m) const;
    /// All moves below `width`, i.e. the run lives in the width-bounded tree.
    bool fits_alphabet(Move width) const;

    auto operator<=>(const RunSpec&) const = default;
};

/// First index where two distinct runs disagree.
/// Throws GameError("EqualRuns") when the denoted sequences coincide.
std::size_t delta(const RunSpec& r1, const RunSpec& r2);

/// Sentinel used on the diagonal of delta matrices (a run never differs from itself).
inline constexpr std::size_t kNoDelta = static_cast<std::size_t>(-1);

/// A finite game: finitely many runs plus the set of run indices won by Alice.
/// The game tree is implicit (all finite prefixes of the runs).
struct FiniteGame {
    std::vector<RunSpec> runs;
    std::set<std::size_t> alice;

    bool is_alice(std::size_t i) const { return alice.count(i) != 0; }
    std::size_t size() const { return runs.size(); }
    bool empty() const { return runs.empty(); }

    auto operator<=>(const FiniteGame&) const = default;
};

struct ValidationIssue {
    std::string code;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

/// Checks all FiniteGame invariants: canonical runs, pairwise distinct denotations,
/// alice indices in range, and the prefix tree having exactly the declared branches.
ValidationReport validate_game(const FiniteGame& g);

/// Depth-bounded window onto the game tree.
struct TruncatedTree {
    std::size_t depth = 0;
    std::set<Moment> moments;
    /// For each moment of length exactly `depth`, the run indices passing through it.
    std::map<Moment, std::set<std::size_t>> run_markers;

    bool contains(const Moment& m) const { return moments.count(m) != 0; }
    std::size_t level_size(std::size_t n) const;
};

/// All prefixes (length <= depth) of the runs of a valid game.
TruncatedTree tree_of(const FiniteGame& g, std::size_t depth);

/// Least n such that every moment of length >= n has a unique successor;
/// equals 1 + max pairwise delta (0 for a single run). Throws EmptyGame.
std::size_t branching_depth(const FiniteGame& g);

/// Pairwise delta matrix with kNoDelta on the diagonal.
std::vector<std::vector<std::size_t>> delta_matrix(const FiniteGame& g);

/// Ultrametric law in delta form: D(i,k) >= min(D(i,j), D(j,k)) for all triples.
bool is_ultrametric_delta(const std::vector<std::vector<std::size_t>>& d);

/// Builds the concrete game realizing a prescribed ultrametric delta matrix and
/// payoff flags: at every moment the child classes take moves 0,1,2,... in order
/// of least member, so the result depends only on (matrix, flags).
/// Throws GameError("NotUltrametric") when the matrix violates the law.
FiniteGame build_game_from_delta(const std::vector<std::vector<std::size_t>>& d,
                                 const std::vector<bool>& alice_flags);

}  // namespace fgames
