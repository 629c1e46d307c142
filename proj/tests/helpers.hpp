#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>

#include "fgames/core.hpp"
#include "fgames/morphisms.hpp"

namespace fgames::testing {

// ---- independent oracles (kept free of the library's delta/tree code paths) --

/// Oracle for delta: expand both runs far enough and compare elementwise.
inline std::optional<std::size_t> expanded_delta(const RunSpec& r1, const RunSpec& r2) {
    const std::size_t len = std::max(r1.stem.size(), r2.stem.size()) + 1;
    for (std::size_t i = 0; i < len; ++i)
        if (r1.at(i) != r2.at(i)) return i;
    return std::nullopt;  // equal as infinite sequences
}

/// Oracle for tree_of: enumerate prefixes of the expanded runs directly.
inline std::set<Moment> prefix_enumeration(const FiniteGame& g, std::size_t depth) {
    std::set<Moment> moments;
    for (const RunSpec& r : g.runs) {
        Moment m;
        moments.insert(m);
        for (std::size_t i = 0; i < depth; ++i) {
            m.push_back(r.at(i));
            moments.insert(m);
        }
    }
    return moments;
}

/// Oracle for embeddings: plain brute force over all injections, checking the
/// payoff-iff condition and exact delta preservation on expanded runs.
inline std::size_t count_embeddings_brute(const FiniteGame& g1, const FiniteGame& g2) {
    if (g1.size() > g2.size()) return 0;
    std::vector<std::size_t> pick(g1.size(), 0);
    std::size_t count = 0;
    const std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == g1.size()) {
            ++count;
            return;
        }
        for (std::size_t v = 0; v < g2.size(); ++v) {
            bool ok = g1.is_alice(i) == g2.is_alice(v);
            for (std::size_t j = 0; j < i && ok; ++j) {
                if (pick[j] == v) ok = false;
                else if (expanded_delta(g2.runs[pick[j]], g2.runs[v]) !=
                         expanded_delta(g1.runs[j], g1.runs[i]))
                    ok = false;
            }
            if (!ok) continue;
            pick[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return count;
}

// ---- random fixtures ---------------------------------------------------------

inline RunSpec random_run(std::mt19937& rng, std::size_t max_stem, Move max_move) {
    std::uniform_int_distribution<std::size_t> len_dist(0, max_stem);
    std::uniform_int_distribution<Move> move_dist(0, max_move);
    std::vector<Move> stem(len_dist(rng));
    for (Move& x : stem) x = move_dist(rng);
    return RunSpec::make(std::move(stem), move_dist(rng));
}

/// Random valid game with at most max_runs runs and pairwise delta <= max_delta.
inline FiniteGame random_game(std::mt19937& rng, std::size_t max_runs, std::size_t max_delta,
                              Move max_move = 6) {
    std::uniform_int_distribution<std::size_t> count_dist(1, max_runs);
    const std::size_t want = count_dist(rng);
    FiniteGame g;
    std::size_t attempts = 0;
    while (g.runs.size() < want && attempts++ < 200) {
        RunSpec r = random_run(rng, max_delta, max_move);
        bool ok = true;
        for (const RunSpec& prev : g.runs) {
            if (prev == r) {
                ok = false;
                break;
            }
            if (delta(prev, r) > max_delta) {
                ok = false;
                break;
            }
        }
        if (ok) g.runs.push_back(std::move(r));
    }
    std::uniform_int_distribution<int> coin(0, 1);
    for (std::size_t i = 0; i < g.runs.size(); ++i)
        if (coin(rng)) g.alice.insert(i);
    return g;
}

/// Relabels moves with a global injective map and shuffles run order: a
/// different concrete presentation of an isomorphic game.
inline FiniteGame relabel_game(std::mt19937& rng, const FiniteGame& g) {
    Move top = 0;
    for (const RunSpec& r : g.runs) {
        top = std::max(top, r.tail);
        for (Move x : r.stem) top = std::max(top, x);
    }
    std::vector<Move> perm(top + 1);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);

    std::vector<std::size_t> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    FiniteGame out;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const RunSpec& r = g.runs[order[pos]];
        std::vector<Move> stem;
        for (Move x : r.stem) stem.push_back(perm[x]);
        out.runs.push_back(RunSpec::make(std::move(stem), perm[r.tail]));
        if (g.is_alice(order[pos])) out.alice.insert(pos);
    }
    return out;
}

}  // namespace fgames::testing
