#include "fgames/core.hpp"

#include <algorithm>

namespace fgames {

RunSpec RunSpec::make(std::vector<Move> stem_in, Move tail_in) {
    while (!stem_in.empty() && stem_in.back() == tail_in) stem_in.pop_back();
    return RunSpec{std::move(stem_in), tail_in};
}

Moment RunSpec::prefix(std::size_t n) const {
    Moment m;
    m.reserve(n);
    for (std::size_t i = 0; i < n; ++i) m.push_back(at(i));
    return m;
}

bool RunSpec::passes_through(const Moment& m) const {
    for (std::size_t i = 0; i < m.size(); ++i)
        if (at(i) != m[i]) return false;
    return true;
}

bool RunSpec::fits_alphabet(Move width) const {
    if (tail >= width) return false;
    for (Move x : stem)
        if (x >= width) return false;
    return true;
}

std::size_t delta(const RunSpec& r1, const RunSpec& r2) {
    const std::size_t len = std::max(r1.stem.size(), r2.stem.size());
    for (std::size_t i = 0; i < len; ++i)
        if (r1.at(i) != r2.at(i)) return i;
    if (r1.tail != r2.tail) return len;
    throw GameError("EqualRuns", "delta of a run with itself is undefined");
}

ValidationReport validate_game(const FiniteGame& g) {
    ValidationReport report;
    for (std::size_t i = 0; i < g.runs.size(); ++i) {
        if (!g.runs[i].is_canonical())
            report.issues.push_back({"NonCanonicalRunSpec",
                                     "run " + std::to_string(i) + " has a stem ending in its tail"});
    }
    for (std::size_t i = 0; i < g.runs.size(); ++i) {
        const RunSpec a = RunSpec::make(g.runs[i].stem, g.runs[i].tail);
        for (std::size_t j = i + 1; j < g.runs.size(); ++j) {
            const RunSpec b = RunSpec::make(g.runs[j].stem, g.runs[j].tail);
            if (a == b)
                report.issues.push_back({"DuplicateRun",
                                         "runs " + std::to_string(i) + " and " + std::to_string(j) +
                                             " denote the same sequence"});
        }
    }
    for (std::size_t i : g.alice) {
        if (i >= g.runs.size())
            report.issues.push_back({"BadAliceIndex",
                                     "alice index " + std::to_string(i) + " out of range"});
    }
    if (!report.ok()) return report;

    // Representation check: the prefix tree of the runs has exactly the declared
    // runs as branches. With pairwise distinct eventually constant runs the tree
    // separates them at depth maxDelta + 1, where every moment lies on one run.
    if (g.runs.size() >= 2) {
        std::size_t max_delta = 0;
        for (std::size_t i = 0; i < g.runs.size(); ++i)
            for (std::size_t j = i + 1; j < g.runs.size(); ++j)
                max_delta = std::max(max_delta, delta(g.runs[i], g.runs[j]));
        const std::size_t d = max_delta + 1;
        std::set<Moment> level;
        for (const RunSpec& r : g.runs) level.insert(r.prefix(d));
        if (level.size() != g.runs.size())
            report.issues.push_back({"DuplicateRun", "runs do not separate at depth " +
                                                         std::to_string(d)});
    }
    return report;
}

std::size_t TruncatedTree::level_size(std::size_t n) const {
    std::size_t count = 0;
    for (const Moment& m : moments)
        if (m.size() == n) ++count;
    return count;
}

TruncatedTree tree_of(const FiniteGame& g, std::size_t depth) {
    TruncatedTree t;
    t.depth = depth;
    for (std::size_t i = 0; i < g.runs.size(); ++i) {
        for (std::size_t n = 0; n <= depth; ++n) t.moments.insert(g.runs[i].prefix(n));
        t.run_markers[g.runs[i].prefix(depth)].insert(i);
    }
    return t;
}

std::size_t branching_depth(const FiniteGame& g) {
    if (g.empty()) throw GameError("EmptyGame", "branching_depth needs at least one run");
    std::size_t max_delta = 0;
    bool any = false;
    for (std::size_t i = 0; i < g.runs.size(); ++i)
        for (std::size_t j = i + 1; j < g.runs.size(); ++j) {
            max_delta = std::max(max_delta, delta(g.runs[i], g.runs[j]));
            any = true;
        }
    return any ? max_delta + 1 : 0;
}

std::vector<std::vector<std::size_t>> delta_matrix(const FiniteGame& g) {
    const std::size_t n = g.runs.size();
    std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, kNoDelta));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = delta(g.runs[i], g.runs[j]);
    return d;
}

bool is_ultrametric_delta(const std::vector<std::vector<std::size_t>>& d) {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                if (d[i][k] < std::min(d[i][j], d[j][k])) return false;
            }
    return true;
}

FiniteGame build_game_from_delta(const std::vector<std::vector<std::size_t>>& d,
                                 const std::vector<bool>& alice_flags) {
    const std::size_t n = d.size();
    if (alice_flags.size() != n)
        throw GameError("BadAliceIndex", "flag vector does not match matrix size");
    if (!is_ultrametric_delta(d))
        throw GameError("NotUltrametric", "delta matrix violates the ultrametric law");

    FiniteGame g;
    if (n == 0) return g;

    std::size_t max_delta = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) max_delta = std::max(max_delta, d[i][j]);

    std::vector<std::vector<Move>> moves(n);
    // Classes at depth t group runs with d > t; they refine as t grows. Each class
    // splits its members into subclasses ordered by least member, which take the
    // per-moment move values 0,1,2,...
    std::vector<std::vector<std::size_t>> classes{std::vector<std::size_t>(n)};
    for (std::size_t i = 0; i < n; ++i) classes[0][i] = i;
    for (std::size_t depth = 0; depth <= max_delta; ++depth) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& cls : classes) {
            std::vector<std::vector<std::size_t>> sub;
            for (std::size_t i : cls) {
                bool placed = false;
                for (auto& s : sub) {
                    if (d[s.front()][i] > depth) {
                        s.push_back(i);
                        placed = true;
                        break;
                    }
                }
                if (!placed) sub.push_back({i});
            }
            for (std::size_t k = 0; k < sub.size(); ++k)
                for (std::size_t i : sub[k]) moves[i].push_back(static_cast<Move>(k));
            for (auto& s : sub) next.push_back(std::move(s));
        }
        classes = std::move(next);
    }

    for (std::size_t i = 0; i < n; ++i) {
        g.runs.push_back(RunSpec::make(std::move(moves[i]), 0));
        if (alice_flags[i]) g.alice.insert(i);
    }
    return g;
}

}  // namespace fgames
