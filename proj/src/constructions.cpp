#include "fgames/constructions.hpp"

#include <algorithm>
#include <numeric>

namespace fgames {

std::pair<FiniteGame, std::vector<GameMorphism>> coproduct(const std::vector<FiniteGame>& gs) {
    FiniteGame result;
    std::vector<std::vector<std::size_t>> images(gs.size());

    Move base = 0;
    for (std::size_t j = 0; j < gs.size(); ++j) {
        const FiniteGame& g = gs[j];
        Move max_first = 0;
        bool any = false;
        for (const RunSpec& r : g.runs) {
            max_first = std::max(max_first, r.at(0));
            any = true;
        }
        for (std::size_t i = 0; i < g.runs.size(); ++i) {
            const RunSpec& r = g.runs[i];
            std::vector<Move> stem = r.stem;
            if (stem.empty()) stem.push_back(r.tail);
            stem[0] += base;
            RunSpec moved = RunSpec::make(std::move(stem), r.tail);
            images[j].push_back(result.runs.size());
            if (g.is_alice(i)) result.alice.insert(result.runs.size());
            result.runs.push_back(std::move(moved));
        }
        if (any) base += max_first + 1;
    }

    std::vector<GameMorphism> injections;
    injections.reserve(gs.size());
    for (std::size_t j = 0; j < gs.size(); ++j)
        injections.push_back(GameMorphism{gs[j], result, images[j]});
    return {result, injections};
}

CoconePair pushout(const Span& s) {
    if (s.left.source != s.apex || s.right.source != s.apex)
        throw GameError("NotEmbedding", "span legs must start at the apex");
    if (!classify(s.left).is_embedding || !classify(s.right).is_embedding)
        throw GameError("NotEmbedding", "span legs must be embeddings");

    const FiniteGame& a = s.left.target;
    const FiniteGame& b = s.right.target;
    const std::size_t na = a.size();

    // B-runs outside the image of the right leg enter as fresh runs.
    std::vector<bool> in_image(b.size(), false);
    std::vector<std::size_t> apex_of(b.size(), kNoDelta);
    for (std::size_t c = 0; c < s.apex.size(); ++c) {
        in_image[s.right.run_map[c]] = true;
        apex_of[s.right.run_map[c]] = c;
    }
    std::vector<std::size_t> fresh;  // indices into b.runs
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!in_image[i]) fresh.push_back(i);

    const std::size_t n = na + fresh.size();
    std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, kNoDelta));
    const auto da = delta_matrix(a);
    const auto db = delta_matrix(b);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) d[i][j] = da[i][j];
    for (std::size_t p = 0; p < fresh.size(); ++p)
        for (std::size_t q = 0; q < fresh.size(); ++q)
            if (p != q) d[na + p][na + q] = db[fresh[p]][fresh[q]];
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t p = 0; p < fresh.size(); ++p) {
            // Free amalgam in delta coordinates; empty apex gives 0.
            std::size_t best = 0;
            for (std::size_t c = 0; c < s.apex.size(); ++c) {
                const std::size_t via_a = s.left.run_map[c] == i
                                              ? kNoDelta
                                              : da[i][s.left.run_map[c]];
                const std::size_t via_b = db[fresh[p]][s.right.run_map[c]];
                best = std::max(best, std::min(via_a, via_b));
            }
            d[i][na + p] = d[na + p][i] = best;
        }

    std::vector<bool> flags(n);
    for (std::size_t i = 0; i < na; ++i) flags[i] = a.is_alice(i);
    for (std::size_t p = 0; p < fresh.size(); ++p) flags[na + p] = b.is_alice(fresh[p]);

    FiniteGame target = build_game_from_delta(d, flags);

    GameMorphism left_inj{a, target, {}};
    left_inj.run_map.resize(na);
    std::iota(left_inj.run_map.begin(), left_inj.run_map.end(), 0);

    GameMorphism right_inj{b, target, std::vector<std::size_t>(b.size(), 0)};
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (in_image[i]) {
            right_inj.run_map[i] = s.left.run_map[apex_of[i]];
        } else {
            const auto it = std::find(fresh.begin(), fresh.end(), i);
            right_inj.run_map[i] = na + static_cast<std::size_t>(it - fresh.begin());
        }
    }
    return CoconePair{std::move(target), std::move(left_inj), std::move(right_inj)};
}

CoconePair jep_witness(const FiniteGame& g1, const FiniteGame& g2) {
    auto [target, inj] = coproduct({g1, g2});
    return CoconePair{std::move(target), std::move(inj[0]), std::move(inj[1])};
}

CommaWitness comma_jep_witness(const GameMorphism& f, const GameMorphism& g) {
    if (f.target != g.target)
        throw GameError("TargetMismatch", "both embeddings must land in the same game");
    if (!classify(f).is_embedding || !classify(g).is_embedding)
        throw GameError("NotEmbedding", "comma JEP witness needs embeddings");

    const FiniteGame& big = f.target;
    std::set<std::size_t> hit;
    for (std::size_t v : f.run_map) hit.insert(v);
    for (std::size_t v : g.run_map) hit.insert(v);

    CommaWitness w;
    std::map<std::size_t, std::size_t> pos;  // index in big -> index in union game
    for (std::size_t v : hit) {
        pos[v] = w.union_game.runs.size();
        if (big.is_alice(v)) w.union_game.alice.insert(w.union_game.runs.size());
        w.union_game.runs.push_back(big.runs[v]);
    }

    w.left = GameMorphism{f.source, w.union_game, {}};
    for (std::size_t v : f.run_map) w.left.run_map.push_back(pos[v]);
    w.right = GameMorphism{g.source, w.union_game, {}};
    for (std::size_t v : g.run_map) w.right.run_map.push_back(pos[v]);
    w.inclusion = GameMorphism{w.union_game, big, {}};
    for (std::size_t v : hit) w.inclusion.run_map.push_back(v);
    return w;
}

FiniteGame free_game(const std::vector<RunSpec>& runs) {
    FiniteGame g;
    for (const RunSpec& r : runs) {
        RunSpec canon = RunSpec::make(r.stem, r.tail);
        for (const RunSpec& prev : g.runs)
            if (prev == canon) throw GameError("DuplicateRun", "free_game needs distinct runs");
        g.alice.insert(g.runs.size());
        g.runs.push_back(std::move(canon));
    }
    return g;
}

}  // namespace fgames
