#include "fgames/morphisms.hpp"

#include <algorithm>
#include <numeric>

namespace fgames {

GameMorphism identity_morphism(const FiniteGame& g) {
    GameMorphism m{g, g, {}};
    m.run_map.resize(g.size());
    std::iota(m.run_map.begin(), m.run_map.end(), 0);
    return m;
}

bool is_nonexpanding(const GameMorphism& m) {
    if (m.run_map.size() != m.source.size()) return false;
    for (std::size_t v : m.run_map)
        if (v >= m.target.size()) return false;
    for (std::size_t i = 0; i < m.run_map.size(); ++i)
        for (std::size_t j = i + 1; j < m.run_map.size(); ++j) {
            if (m.run_map[i] == m.run_map[j]) continue;  // collapsed pair, nothing to preserve
            const std::size_t ds = delta(m.source.runs[i], m.source.runs[j]);
            const std::size_t dt = delta(m.target.runs[m.run_map[i]], m.target.runs[m.run_map[j]]);
            if (dt < ds) return false;
        }
    return true;
}

MorphismKind classify(const GameMorphism& m) {
    if (!is_nonexpanding(m))
        throw GameError("NotChronological", "run map is not total or expands some delta");
    MorphismKind k;
    k.is_a = true;
    k.is_b = true;
    for (std::size_t i = 0; i < m.run_map.size(); ++i) {
        const bool src_alice = m.source.is_alice(i);
        const bool tgt_alice = m.target.is_alice(m.run_map[i]);
        if (src_alice && !tgt_alice) k.is_a = false;
        if (!src_alice && tgt_alice) k.is_b = false;
    }
    k.is_injective = true;
    for (std::size_t i = 0; i < m.run_map.size() && k.is_injective; ++i)
        for (std::size_t j = i + 1; j < m.run_map.size(); ++j) {
            if (m.run_map[i] == m.run_map[j]) {
                k.is_injective = false;
                break;
            }
            const std::size_t ds = delta(m.source.runs[i], m.source.runs[j]);
            const std::size_t dt = delta(m.target.runs[m.run_map[i]], m.target.runs[m.run_map[j]]);
            if (dt != ds) {
                k.is_injective = false;
                break;
            }
        }
    k.is_embedding = k.is_injective && k.is_a && k.is_b;
    return k;
}

Moment moment_image(const GameMorphism& m, const Moment& t) {
    if (!is_nonexpanding(m))
        throw GameError("NotChronological", "run map is not total or expands some delta");
    std::optional<Moment> image;
    for (std::size_t i = 0; i < m.source.runs.size(); ++i) {
        if (!m.source.runs[i].passes_through(t)) continue;
        Moment candidate = m.target.runs[m.run_map[i]].prefix(t.size());
        if (!image) {
            image = std::move(candidate);
        } else if (*image != candidate) {
            throw GameError("NotChronological", "moment image is not well defined");
        }
    }
    if (!image) throw GameError("MomentNotInTree", "moment lies outside the source tree");
    return *image;
}

namespace {

void search_embeddings(const FiniteGame& g1, const FiniteGame& g2,
                       const std::vector<std::vector<std::size_t>>& d1,
                       const std::vector<std::vector<std::size_t>>& d2,
                       std::vector<std::size_t>& partial, std::vector<bool>& used,
                       std::vector<GameMorphism>& out) {
    const std::size_t i = partial.size();
    if (i == g1.size()) {
        out.push_back(GameMorphism{g1, g2, partial});
        return;
    }
    for (std::size_t v = 0; v < g2.size(); ++v) {
        if (used[v]) continue;
        if (g1.is_alice(i) != g2.is_alice(v)) continue;
        bool ok = true;
        for (std::size_t j = 0; j < i; ++j) {
            if (d2[partial[j]][v] != d1[j][i]) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        partial.push_back(v);
        used[v] = true;
        search_embeddings(g1, g2, d1, d2, partial, used, out);
        used[v] = false;
        partial.pop_back();
    }
}

}  // namespace

std::vector<GameMorphism> enumerate_embeddings(const FiniteGame& g1, const FiniteGame& g2) {
    std::vector<GameMorphism> out;
    if (g1.size() > g2.size()) return out;
    const auto d1 = delta_matrix(g1);
    const auto d2 = delta_matrix(g2);
    std::vector<std::size_t> partial;
    std::vector<bool> used(g2.size(), false);
    search_embeddings(g1, g2, d1, d2, partial, used, out);
    return out;
}

std::optional<GameMorphism> are_isomorphic(const FiniteGame& g1, const FiniteGame& g2) {
    if (g1.size() != g2.size()) return std::nullopt;
    auto embs = enumerate_embeddings(g1, g2);
    if (embs.empty()) return std::nullopt;
    return embs.front();  // injective between equal run counts, hence bijective
}

namespace {

using Key = std::vector<std::size_t>;

Key permutation_key(const std::vector<std::vector<std::size_t>>& d,
                    const std::vector<bool>& flags, const std::vector<std::size_t>& perm) {
    Key key;
    const std::size_t n = perm.size();
    key.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) key.push_back(d[perm[i]][perm[j]]);
    for (std::size_t i = 0; i < n; ++i) key.push_back(flags[perm[i]] ? 0 : 1);
    return key;
}

}  // namespace

FiniteGame canonical_form(const FiniteGame& g) {
    const std::size_t n = g.size();
    if (n == 0) return FiniteGame{};
    const auto d = delta_matrix(g);
    std::vector<bool> flags(n);
    for (std::size_t i = 0; i < n; ++i) flags[i] = g.is_alice(i);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> best = perm;
    Key best_key = permutation_key(d, flags, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        Key key = permutation_key(d, flags, perm);
        if (key < best_key) {
            best_key = std::move(key);
            best = perm;
        }
    }

    std::vector<std::vector<std::size_t>> cd(n, std::vector<std::size_t>(n, kNoDelta));
    std::vector<bool> cflags(n);
    for (std::size_t i = 0; i < n; ++i) {
        cflags[i] = flags[best[i]];
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) cd[i][j] = d[best[i]][best[j]];
    }
    return build_game_from_delta(cd, cflags);
}

GameMorphism compose(const GameMorphism& m1, const GameMorphism& m2) {
    if (m1.target != m2.source)
        throw GameError("SourceTargetMismatch", "target of first morphism is not source of second");
    GameMorphism out{m1.source, m2.target, {}};
    out.run_map.reserve(m1.run_map.size());
    for (std::size_t v : m1.run_map) out.run_map.push_back(m2.run_map[v]);
    return out;
}

namespace {

Key canonical_sort_key(const FiniteGame& g) {
    const auto d = delta_matrix(g);
    std::vector<bool> flags(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) flags[i] = g.is_alice(i);
    std::vector<std::size_t> id(g.size());
    std::iota(id.begin(), id.end(), 0);
    return permutation_key(d, flags, id);
}

}  // namespace

std::vector<FiniteGame> enumerate_canonical(std::size_t max_runs, std::size_t max_delta) {
    std::vector<FiniteGame> out;
    for (std::size_t n = 1; n <= max_runs; ++n) {
        std::set<FiniteGame> batch;
        // Enumerate upper-triangle delta assignments, keep ultrametric ones,
        // attach every payoff pattern, canonicalize and deduplicate.
        std::vector<std::size_t> entries(n * (n - 1) / 2, 0);
        const std::size_t total = entries.size();
        while (true) {
            std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, kNoDelta));
            std::size_t idx = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = entries[idx++];
            if (is_ultrametric_delta(d)) {
                for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
                    std::vector<bool> flags(n);
                    for (std::size_t i = 0; i < n; ++i) flags[i] = (mask >> i) & 1;
                    batch.insert(canonical_form(build_game_from_delta(d, flags)));
                }
            }
            std::size_t k = 0;
            for (; k < total; ++k) {
                if (entries[k] < max_delta) {
                    ++entries[k];
                    std::fill(entries.begin(), entries.begin() + k, 0);
                    break;
                }
            }
            if (k == total) break;
        }
        std::vector<FiniteGame> block(batch.begin(), batch.end());
        std::sort(block.begin(), block.end(), [](const FiniteGame& a, const FiniteGame& b) {
            return canonical_sort_key(a) < canonical_sort_key(b);
        });
        for (FiniteGame& g : block) out.push_back(std::move(g));
    }
    return out;
}

}  // namespace fgames
