#include "fgames/fraisse.hpp"

#include <algorithm>
#include <numeric>

namespace fgames {

ValidationReport validate_gfl_embedding(const GflEmbedding& f) {
    ValidationReport report;
    if (f.image.size() != f.source.size()) {
        report.issues.push_back({"InvalidEmbedding", "image does not cover the source runs"});
        return report;
    }
    for (std::size_t i = 0; i < f.image.size(); ++i) {
        if (!f.image[i].is_canonical())
            report.issues.push_back({"InvalidEmbedding",
                                     "image run " + std::to_string(i) + " is not canonical"});
        if (f.source.is_alice(i) != f.image[i].eventually_zero())
            report.issues.push_back({"InvalidEmbedding",
                                     "payoff criterion fails at run " + std::to_string(i)});
    }
    for (std::size_t i = 0; i < f.image.size(); ++i)
        for (std::size_t j = i + 1; j < f.image.size(); ++j) {
            if (f.image[i] == f.image[j]) {
                report.issues.push_back({"InvalidEmbedding", "image runs coincide"});
                continue;
            }
            if (delta(f.image[i], f.image[j]) != delta(f.source.runs[i], f.source.runs[j]))
                report.issues.push_back({"InvalidEmbedding",
                                         "image does not preserve delta at (" + std::to_string(i) +
                                             "," + std::to_string(j) + ")"});
        }
    return report;
}

FiniteGame limit_subgame(std::vector<RunSpec> runs) {
    std::set<RunSpec> dedup;
    for (RunSpec& r : runs) dedup.insert(RunSpec::make(std::move(r.stem), r.tail));
    FiniteGame g;
    for (const RunSpec& r : dedup) {
        if (r.eventually_zero()) g.alice.insert(g.runs.size());
        g.runs.push_back(r);
    }
    return g;
}

std::vector<std::size_t> subgame_indices(const FiniteGame& g, const FiniteGame& g_sup) {
    std::vector<std::size_t> idx(g.size(), kNoDelta);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const RunSpec needle = RunSpec::make(g.runs[i].stem, g.runs[i].tail);
        for (std::size_t j = 0; j < g_sup.size(); ++j) {
            if (RunSpec::make(g_sup.runs[j].stem, g_sup.runs[j].tail) == needle) {
                idx[i] = j;
                break;
            }
        }
        if (idx[i] == kNoDelta)
            throw GameError("NotSubgame", "run " + std::to_string(i) + " missing from the supergame");
        if (g.is_alice(i) != g_sup.is_alice(idx[i]))
            throw GameError("NotSubgame", "payoff flags disagree at run " + std::to_string(i));
    }
    return idx;
}

namespace {

struct ExtensionCore {
    GflEmbedding embedding;
    std::vector<GapIssue> gaps;
};

ExtensionCore extend_core(const FiniteGame& g, const FiniteGame& g_sup, const GflEmbedding& f) {
    {
        ValidationReport vr = validate_gfl_embedding(f);
        if (!vr.ok()) throw GameError("InvalidEmbedding", vr.issues.front().detail);
        if (f.source != g) throw GameError("InvalidEmbedding", "embedding is not of the subgame");
    }
    ExtensionCore out;
    out.embedding.source = g_sup;
    if (g_sup.empty()) return out;

    const std::vector<std::size_t> idx = subgame_indices(g, g_sup);
    std::vector<std::size_t> old_of(g_sup.size(), kNoDelta);
    for (std::size_t i = 0; i < idx.size(); ++i) old_of[idx[i]] = i;

    std::size_t settle = branching_depth(g_sup) + 1;
    for (const RunSpec& r : g_sup.runs) settle = std::max(settle, r.stem.size() + 1);
    for (const RunSpec& r : f.image) settle = std::max(settle, r.stem.size() + 1);

    const std::size_t n = g_sup.size();
    std::vector<std::vector<Move>> img(n);
    for (std::size_t d = 0; d < settle; ++d) {
        std::map<Moment, std::vector<std::size_t>> groups;
        for (std::size_t j = 0; j < n; ++j) groups[g_sup.runs[j].prefix(d)].push_back(j);
        for (const auto& [t, members] : groups) {
            bool t_in_tree = false;
            for (std::size_t j : members)
                if (old_of[j] != kNoDelta) {
                    t_in_tree = true;
                    break;
                }
            std::map<Move, std::vector<std::size_t>> children;
            for (std::size_t j : members) children[g_sup.runs[j].at(d)].push_back(j);

            std::set<Move> used;
            std::vector<std::pair<Move, const std::vector<std::size_t>*>> fresh;
            for (const auto& [x, kids] : children) {
                std::size_t old_kid = kNoDelta;
                for (std::size_t j : kids)
                    if (old_of[j] != kNoDelta) {
                        old_kid = j;
                        break;
                    }
                if (old_kid != kNoDelta) {
                    const Move v = f.image[old_of[old_kid]].at(d);
                    used.insert(v);
                    for (std::size_t j : kids) img[j].push_back(v);
                } else {
                    fresh.emplace_back(x, &kids);
                }
            }
            for (const auto& [x, kids] : fresh) {
                std::size_t alice_count = 0;
                for (std::size_t j : *kids)
                    if (g_sup.is_alice(j)) ++alice_count;
                const std::size_t bob_count = kids->size() - alice_count;
                std::optional<Move> pref;
                if (!t_in_tree && alice_count == 1)
                    pref = 0;
                else if (!t_in_tree && bob_count == 1)
                    pref = 1;
                Move v;
                if (pref && !used.count(*pref)) {
                    v = *pref;
                } else {
                    v = 0;
                    while (used.count(v)) ++v;
                }
                used.insert(v);
                for (std::size_t j : *kids) img[j].push_back(v);
            }
        }
    }

    out.embedding.image.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (old_of[j] != kNoDelta) {
            out.embedding.image[j] = f.image[old_of[j]];
        } else {
            const Move tail = g_sup.is_alice(j) ? 0 : 1;
            out.embedding.image[j] = RunSpec::make(std::move(img[j]), tail);
        }
    }
    return out;
}

}  // namespace

GflEmbedding extend_embedding(const FiniteGame& g, const FiniteGame& g_sup,
                              const GflEmbedding& f) {
    return extend_core(g, g_sup, f).embedding;
}

std::vector<GapIssue> extension_gap_issues(const FiniteGame& g, const FiniteGame& g_sup,
                                           const GflEmbedding& extended) {
    std::vector<GapIssue> issues;
    if (g_sup.empty()) return issues;
    const std::vector<std::size_t> idx = subgame_indices(g, g_sup);
    std::vector<std::size_t> old_of(g_sup.size(), kNoDelta);
    for (std::size_t i = 0; i < idx.size(); ++i) old_of[idx[i]] = i;

    std::size_t settle = branching_depth(g_sup) + 1;
    for (const RunSpec& r : g_sup.runs) settle = std::max(settle, r.stem.size() + 1);
    for (const RunSpec& r : extended.image) settle = std::max(settle, r.stem.size() + 1);

    const std::size_t n = g_sup.size();
    for (std::size_t d = 0; d < settle; ++d) {
        std::map<Moment, std::vector<std::size_t>> groups;
        for (std::size_t j = 0; j < n; ++j) groups[g_sup.runs[j].prefix(d)].push_back(j);
        for (const auto& [t, members] : groups) {
            bool t_in_tree = false;
            for (std::size_t j : members)
                if (old_of[j] != kNoDelta) t_in_tree = true;
            std::map<Move, std::vector<std::size_t>> children;
            for (std::size_t j : members) children[g_sup.runs[j].at(d)].push_back(j);
            std::set<Move> values;
            for (const auto& [x, kids] : children) values.insert(extended.image[kids.front()].at(d));
            for (const auto& [x, kids] : children) {
                bool is_old = false;
                for (std::size_t j : kids)
                    if (old_of[j] != kNoDelta) is_old = true;
                if (is_old) continue;
                const Move v = extended.image[kids.front()].at(d);
                std::size_t alice_count = 0;
                for (std::size_t j : kids)
                    if (g_sup.is_alice(j)) ++alice_count;
                const std::size_t bob_count = kids.size() - alice_count;
                const bool bob_tail_step = !t_in_tree && alice_count != 1 && bob_count == 1 && v == 1;
                if (bob_tail_step) continue;
                for (Move k = 0; k < v; ++k)
                    if (!values.count(k))
                        issues.push_back(GapIssue{extended.image[members.front()].prefix(d), v, k});
            }
        }
    }
    return issues;
}

namespace {

/// Does g embed into h at all? Early-exit backtracking.
bool embeds_into(const FiniteGame& g, const FiniteGame& h) {
    if (g.size() > h.size()) return false;
    const auto dg = delta_matrix(g);
    const auto dh = delta_matrix(h);
    std::vector<std::size_t> assign;
    std::vector<bool> used(h.size(), false);
    const std::function<bool()> rec = [&]() -> bool {
        const std::size_t i = assign.size();
        if (i == g.size()) return true;
        for (std::size_t v = 0; v < h.size(); ++v) {
            if (used[v] || g.is_alice(i) != h.is_alice(v)) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i; ++j)
                if (dh[assign[j]][v] != dg[j][i]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            assign.push_back(v);
            used[v] = true;
            if (rec()) return true;
            used[v] = false;
            assign.pop_back();
        }
        return false;
    };
    return rec();
}

}  // namespace

GameSequence fraisse_sequence(std::size_t steps, std::size_t enum_bound) {
    if (steps == 0) throw GameError("EmptyGame", "fraisse_sequence needs at least one step");
    const std::vector<FiniteGame> pool = enumerate_canonical(enum_bound, enum_bound);
    struct Item {
        const FiniteGame* src;
        const FiniteGame* tgt;
        GameMorphism emb;
    };
    std::vector<Item> all;
    for (const FiniteGame& src : pool)
        for (const FiniteGame& tgt : pool)
            for (GameMorphism& e : enumerate_embeddings(src, tgt))
                all.push_back(Item{&src, &tgt, std::move(e)});

    GameSequence seq;
    seq.games.push_back(*all.front().src);
    for (std::size_t step = 0; step + 1 < steps; ++step) {
        const Item& item = all[step % all.size()];
        const std::size_t n = seq.stages() - 1;

        std::vector<std::size_t> matching;
        for (std::size_t k = 0; k <= n; ++k) {
            if (seq.games[k].size() != item.src->size()) continue;
            if (are_isomorphic(seq.games[k], *item.src)) matching.push_back(k);
        }
        if (!matching.empty()) {
            // Absorb the embedding along an isomorphic earlier stage (case i).
            const std::size_t k = matching[step % matching.size()];
            const GameMorphism iso = *are_isomorphic(seq.games[k], *item.src);
            GameMorphism into_target = compose(iso, item.emb);
            GameMorphism to_stage = identity_morphism(seq.games[k]);
            for (std::size_t s = k; s < n; ++s) to_stage = compose(to_stage, seq.links[s]);
            CoconePair pc = pushout(Span{seq.games[k], to_stage, into_target});
            seq.links.push_back(pc.left_inj);
            seq.games.push_back(pc.target);
        } else {
            // Fresh domain: coproduct first, then push out the embedding (case ii).
            auto [cop, inj] = coproduct({seq.games[n], *item.src});
            CoconePair pc = pushout(Span{*item.src, inj[1], item.emb});
            seq.links.push_back(compose(inj[0], pc.left_inj));
            seq.games.push_back(pc.target);
        }
    }
    return seq;
}

FraisseReport verify_fraisse(const GameSequence& seq, std::size_t u_bound, std::size_t a_bound) {
    FraisseReport report;
    for (const FiniteGame& g : enumerate_canonical(u_bound, u_bound)) {
        bool found = false;
        for (std::size_t n = seq.stages(); n-- > 0 && !found;) found = embeds_into(g, seq.games[n]);
        if (!found) {
            report.u_ok = false;
            report.u_missing.push_back(g);
        }
    }

    const std::vector<FiniteGame> targets = enumerate_canonical(a_bound, a_bound);
    for (std::size_t n = 0; n < seq.stages(); ++n) {
        if (seq.games[n].size() > a_bound) continue;
        for (const FiniteGame& x : targets) {
            for (const GameMorphism& f : enumerate_embeddings(seq.games[n], x)) {
                ++report.a_checked;
                bool witnessed = false;
                for (std::size_t m = n; m < seq.stages() && !witnessed; ++m) {
                    // g on the image of f is forced by g.f = F_n^m; extend to the
                    // remaining runs of x by a small backtracking search.
                    const FiniteGame& stage = seq.games[m];
                    std::vector<std::size_t> assign(x.size(), kNoDelta);
                    bool consistent = true;
                    for (std::size_t i = 0; i < seq.games[n].size() && consistent; ++i) {
                        const std::size_t forced = seq.push_run(n, i, m);
                        std::size_t& slot = assign[f.run_map[i]];
                        if (slot != kNoDelta && slot != forced) consistent = false;
                        slot = forced;
                    }
                    if (!consistent) continue;
                    const auto dx = delta_matrix(x);
                    const auto dm = delta_matrix(stage);
                    std::vector<std::size_t> free_runs;
                    for (std::size_t i = 0; i < x.size(); ++i)
                        if (assign[i] == kNoDelta) free_runs.push_back(i);
                    const std::function<bool(std::size_t)> rec = [&](std::size_t pos) -> bool {
                        if (pos == free_runs.size()) return true;
                        const std::size_t i = free_runs[pos];
                        for (std::size_t v = 0; v < stage.size(); ++v) {
                            if (x.is_alice(i) != stage.is_alice(v)) continue;
                            bool ok = true;
                            for (std::size_t j = 0; j < x.size() && ok; ++j) {
                                if (j == i || assign[j] == kNoDelta) continue;
                                if (assign[j] == v || dm[assign[j]][v] != dx[j][i]) ok = false;
                            }
                            if (!ok) continue;
                            assign[i] = v;
                            if (rec(pos + 1)) return true;
                            assign[i] = kNoDelta;
                        }
                        return false;
                    };
                    // Forced part must itself be a valid embedding fragment.
                    bool forced_ok = true;
                    for (std::size_t i = 0; i < x.size() && forced_ok; ++i)
                        for (std::size_t j = i + 1; j < x.size() && forced_ok; ++j) {
                            if (assign[i] == kNoDelta || assign[j] == kNoDelta) continue;
                            if (assign[i] == assign[j] || dm[assign[i]][assign[j]] != dx[i][j])
                                forced_ok = false;
                        }
                    for (std::size_t i = 0; i < x.size() && forced_ok; ++i)
                        if (assign[i] != kNoDelta && x.is_alice(i) != stage.is_alice(assign[i]))
                            forced_ok = false;
                    if (forced_ok && rec(0)) witnessed = true;
                }
                if (!witnessed) {
                    report.a_ok = false;
                    report.a_failures.push_back({n, x, f.run_map});
                }
            }
        }
    }
    return report;
}

std::vector<GflEmbedding> canonical_cocone_to_gfl(const GameSequence& seq) {
    std::vector<GflEmbedding> legs;
    if (seq.games.empty()) return legs;
    legs.push_back(extend_embedding(FiniteGame{}, seq.games[0], GflEmbedding{}));
    for (std::size_t n = 0; n + 1 < seq.stages(); ++n) {
        const GameMorphism& link = seq.links[n];
        const FiniteGame& next = seq.games[n + 1];
        // Transport the current leg onto the image subgame inside the next stage.
        std::set<std::size_t> hit(link.run_map.begin(), link.run_map.end());
        FiniteGame mid;
        std::map<std::size_t, std::size_t> pos;
        for (std::size_t v : hit) {
            pos[v] = mid.runs.size();
            if (next.is_alice(v)) mid.alice.insert(mid.runs.size());
            mid.runs.push_back(next.runs[v]);
        }
        GflEmbedding carried{mid, std::vector<RunSpec>(mid.size())};
        for (std::size_t i = 0; i < link.run_map.size(); ++i)
            carried.image[pos.at(link.run_map[i])] = legs[n].image[i];
        legs.push_back(extend_embedding(mid, next, carried));
    }
    return legs;
}

bool PartialAutomorphism::is_identity() const {
    for (const auto& [k, v] : forward)
        if (k != v) return false;
    return true;
}

std::optional<RunSpec> PartialAutomorphism::run_image(const RunSpec& r) const {
    for (const auto& [a, b] : tracked_runs)
        if (a == r) return b;
    if (r.stem.size() >= depth) return std::nullopt;
    const auto it = forward.find(r.prefix(depth));
    if (it == forward.end()) return std::nullopt;
    const Moment& m = it->second;
    Move tail = 0;
    if (!r.eventually_zero()) tail = (!m.empty() && m.back() != 0) ? m.back() : 1;
    return RunSpec::make(Moment(m), tail);
}

ValidationReport validate_partial_automorphism(const PartialAutomorphism& u) {
    ValidationReport report;
    for (const auto& [k, v] : u.forward) {
        if (k.size() != v.size())
            report.issues.push_back({"InvalidEmbedding", "forward map changes a length"});
        const auto back = u.backward.find(v);
        if (back == u.backward.end() || back->second != k)
            report.issues.push_back({"InvalidEmbedding", "backward does not invert forward"});
        if (!k.empty()) {
            Moment pk(k.begin(), k.end() - 1);
            const auto parent = u.forward.find(pk);
            if (parent == u.forward.end() ||
                Moment(v.begin(), v.end() - 1) != parent->second)
                report.issues.push_back({"InvalidEmbedding", "forward map breaks truncation"});
        }
    }
    for (const auto& [k, v] : u.backward) {
        const auto fwd = u.forward.find(v);
        if (fwd == u.forward.end() || fwd->second != k)
            report.issues.push_back({"InvalidEmbedding", "forward does not invert backward"});
    }
    for (const auto& [a, b] : u.tracked_runs)
        if (a.eventually_zero() != b.eventually_zero())
            report.issues.push_back({"InvalidEmbedding", "tracked pair changes payoff status"});
    return report;
}

PartialAutomorphism back_and_forth(const FiniteGame& a, const GflEmbedding& f,
                                   const GflEmbedding& g, std::size_t depth, Move width) {
    if (f.source != a || g.source != a)
        throw GameError("InvalidEmbedding", "both embeddings must embed the given game");
    {
        ValidationReport vf = validate_gfl_embedding(f);
        ValidationReport vg = validate_gfl_embedding(g);
        if (!vf.ok() || !vg.ok())
            throw GameError("InvalidEmbedding", "back_and_forth needs valid embeddings");
    }
    for (const RunSpec& r : f.image)
        if (!r.fits_alphabet(width))
            throw GameError("WindowTooSmall", "embedding image leaves the window alphabet");
    for (const RunSpec& r : g.image)
        if (!r.fits_alphabet(width))
            throw GameError("WindowTooSmall", "embedding image leaves the window alphabet");

    const std::vector<RunSpec> cover = enumerate_zero_runs(zero_run_cover_count(depth, width));

    // Forward side: the image of f together with the covering exhaustion runs.
    const FiniteGame ga = limit_subgame(f.image);
    GflEmbedding h0{ga, std::vector<RunSpec>(ga.size())};
    for (std::size_t i = 0; i < a.size(); ++i) {
        const RunSpec key = RunSpec::make(f.image[i].stem, f.image[i].tail);
        for (std::size_t p = 0; p < ga.size(); ++p)
            if (ga.runs[p] == key) h0.image[p] = RunSpec::make(g.image[i].stem, g.image[i].tail);
    }
    std::vector<RunSpec> d0_runs = f.image;
    d0_runs.insert(d0_runs.end(), cover.begin(), cover.end());
    const FiniteGame d0 = limit_subgame(std::move(d0_runs));
    const GflEmbedding f0 = extend_embedding(ga, d0, h0);

    // Backward side: extend the inverse over the image plus the covering runs.
    const FiniteGame i0 = limit_subgame(f0.image);
    GflEmbedding f0_inv{i0, std::vector<RunSpec>(i0.size())};
    for (std::size_t j = 0; j < d0.size(); ++j) {
        const RunSpec key = f0.image[j];
        for (std::size_t p = 0; p < i0.size(); ++p)
            if (i0.runs[p] == key) f0_inv.image[p] = d0.runs[j];
    }
    std::vector<RunSpec> d1_runs = f0.image;
    d1_runs.insert(d1_runs.end(), cover.begin(), cover.end());
    const FiniteGame d1 = limit_subgame(std::move(d1_runs));
    const GflEmbedding g0 = extend_embedding(i0, d1, f0_inv);

    PartialAutomorphism u;
    u.depth = depth;
    u.width = width;
    const GflView window{depth, width};
    for (const Moment& m : window.moments()) {
        // g0's moment map: prefix of the image of any run through m.
        Moment img;
        bool found = false;
        for (std::size_t j = 0; j < d1.size() && !found; ++j) {
            if (d1.runs[j].passes_through(m)) {
                img = g0.image[j].prefix(m.size());
                found = true;
            }
        }
        if (!found) throw GameError("WindowTooSmall", "window moment missing from the zig-zag");
        if (!window.contains(img))
            throw GameError("WindowTooSmall", "zig-zag image leaves the window");
        u.backward[m] = img;
    }
    for (const auto& [k, v] : u.backward) {
        if (u.forward.count(v))
            throw GameError("WindowTooSmall", "zig-zag image is not injective on the window");
        u.forward[v] = k;
    }
    if (u.forward.size() != u.backward.size() ||
        u.forward.size() != window.moments().size())
        throw GameError("WindowTooSmall", "zig-zag does not cover the window");

    for (std::size_t j = 0; j < d0.size(); ++j) u.tracked_runs.emplace_back(d0.runs[j], f0.image[j]);
    return u;
}

std::vector<GflEmbedding> enumerate_window_embeddings(const FiniteGame& g, std::size_t depth,
                                                      Move width, std::size_t cap) {
    std::vector<GflEmbedding> out;
    const GflView window{depth, width};
    const std::vector<RunSpec> pool = window.visible_runs();
    const auto dg = delta_matrix(g);
    std::vector<RunSpec> assign;
    const std::function<void()> rec = [&]() {
        if (cap != 0 && out.size() >= cap) return;
        const std::size_t i = assign.size();
        if (i == g.size()) {
            out.push_back(GflEmbedding{g, assign});
            return;
        }
        for (const RunSpec& r : pool) {
            if (cap != 0 && out.size() >= cap) return;
            if (g.is_alice(i) != r.eventually_zero()) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                if (assign[j] == r)
                    ok = false;
                else if (delta(assign[j], r) != dg[j][i])
                    ok = false;
            }
            if (!ok) continue;
            assign.push_back(r);
            rec();
            assign.pop_back();
        }
    };
    rec();
    return out;
}

MatchingReport verify_matching(const GameSequence& seq, const std::vector<GflEmbedding>& legs,
                               std::size_t f1_bound, std::size_t depth, Move width,
                               MatchingSetting setting) {
    MatchingReport report;
    std::vector<std::vector<RunSpec>> leg_runs(legs.size());
    for (std::size_t n = 0; n < legs.size(); ++n) leg_runs[n] = legs[n].image;

    // (F2): legs are monic, i.e. valid (injective, delta-preserving) embeddings.
    for (const GflEmbedding& leg : legs)
        if (!validate_gfl_embedding(leg).ok()) report.f2_ok = false;

    // (F1): every window embedding of a canonical game in the class factors.
    for (const FiniteGame& g : enumerate_canonical(f1_bound, f1_bound)) {
        if (setting == MatchingSetting::FreeAlice && g.alice.size() != g.size()) continue;
        for (const GflEmbedding& emb : enumerate_window_embeddings(g, depth, width, 0)) {
            ++report.f1_checked;
            if (!factor_through(seq, leg_runs, g, emb.image, seq.stages())) {
                report.f1_ok = false;
                if (report.f1_witnesses.size() < 8) report.f1_witnesses.push_back(emb);
            }
        }
    }

    // (BF)/(H): fixture back-and-forth runs on a one-run Alice game.
    const FiniteGame one_alice{{RunSpec::make({}, 0)}, {0}};
    const std::vector<GflEmbedding> embs =
        enumerate_window_embeddings(one_alice, depth, width, 4);
    for (std::size_t i = 0; i < embs.size(); ++i)
        for (std::size_t j = 0; j < embs.size(); ++j) {
            if (i == j) continue;
            PartialAutomorphism u;
            try {
                u = back_and_forth(one_alice, embs[i], embs[j], depth, width);
            } catch (const GameError&) {
                report.bf_ok = false;
                continue;
            }
            ++report.automorphisms_checked;
            if (u.is_identity()) continue;
            bool moves_leg = false;
            for (std::size_t n = 0; n < legs.size() && !moves_leg; ++n)
                for (const RunSpec& r : legs[n].image) {
                    const auto it = u.forward.find(r.prefix(depth));
                    if (it != u.forward.end() && it->second != r.prefix(depth)) {
                        moves_leg = true;
                        break;
                    }
                }
            if (!moves_leg) report.h_ok = false;
        }
    return report;
}

SqueezeReport verify_tight_squeeze(const GameSequence& s_prime, const GameSequence& s,
                                   const std::vector<GameMorphism>& theta,
                                   const std::vector<GflEmbedding>& legs, std::size_t depth,
                                   Move width, std::size_t u_bound, std::size_t a_bound) {
    SqueezeReport report;
    const std::size_t stages = std::min(s_prime.stages(), s.stages());
    if (theta.size() < stages)
        throw GameError("NotNatural", "transformation does not cover the stages");
    for (std::size_t n = 0; n < stages; ++n) {
        if (theta[n].source != s_prime.games[n] || theta[n].target != s.games[n])
            throw GameError("NotNatural", "component " + std::to_string(n) + " has wrong ends");
        if (n + 1 < stages) {
            const GameMorphism lhs = compose(s_prime.links[n], theta[n + 1]);
            const GameMorphism rhs = compose(theta[n], s.links[n]);
            if (lhs.run_map != rhs.run_map)
                throw GameError("NotNatural", "square " + std::to_string(n) + " does not commute");
        }
        if (!classify(theta[n]).is_embedding) report.theta_embeddings = false;
    }

    const GflView window{depth, width};
    const std::vector<Moment> wm = window.moments();
    const std::vector<RunSpec> wp = window.payoff_runs();

    // Precondition: legs . theta is a colimit cocone (injective + jointly E*).
    std::vector<std::vector<RunSpec>> composed(stages);
    bool composed_injective = true;
    for (std::size_t n = 0; n < stages; ++n) {
        composed[n].resize(s_prime.games[n].size());
        for (std::size_t i = 0; i < s_prime.games[n].size(); ++i)
            composed[n][i] = legs[n].image[theta[n].run_map[i]];
        std::set<RunSpec> distinct(composed[n].begin(), composed[n].end());
        if (distinct.size() != composed[n].size()) composed_injective = false;
    }
    GameSequence s_prime_window = s_prime;
    s_prime_window.games.resize(stages);
    if (!s_prime_window.links.empty()) s_prime_window.links.resize(stages - 1);
    report.precondition_colimit =
        composed_injective &&
        jointly_e_star(s_prime_window, composed, wm, wp, depth).ok();
    if (!report.theta_embeddings || !report.precondition_colimit) {
        report.vacuous = true;
        return report;
    }

    // (i) the outer cocone is itself a colimit cocone on the window.
    std::vector<std::vector<RunSpec>> leg_runs(legs.size());
    bool legs_injective = true;
    for (std::size_t n = 0; n < legs.size(); ++n) {
        leg_runs[n] = legs[n].image;
        std::set<RunSpec> distinct(leg_runs[n].begin(), leg_runs[n].end());
        if (distinct.size() != leg_runs[n].size()) legs_injective = false;
    }
    report.i_ok = legs_injective && jointly_e_star(s, leg_runs, wm, wp, depth).ok();

    // (ii) the Fraisse conditions transfer.
    if (!verify_fraisse(s_prime, u_bound, a_bound).ok()) {
        report.ii_vacuous = true;
        report.ii_ok = true;
    } else {
        report.ii_ok = verify_fraisse(s, u_bound, a_bound).ok();
    }
    return report;
}

}  // namespace fgames
