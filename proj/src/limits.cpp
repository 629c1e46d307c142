#include "fgames/limits.hpp"

#include <algorithm>
#include <numeric>

namespace fgames {

void GameSequence::materialize_to(std::size_t stage_count) {
    if (!generator) {
        if (stages() < stage_count)
            throw GameError("UnstableWindow", "sequence has no generator to materialize more stages");
        return;
    }
    while (stages() < stage_count) {
        auto [next, link] = generator(stages(), games.back());
        links.push_back(std::move(link));
        games.push_back(std::move(next));
    }
}

std::size_t GameSequence::push_run(std::size_t n, std::size_t run, std::size_t m) const {
    std::size_t r = run;
    for (std::size_t s = n; s < m; ++s) r = links[s].run_map[r];
    return r;
}

Moment GameSequence::push_moment(std::size_t n, const Moment& t, std::size_t m) const {
    // Find a run through t and push it; prefixes of pushed runs realize the
    // chronological moment map.
    for (std::size_t i = 0; i < games[n].runs.size(); ++i) {
        if (games[n].runs[i].passes_through(t))
            return games[m].runs[push_run(n, i, m)].prefix(t.size());
    }
    throw GameError("MomentNotInTree", "moment lies outside the stage tree");
}

RunSpec GameSequence::pushed_runspec(std::size_t n, std::size_t run, std::size_t m) const {
    return games[m].runs[push_run(n, run, m)];
}

ValidationReport GameSequence::validate() const {
    ValidationReport report;
    for (std::size_t n = 0; n < games.size(); ++n) {
        ValidationReport r = validate_game(games[n]);
        for (auto& issue : r.issues) {
            issue.detail = "stage " + std::to_string(n) + ": " + issue.detail;
            report.issues.push_back(issue);
        }
    }
    if (links.size() + 1 != games.size() && !(games.empty() && links.empty()))
        report.issues.push_back({"SourceTargetMismatch", "links do not chain the stages"});
    for (std::size_t n = 0; n < links.size(); ++n) {
        if (links[n].source != games[n] || links[n].target != games[n + 1]) {
            report.issues.push_back({"SourceTargetMismatch",
                                     "link " + std::to_string(n) + " does not join its stages"});
            continue;
        }
        if (!is_nonexpanding(links[n]))
            report.issues.push_back({"NotChronological",
                                     "link " + std::to_string(n) + " expands some delta"});
    }
    return report;
}

bool GameSequence::is_embedding_sequence() const {
    for (const GameMorphism& link : links)
        if (!classify(link).is_embedding) return false;
    return true;
}

bool GameSequence::links_are_a_morphisms() const {
    for (const GameMorphism& link : links)
        if (!classify(link).is_a) return false;
    return true;
}

ColimitView colimit(const GameSequence& seq, std::size_t depth) {
    if (seq.games.empty()) throw GameError("EmptyGame", "colimit of an empty sequence");
    if (!seq.links_are_a_morphisms())
        throw GameError("NotChronological", "colimit needs a sequence of A-morphisms");
    const std::size_t last = seq.stages() - 1;

    // Stability: the final link must not merge distinct window moments of its
    // source stage; otherwise identifications were still occurring.
    if (last >= 1) {
        const TruncatedTree src = tree_of(seq.games[last - 1], depth);
        std::set<Moment> images;
        for (const Moment& m : src.moments) {
            if (!images.insert(seq.push_moment(last - 1, m, last)).second)
                throw GameError("UnstableWindow", "final link still merges window moments");
        }
    }

    ColimitView view;
    view.depth = depth;
    view.last_stage = last;
    view.classes = tree_of(seq.games[last], depth);
    view.classes.run_markers.clear();

    // Payoff classes: classes of stage payoff runs, labelled by their push at
    // the last stage; representative = earliest (stage, run).
    std::map<RunSpec, std::size_t> class_index;
    for (std::size_t n = 0; n < seq.stages(); ++n) {
        for (std::size_t i : seq.games[n].alice) {
            RunSpec label = seq.pushed_runspec(n, i, last);
            if (class_index.count(label)) continue;
            class_index[label] = view.payoff_runs.size();
            view.payoff_runs.push_back(StageRun{n, i});
            view.payoff_labels.push_back(label);
        }
    }
    for (std::size_t c = 0; c < view.payoff_labels.size(); ++c)
        view.classes.run_markers[view.payoff_labels[c].prefix(depth)].insert(c);

    view.legs.resize(seq.stages());
    for (std::size_t n = 0; n < seq.stages(); ++n) {
        const TruncatedTree t = tree_of(seq.games[n], depth);
        for (const Moment& m : t.moments) view.legs[n][m] = seq.push_moment(n, m, last);
    }
    return view;
}

ColimitGame colimit_game(const GameSequence& seq, std::size_t depth) {
    ColimitView view = colimit(seq, depth);
    const std::size_t last = view.last_stage;

    ColimitGame out;
    std::map<std::size_t, std::size_t> class_of;  // last-stage run index -> class run index
    for (std::size_t n = 0; n < seq.stages(); ++n) {
        for (std::size_t i = 0; i < seq.games[n].size(); ++i) {
            const std::size_t li = seq.push_run(n, i, last);
            if (class_of.count(li)) continue;
            class_of[li] = out.game.runs.size();
            out.game.runs.push_back(seq.games[last].runs[li]);
        }
    }
    for (std::size_t n = 0; n < seq.stages(); ++n)
        for (std::size_t i : seq.games[n].alice)
            out.game.alice.insert(class_of.at(seq.push_run(n, i, last)));
    out.stage_run_maps.resize(seq.stages());
    for (std::size_t n = 0; n < seq.stages(); ++n) {
        out.stage_run_maps[n].resize(seq.games[n].size());
        for (std::size_t i = 0; i < seq.games[n].size(); ++i)
            out.stage_run_maps[n][i] = class_of.at(seq.push_run(n, i, last));
    }
    return out;
}

bool GflView::contains(const Moment& m) const {
    if (m.size() > depth) return false;
    for (Move x : m)
        if (x >= width) return false;
    return true;
}

std::vector<Moment> GflView::moments() const {
    std::vector<Moment> out{Moment{}};
    std::size_t level_begin = 0;
    for (std::size_t n = 1; n <= depth; ++n) {
        const std::size_t level_end = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (Move x = 0; x < width; ++x) {
                Moment m = out[i];
                m.push_back(x);
                out.push_back(std::move(m));
            }
        }
        level_begin = level_end;
    }
    return out;
}

namespace {

void stems_up_to(std::size_t max_len, Move width, Move tail, std::vector<RunSpec>& out) {
    std::vector<Move> stem;
    const std::function<void()> rec = [&]() {
        if (stem.empty() || stem.back() != tail) out.push_back(RunSpec{stem, tail});
        if (stem.size() == max_len) return;
        for (Move x = 0; x < width; ++x) {
            stem.push_back(x);
            rec();
            stem.pop_back();
        }
    };
    rec();
}

}  // namespace

std::vector<RunSpec> GflView::payoff_runs() const {
    std::vector<RunSpec> out;
    if (depth == 0 || width == 0) return out;
    stems_up_to(depth - 1, width, 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RunSpec> GflView::visible_runs() const {
    std::vector<RunSpec> out;
    if (depth == 0 || width == 0) return out;
    for (Move tail = 0; tail < width; ++tail) stems_up_to(depth - 1, width, tail, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RunSpec> enumerate_zero_runs(std::size_t count) {
    std::vector<RunSpec> out;
    if (count == 0) return out;
    out.push_back(RunSpec::make({}, 0));
    for (std::size_t bound = 1; out.size() < count; ++bound) {
        // Block `bound`: stems with max(length, max entry + 1) == bound,
        // ordered by (length, lex). Entries < bound, length <= bound.
        for (std::size_t len = 1; len <= bound && out.size() < count; ++len) {
            std::vector<Move> stem(len, 0);
            while (true) {
                const bool canonical = stem.back() != 0;
                bool in_block = false;
                Move max_entry = 0;
                for (Move x : stem) max_entry = std::max(max_entry, x);
                in_block = (std::max(len, static_cast<std::size_t>(max_entry) + 1) == bound);
                if (canonical && in_block) {
                    out.push_back(RunSpec{stem, 0});
                    if (out.size() == count) break;
                }
                std::size_t k = len;
                while (k > 0 && stem[k - 1] + 1 == static_cast<Move>(bound)) {
                    stem[k - 1] = 0;
                    --k;
                }
                if (k == 0) break;
                ++stem[k - 1];
            }
        }
    }
    return out;
}

std::size_t zero_run_cover_count(std::size_t depth, Move width) {
    // Every window moment m is covered once the run with stem m (trailing zeros
    // trimmed) has appeared in the enumeration.
    GflView view{depth, width};
    std::set<RunSpec> needed;
    for (const Moment& m : view.moments()) needed.insert(RunSpec::make(Moment(m), 0));
    std::size_t count = std::max<std::size_t>(needed.size(), 1);
    while (true) {
        const std::vector<RunSpec> runs = enumerate_zero_runs(count);
        const std::set<RunSpec> have(runs.begin(), runs.end());
        bool all = true;
        for (const RunSpec& r : needed)
            if (!have.count(r)) {
                all = false;
                break;
            }
        if (all) {
            std::size_t lastIdx = 0;
            for (std::size_t i = 0; i < runs.size(); ++i)
                if (needed.count(runs[i])) lastIdx = i;
            return lastIdx + 1;
        }
        count *= 2;
    }
}

GameSequence example_chain(const std::vector<std::size_t>& run_counts) {
    GameSequence seq;
    if (run_counts.empty()) return seq;
    const std::vector<RunSpec> runs = enumerate_zero_runs(run_counts.back());
    for (std::size_t r = 0; r < run_counts.size(); ++r) {
        FiniteGame g;
        g.runs.assign(runs.begin(), runs.begin() + run_counts[r]);
        for (std::size_t i = 0; i < g.runs.size(); ++i) g.alice.insert(i);
        seq.games.push_back(std::move(g));
    }
    for (std::size_t r = 0; r + 1 < seq.games.size(); ++r) {
        GameMorphism link{seq.games[r], seq.games[r + 1], {}};
        link.run_map.resize(seq.games[r].size());
        std::iota(link.run_map.begin(), link.run_map.end(), 0);
        seq.links.push_back(std::move(link));
    }
    return seq;
}

GameSequence example_chain_full(std::size_t last_stage) {
    std::vector<std::size_t> counts;
    for (std::size_t n = 0; n <= last_stage; ++n) counts.push_back(n + 1);
    return example_chain(counts);
}

GameSequence example_chain_covering(std::size_t run_count) {
    std::vector<std::size_t> counts;
    for (std::size_t c = 1; c < run_count; c *= 2) counts.push_back(c);
    counts.push_back(run_count);
    return example_chain(counts);
}

std::vector<Moment> new_branches(const GameSequence& seq, std::size_t depth) {
    if (!seq.is_embedding_sequence())
        throw GameError("NotEmbedding", "new_branches needs an embedding sequence");
    ColimitView view = colimit(seq, depth);
    const std::size_t last = view.last_stage;

    std::set<RunSpec> pushed;
    for (std::size_t n = 0; n < seq.stages(); ++n)
        for (std::size_t i = 0; i < seq.games[n].size(); ++i)
            pushed.insert(seq.pushed_runspec(n, i, last));

    // Candidates: eventually-constant branches whose constancy is visible in
    // the window (stem shorter than depth) and whose depth-prefix lies in the
    // class tree.
    std::set<Moment> out;
    for (const Moment& m : view.classes.moments) {
        if (m.size() != depth) continue;
        if (depth == 0) continue;
        for (std::size_t settle = 0; settle < depth; ++settle) {
            const Move tail = m[settle];
            bool constant = true;
            for (std::size_t i = settle; i < depth; ++i)
                if (m[i] != tail) {
                    constant = false;
                    break;
                }
            if (!constant) continue;
            RunSpec candidate = RunSpec::make(Moment(m.begin(), m.begin() + settle), tail);
            if (!pushed.count(candidate)) out.insert(m);
            break;  // the earliest settle point determines the candidate
        }
    }
    return std::vector<Moment>(out.begin(), out.end());
}

std::pair<std::size_t, std::size_t> lift_run_with_delta(const GameSequence& seq, std::size_t k,
                                                        std::size_t x, const ColimitView& view,
                                                        std::size_t target_class) {
    if (!seq.games[k].is_alice(x))
        throw GameError("NotInPayoff", "run is not won by Alice at its stage");
    if (target_class >= view.payoff_labels.size())
        throw GameError("NotInPayoff", "no such payoff class");
    const std::size_t last = view.last_stage;
    const RunSpec x_label = seq.pushed_runspec(k, x, last);
    const RunSpec target_label = view.payoff_labels[target_class];
    if (x_label == target_label)
        throw GameError("SameClass", "target class equals the class of x");
    const std::size_t want = delta(target_label, x_label);

    const StageRun rep = view.payoff_runs[target_class];
    for (std::size_t m = std::max(k, rep.stage); m < seq.stages(); ++m) {
        const std::size_t xm = seq.push_run(k, x, m);
        for (std::size_t y : seq.games[m].alice) {
            if (seq.pushed_runspec(m, y, last) != target_label) continue;
            if (y == xm) continue;
            if (delta(seq.games[m].runs[y], seq.games[m].runs[xm]) == want) return {m, y};
        }
    }
    throw GameError("UnstableWindow", "no materialized stage realizes the lift");
}

JointlyEStarReport jointly_e_star(const GameSequence& seq,
                                  const std::vector<std::vector<RunSpec>>& leg_runs,
                                  const std::vector<Moment>& window_moments,
                                  const std::vector<RunSpec>& tracked_payoff, std::size_t depth) {
    JointlyEStarReport report;
    std::set<RunSpec> images;
    std::set<RunSpec> payoff_images;
    for (std::size_t n = 0; n < leg_runs.size() && n < seq.stages(); ++n) {
        for (std::size_t i = 0; i < leg_runs[n].size(); ++i) {
            images.insert(leg_runs[n][i]);
            if (seq.games[n].is_alice(i)) payoff_images.insert(leg_runs[n][i]);
        }
    }
    for (const Moment& m : window_moments) {
        if (m.size() > depth) continue;
        bool covered = false;
        for (const RunSpec& r : images)
            if (r.passes_through(m)) {
                covered = true;
                break;
            }
        if (!covered) {
            report.moments_ok = false;
            report.uncovered_moments.push_back(m);
        }
    }
    for (const RunSpec& r : tracked_payoff) {
        if (!payoff_images.count(r)) {
            report.payoff_ok = false;
            report.uncovered_payoff.push_back(r);
        }
    }
    return report;
}

std::optional<std::pair<std::size_t, GameMorphism>> factor_through(
    const GameSequence& seq, const std::vector<std::vector<RunSpec>>& leg_runs,
    const FiniteGame& g, const std::vector<RunSpec>& window_runs, std::size_t search_bound) {
    const std::size_t bound = std::min(search_bound + 1, seq.stages());
    for (std::size_t n = 0; n < bound; ++n) {
        // Candidate stage runs per source run: those whose leg image matches.
        std::vector<std::vector<std::size_t>> options(g.size());
        bool feasible = true;
        for (std::size_t i = 0; i < g.size() && feasible; ++i) {
            for (std::size_t v = 0; v < leg_runs[n].size(); ++v)
                if (leg_runs[n][v] == window_runs[i]) options[i].push_back(v);
            if (options[i].empty()) feasible = false;
        }
        if (!feasible) continue;
        std::vector<std::size_t> pick(g.size(), 0);
        while (true) {
            GameMorphism m{g, seq.games[n], {}};
            m.run_map.reserve(g.size());
            for (std::size_t i = 0; i < g.size(); ++i) m.run_map.push_back(options[i][pick[i]]);
            if (is_nonexpanding(m) && classify(m).is_a) return std::make_pair(n, std::move(m));
            std::size_t i = 0;
            for (; i < g.size(); ++i) {
                if (pick[i] + 1 < options[i].size()) {
                    ++pick[i];
                    std::fill(pick.begin(), pick.begin() + i, 0);
                    break;
                }
            }
            if (i == g.size()) break;
        }
    }
    return std::nullopt;
}

std::vector<std::vector<RunSpec>> colimit_leg_runs(const GameSequence& seq) {
    const std::size_t last = seq.stages() - 1;
    std::vector<std::vector<RunSpec>> legs(seq.stages());
    for (std::size_t n = 0; n < seq.stages(); ++n) {
        legs[n].reserve(seq.games[n].size());
        for (std::size_t i = 0; i < seq.games[n].size(); ++i)
            legs[n].push_back(seq.pushed_runspec(n, i, last));
    }
    return legs;
}

}  // namespace fgames
