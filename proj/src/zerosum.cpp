#include "nashsynth/zerosum.hpp"

#include <queue>
#include <tuple>

namespace nashsynth {

namespace {

std::vector<std::vector<Vertex>> predecessors(const Arena& a) {
    std::vector<std::vector<Vertex>> pred(a.size());
    for (Vertex u = 0; u < a.size(); ++u)
        for (Vertex v : a.succ[u]) pred[v].push_back(u);
    return pred;
}

Region complement(const Region& r) {
    Region c(r.size());
    for (size_t i = 0; i < r.size(); ++i) c[i] = !r[i];
    return c;
}

// successor of v inside `allowed`, lowest position first
Vertex stay_in(const Arena& a, Vertex v, const Region& allowed) {
    for (Vertex s : a.succ[v])
        if (allowed[s]) return s;
    return -1;
}

}  // namespace

AttractorResult attractor_in(const CoalitionView& view, const Region& target, int side, const Region& part) {
    const Arena& a = *view.arena;
    const int nv = a.size();
    auto pred = predecessors(a);
    AttractorResult r;
    r.region.assign(nv, 0);
    r.rank.assign(nv, -1);
    r.strategy.assign(nv, -1);
    std::vector<int> count(nv, 0);
    for (Vertex v = 0; v < nv; ++v)
        for (Vertex s : a.succ[v])
            if (part[s]) ++count[v];

    std::vector<Vertex> frontier;
    for (Vertex v = 0; v < nv; ++v)
        if (part[v] && target[v]) {
            r.region[v] = 1;
            r.rank[v] = 0;
            frontier.push_back(v);
        }
    int level = 0;
    while (!frontier.empty()) {
        std::vector<Vertex> next;
        for (Vertex x : frontier)
            for (Vertex u : pred[x]) {
                if (!part[u] || r.region[u]) continue;
                if (view.side(u) == side || --count[u] == 0) {
                    r.region[u] = 1;
                    r.rank[u] = level + 1;
                    next.push_back(u);
                }
            }
        frontier.swap(next);
        ++level;
    }
    for (Vertex v = 0; v < nv; ++v) {
        if (!r.region[v] || r.rank[v] == 0 || view.side(v) != side) continue;
        for (Vertex s : a.succ[v])
            if (part[s] && r.region[s] && r.rank[s] < r.rank[v]) {
                r.strategy[v] = s;
                break;
            }
    }
    return r;
}

AttractorResult attractor(const CoalitionView& view, const Region& target, int side) {
    return attractor_in(view, target, side, Region(view.arena->size(), 1));
}

namespace {

// Büchi for `side` on target; returns (region of side, strategy of side, strategy of opponent)
struct BuchiResult {
    Region win;  // winning region of `side`
    Strategy strat_side, strat_opp;
};

BuchiResult solve_buchi(const CoalitionView& view, const Region& target, int side) {
    const Arena& a = *view.arena;
    const int nv = a.size();
    const int opp = 3 - side;
    BuchiResult res;
    res.strat_side.assign(nv, -1);
    res.strat_opp.assign(nv, -1);
    Region w(nv, 1);
    while (true) {
        Region t(nv, 0);
        for (Vertex v = 0; v < nv; ++v) t[v] = w[v] && target[v];
        AttractorResult attr = attractor_in(view, t, side, w);
        Region trap(nv, 0);
        bool any = false;
        for (Vertex v = 0; v < nv; ++v) {
            trap[v] = w[v] && !attr.region[v];
            any = any || trap[v];
        }
        if (!any) {
            for (Vertex v = 0; v < nv; ++v) {
                if (!w[v] || view.side(v) != side) continue;
                res.strat_side[v] = attr.strategy[v] >= 0 ? attr.strategy[v] : stay_in(a, v, w);
            }
            break;
        }
        AttractorResult lose = attractor_in(view, trap, opp, w);
        for (Vertex v = 0; v < nv; ++v) {
            if (!lose.region[v]) continue;
            if (view.side(v) == opp) res.strat_opp[v] = trap[v] ? stay_in(a, v, trap) : lose.strategy[v];
            w[v] = 0;
        }
    }
    res.win = w;
    return res;
}

}  // namespace

QualSolution solve_qualitative(const CoalitionView& view, Objective kind, const Region& target) {
    const Arena& a = *view.arena;
    const int nv = a.size();
    QualSolution s;
    s.strat1.assign(nv, -1);
    s.strat2.assign(nv, -1);
    switch (kind) {
    case Objective::Reach:
    case Objective::SPath: {
        AttractorResult at = attractor(view, target, 1);
        s.win1 = at.region;
        s.win2 = complement(at.region);
        for (Vertex v = 0; v < nv; ++v) {
            if (view.side(v) == 1 && s.win1[v]) s.strat1[v] = at.strategy[v] >= 0 ? at.strategy[v] : a.succ[v].front();
            if (view.side(v) == 2 && s.win2[v]) s.strat2[v] = stay_in(a, v, s.win2);
        }
        break;
    }
    case Objective::Safe: {
        AttractorResult at = attractor(view, target, 2);
        s.win2 = at.region;
        s.win1 = complement(at.region);
        for (Vertex v = 0; v < nv; ++v) {
            if (view.side(v) == 2 && s.win2[v]) s.strat2[v] = at.strategy[v] >= 0 ? at.strategy[v] : a.succ[v].front();
            if (view.side(v) == 1 && s.win1[v]) s.strat1[v] = stay_in(a, v, s.win1);
        }
        break;
    }
    case Objective::Buchi: {
        BuchiResult b = solve_buchi(view, target, 1);
        s.win1 = b.win;
        s.win2 = complement(b.win);
        s.strat1 = b.strat_side;
        s.strat2 = b.strat_opp;
        break;
    }
    case Objective::CoBuchi: {
        BuchiResult b = solve_buchi(view, target, 2);
        s.win2 = b.win;
        s.win1 = complement(b.win);
        s.strat2 = b.strat_side;
        s.strat1 = b.strat_opp;
        break;
    }
    }
    return s;
}

std::vector<Cost> spath_values(const CoalitionView& view, const Region& target, const Weights& w) {
    const Arena& a = *view.arena;
    const int nv = a.size();
    auto pred = predecessors(a);
    std::vector<Cost> val(nv, kInf);
    std::vector<Cost> best(nv, kInf);  // P1: running min; P2: running max over settled successors
    std::vector<int> pending(nv);
    std::vector<char> done(nv, 0);
    for (Vertex v = 0; v < nv; ++v) pending[v] = static_cast<int>(a.succ[v].size());
    using Item = std::pair<Cost, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (Vertex v = 0; v < nv; ++v)
        if (target[v]) {
            best[v] = 0;
            pq.emplace(0, v);
        }
    while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (done[x] || d != best[x]) continue;
        done[x] = 1;
        val[x] = d;
        for (Vertex u : pred[x]) {
            if (done[u] || target[u]) continue;
            // parallel edges are excluded by validation, so the edge index is unique
            Cost c = d + w[u][a.edge_index(u, x)];
            if (view.side(u) == 1) {
                if (c < best[u]) {
                    best[u] = c;
                    pq.emplace(c, u);
                }
            } else {
                Cost m = best[u] == kInf ? c : std::max(best[u], c);
                best[u] = m;
                if (--pending[u] == 0) pq.emplace(m, u);
            }
        }
    }
    return val;
}

Strategy spath_p1_optimal(const CoalitionView& view, const Region& target, const Weights& w,
                          const std::vector<Cost>& values) {
    const Arena& a = *view.arena;
    const int nv = a.size();
    Arena restricted = a;
    for (Vertex v = 0; v < nv; ++v) {
        if (view.side(v) != 1 || target[v] || values[v] == kInf) continue;
        std::vector<Vertex> keep;
        std::vector<Cost> kw;
        for (size_t i = 0; i < a.succ[v].size(); ++i) {
            Vertex s = a.succ[v][i];
            if (values[s] != kInf && values[s] + w[v][i] == values[v]) {
                keep.push_back(s);
                kw.push_back(w[v][i]);
            }
        }
        if (keep.empty()) throw SolverError("NoValueConsistentEdge at " + a.name(v));
        restricted.succ[v] = keep;
        restricted.weight[v] = kw;
    }
    CoalitionView rv(restricted, view.protagonist);
    AttractorResult at = attractor(rv, target, 1);
    Strategy s(nv, -1);
    for (Vertex v = 0; v < nv; ++v) {
        if (view.side(v) != 1) continue;
        s[v] = at.strategy[v] >= 0 ? at.strategy[v] : restricted.succ[v].front();
    }
    return s;
}

Strategy spath_punisher(const CoalitionView& view, const Region& target, const Weights& w,
                        const std::vector<Cost>& values, Cost /*alpha*/) {
    const Arena& a = *view.arena;
    const int nv = a.size();
    AttractorResult reach = attractor(view, target, 1);
    Region safe2 = complement(reach.region);
    Strategy s(nv, -1);
    for (Vertex v = 0; v < nv; ++v) {
        if (view.side(v) != 2) continue;
        if (safe2[v]) {
            s[v] = stay_in(a, v, safe2);
            continue;
        }
        Vertex arg = -1;
        Cost top = 0;
        for (size_t i = 0; i < a.succ[v].size(); ++i) {
            Vertex x = a.succ[v][i];
            Cost c = values[x] == kInf ? kInf : values[x] + w[v][i];
            if (arg < 0 || c > top) {
                arg = x;
                top = c;
            }
        }
        s[v] = arg;
    }
    return s;
}

SPathSolution solve_spath(const CoalitionView& view, const Region& target, const Weights& w) {
    SPathSolution s;
    s.value = spath_values(view, target, w);
    s.opt1 = spath_p1_optimal(view, target, w, s.value);
    s.punish2 = spath_punisher(view, target, w, s.value);
    return s;
}

Strategy punishing_strategy(const Game& g, int player) {
    CoalitionView view(g.arena, player);
    const Region& t = g.arena.target[player - 1];
    Strategy s;
    if (g.objective[player - 1] == Objective::SPath) {
        const Weights& w = g.weights(player);
        s = spath_punisher(view, t, w, spath_values(view, t, w));
    } else {
        s = solve_qualitative(view, g.objective[player - 1], t).strat2;
    }
    for (Vertex v = 0; v < g.arena.size(); ++v)
        if (view.side(v) == 2 && s[v] < 0) s[v] = g.arena.succ[v].front();
    return s;
}

}  // namespace nashsynth
