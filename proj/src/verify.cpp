#include "nashsynth/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace nashsynth {

std::size_t product_budget() {
    const char* env = std::getenv("NASHSYNTH_BUDGET");
    if (!env) return kDefaultBudget;
    char* end = nullptr;
    unsigned long long b = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || b == 0) return kDefaultBudget;
    return static_cast<std::size_t>(b);
}

namespace {

struct Product {
    std::vector<Vertex> vertex;
    std::vector<std::vector<int>> succ;
    std::vector<std::vector<Cost>> cost;
    std::vector<char> target;
};

Product build_product(const Game& g, const StrategyProfile& p, int free_player, Vertex v0, std::size_t budget) {
    const Arena& a = g.arena;
    if (static_cast<int>(p.machines.size()) != g.n()) throw std::invalid_argument("profile needs one machine per player");
    for (const auto& m : p.machines) validate_machine(a, m);
    const Weights& w = g.weights(free_player);
    Product pr;
    std::map<std::vector<int>, int> id;
    std::vector<std::vector<int>> keys;
    auto intern = [&](std::vector<int> key) {
        auto [it, fresh] = id.emplace(key, static_cast<int>(keys.size()));
        if (fresh) {
            if (keys.size() >= budget) throw ProductTooLarge(budget);
            keys.push_back(std::move(key));
        }
        return it->second;
    };
    std::vector<int> init{v0};
    for (int i = 1; i <= g.n(); ++i) init.push_back(i == free_player ? 0 : p.machines[i - 1].init);
    intern(init);
    for (std::size_t s = 0; s < keys.size(); ++s) {
        std::vector<int> key = keys[s];
        Vertex v = key[0];
        std::vector<int> mem(key.begin() + 1, key.end());
        for (int i = 1; i <= g.n(); ++i)
            if (i != free_player) mem[i - 1] = p.machines[i - 1].up[mem[i - 1]][v];
        std::vector<int> out;
        std::vector<Cost> c;
        auto go = [&](Vertex u) {
            std::vector<int> k2{u};
            k2.insert(k2.end(), mem.begin(), mem.end());
            out.push_back(intern(k2));
            c.push_back(w[v][a.edge_index(v, u)]);
        };
        int o = a.owner[v];
        if (o == free_player) {
            for (Vertex u : a.succ[v]) go(u);
        } else {
            go(p.machines[o - 1].nxt[key[o]][v]);
        }
        pr.vertex.push_back(v);
        pr.succ.push_back(std::move(out));
        pr.cost.push_back(std::move(c));
        pr.target.push_back(a.is_target(free_player, v));
    }
    return pr;
}

// walk `path`, then keep following `choose` until a product state repeats
Lasso close_path(const Product& pr, std::vector<int> path, const std::function<int(int)>& choose) {
    std::map<int, std::size_t> at;
    for (std::size_t i = 0; i < path.size(); ++i) at.emplace(path[i], i);
    while (true) {
        int nxt = choose(path.back());
        auto it = at.find(nxt);
        if (it != at.end()) {
            Lasso l;
            for (std::size_t i = 0; i < path.size(); ++i)
                (i < it->second ? l.prefix : l.cycle).push_back(pr.vertex[path[i]]);
            return canonical(l);
        }
        at.emplace(nxt, path.size());
        path.push_back(nxt);
    }
}

std::vector<int> path_to(const std::vector<int>& parent, int s) {
    std::vector<int> path;
    for (; s >= 0; s = parent[s]) path.push_back(s);
    std::reverse(path.begin(), path.end());
    return path;
}

// BFS over states with ok[]; returns parent array (-2 unreached)
std::vector<int> bfs(const Product& pr, const std::vector<char>& ok) {
    std::vector<int> parent(pr.vertex.size(), -2);
    if (!ok[0]) return parent;
    parent[0] = -1;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        int s = q.front();
        q.pop();
        for (int t : pr.succ[s])
            if (ok[t] && parent[t] == -2) {
                parent[t] = s;
                q.push(t);
            }
    }
    return parent;
}

// states inside `ok` from which some infinite path stays inside `ok`
std::vector<char> stay_forever(const Product& pr, std::vector<char> ok) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < ok.size(); ++s) {
            if (!ok[s]) continue;
            bool any = std::any_of(pr.succ[s].begin(), pr.succ[s].end(), [&](int t) { return ok[t] != 0; });
            if (!any) {
                ok[s] = 0;
                changed = true;
            }
        }
    }
    return ok;
}

int first_succ(const Product& pr, int s) { return pr.succ[s].front(); }

int succ_in(const Product& pr, const std::vector<char>& r, int s) {
    for (int t : pr.succ[s])
        if (r[t]) return t;
    return pr.succ[s].front();
}

std::vector<int> scc_ids(const Product& pr) {
    const int n = static_cast<int>(pr.vertex.size());
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
    std::vector<char> on(n, 0);
    int counter = 0, ncomp = 0;
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<std::pair<int, std::size_t>> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on[root] = 1;
        while (!call.empty()) {
            auto& [s, i] = call.back();
            if (i < pr.succ[s].size()) {
                int t = pr.succ[s][i++];
                if (index[t] < 0) {
                    index[t] = low[t] = counter++;
                    stack.push_back(t);
                    on[t] = 1;
                    call.push_back({t, 0});
                } else if (on[t]) {
                    low[s] = std::min(low[s], index[t]);
                }
                continue;
            }
            if (low[s] == index[s]) {
                int t;
                do {
                    t = stack.back();
                    stack.pop_back();
                    on[t] = 0;
                    comp[t] = ncomp;
                } while (t != s);
                ++ncomp;
            }
            int done = s;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    return comp;
}

BestResponse solve_reach(const Product& pr) {
    std::vector<char> all(pr.vertex.size(), 1);
    auto parent = bfs(pr, all);
    BestResponse r;
    for (std::size_t s = 0; s < pr.vertex.size(); ++s)
        if (pr.target[s] && parent[s] != -2) {
            r.value = kWin;
            r.witness = close_path(pr, path_to(parent, static_cast<int>(s)), [&](int x) { return first_succ(pr, x); });
            return r;
        }
    r.value = kLose;
    r.witness = close_path(pr, {0}, [&](int x) { return first_succ(pr, x); });
    return r;
}

BestResponse solve_safe(const Product& pr) {
    std::vector<char> ok(pr.vertex.size());
    for (std::size_t s = 0; s < ok.size(); ++s) ok[s] = !pr.target[s];
    auto keep = stay_forever(pr, ok);
    BestResponse r;
    if (keep[0]) {
        r.value = kWin;
        r.witness = close_path(pr, {0}, [&](int x) { return succ_in(pr, keep, x); });
    } else {
        r.value = kLose;
        r.witness = close_path(pr, {0}, [&](int x) { return first_succ(pr, x); });
    }
    return r;
}

BestResponse solve_cobuchi(const Product& pr) {
    std::vector<char> ok(pr.vertex.size());
    for (std::size_t s = 0; s < ok.size(); ++s) ok[s] = !pr.target[s];
    auto keep = stay_forever(pr, ok);
    std::vector<char> all(pr.vertex.size(), 1);
    auto parent = bfs(pr, all);
    BestResponse r;
    for (std::size_t s = 0; s < keep.size(); ++s)
        if (keep[s] && parent[s] != -2) {
            r.value = kWin;
            r.witness = close_path(pr, path_to(parent, static_cast<int>(s)), [&](int x) { return succ_in(pr, keep, x); });
            return r;
        }
    r.value = kLose;
    r.witness = close_path(pr, {0}, [&](int x) { return first_succ(pr, x); });
    return r;
}

BestResponse solve_buchi(const Product& pr) {
    auto comp = scc_ids(pr);
    const int n = static_cast<int>(pr.vertex.size());
    std::vector<char> all(n, 1);
    auto parent = bfs(pr, all);
    BestResponse r;
    for (int s = 0; s < n; ++s) {
        if (!pr.target[s] || parent[s] == -2) continue;
        std::vector<char> same(n);
        for (int t = 0; t < n; ++t) same[t] = comp[t] == comp[s];
        // cycle back to s inside its component
        std::vector<int> back(n, -2);
        std::queue<int> q;
        int hit = -1;
        for (int t : pr.succ[s]) {
            if (!same[t] || back[t] != -2) continue;
            back[t] = -1;
            q.push(t);
        }
        while (!q.empty() && hit < 0) {
            int x = q.front();
            q.pop();
            if (x == s) {
                hit = x;
                break;
            }
            for (int t : pr.succ[x])
                if (same[t] && back[t] == -2) {
                    back[t] = x;
                    q.push(t);
                }
        }
        if (hit < 0) continue;
        std::vector<int> loop;
        for (int x = back[s]; x >= 0; x = back[x]) loop.push_back(x);
        std::reverse(loop.begin(), loop.end());
        std::vector<int> path = path_to(parent, s);
        Lasso l;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) l.prefix.push_back(pr.vertex[path[i]]);
        l.cycle.push_back(pr.vertex[s]);
        for (int x : loop) l.cycle.push_back(pr.vertex[x]);
        r.value = kWin;
        r.witness = canonical(l);
        return r;
    }
    r.value = kLose;
    r.witness = close_path(pr, {0}, [&](int x) { return first_succ(pr, x); });
    return r;
}

BestResponse solve_spath(const Product& pr) {
    const int n = static_cast<int>(pr.vertex.size());
    std::vector<Cost> dist(n, kInf);
    std::vector<int> parent(n, -1);
    using Item = std::pair<Cost, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[0] = 0;
    pq.push({0, 0});
    BestResponse r;
    while (!pq.empty()) {
        auto [d, s] = pq.top();
        pq.pop();
        if (d != dist[s]) continue;
        if (pr.target[s]) {
            r.value = d;
            r.witness = close_path(pr, path_to(parent, s), [&](int x) { return first_succ(pr, x); });
            return r;
        }
        for (std::size_t i = 0; i < pr.succ[s].size(); ++i) {
            int t = pr.succ[s][i];
            Cost nd = d + pr.cost[s][i];
            if (nd < dist[t]) {
                dist[t] = nd;
                parent[t] = s;
                pq.push({nd, t});
            }
        }
    }
    r.value = kInf;
    r.witness = close_path(pr, {0}, [&](int x) { return first_succ(pr, x); });
    return r;
}

}  // namespace

BestResponse best_response(const Game& g, const StrategyProfile& p, int free_player, Vertex v0, std::size_t budget) {
    if (free_player < 1 || free_player > g.n()) throw std::invalid_argument("no such player");
    Product pr = build_product(g, p, free_player, v0, budget);
    BestResponse r;
    switch (g.objective[free_player - 1]) {
    case Objective::Reach: r = solve_reach(pr); break;
    case Objective::Safe: r = solve_safe(pr); break;
    case Objective::Buchi: r = solve_buchi(pr); break;
    case Objective::CoBuchi: r = solve_cobuchi(pr); break;
    case Objective::SPath: r = solve_spath(pr); break;
    }
    r.product_states = pr.vertex.size();
    return r;
}

NEReport is_nash(const Game& g, const StrategyProfile& p, Vertex v0, std::size_t budget) {
    NEReport rep;
    auto [outcome, costs] = outcome_of_profile(g, p, v0);
    rep.outcome = outcome;
    for (int i = 1; i <= g.n(); ++i) {
        BestResponse br = best_response(g, p, i, v0, budget);
        PlayerVerdict pv;
        pv.player = i;
        pv.outcome = costs.cost[i - 1];
        pv.best = br.value;
        if (pv.best < pv.outcome) {
            pv.witness = br.witness;
            rep.is_nash = false;
        }
        rep.players.push_back(pv);
    }
    return rep;
}

bool consistent_with(const Game& g, const StrategyProfile& p, int free_player, const Lasso& l) {
    const Arena& a = g.arena;
    if (!is_play(a, l)) return false;
    std::vector<int> mem;
    for (const auto& m : p.machines) mem.push_back(m.init);
    std::set<std::pair<long long, std::vector<int>>> seen;
    const long long pre = l.period_start(), per = static_cast<long long>(l.cycle.size());
    for (long long pos = 0;; ++pos) {
        long long norm = pos < pre ? pos : pre + (pos - pre) % per;
        if (!seen.insert({norm, mem}).second) return true;
        Vertex v = l.at(pos);
        int o = a.owner[v];
        if (o != free_player && p.machines[o - 1].nxt[mem[o - 1]][v] != l.at(pos + 1)) return false;
        for (int i = 1; i <= g.n(); ++i) mem[i - 1] = p.machines[i - 1].up[mem[i - 1]][v];
    }
}

long long coarse_bound(Objective cls, int n, int nv) {
    const long long nn = n;
    switch (cls) {
    case Objective::Reach: return nn * nn;
    case Objective::SPath:
    case Objective::Safe: return nn * nn + 2 * nn;
    case Objective::Buchi: return nv + nn * nn + nn;
    case Objective::CoBuchi: return nv + 2 * nn;
    }
    return 0;
}

long long refined_bound(Objective cls, int n, int nv, int k, int satpl_size) {
    const long long losers = std::max(1, n - satpl_size);
    switch (cls) {
    case Objective::Reach: return losers * std::max(1, k);
    case Objective::SPath: return static_cast<long long>(n) * (k + 2);
    case Objective::Safe: return losers * (k + 2);
    case Objective::Buchi: return nv + losers * (k + 1);
    case Objective::CoBuchi: return nv + 2 * losers;
    }
    return 0;
}

std::vector<BoundVerdict> check_memory_bounds(const StrategyProfile& p, Objective cls, int n, int nv, int k,
                                              int satpl_size) {
    std::vector<BoundVerdict> out;
    for (std::size_t i = 0; i < p.machines.size(); ++i) {
        BoundVerdict b;
        b.player = static_cast<int>(i) + 1;
        b.states = p.machines[i].num_states();
        b.coarse = coarse_bound(cls, n, nv);
        b.refined = refined_bound(cls, n, nv, k, satpl_size);
        b.ok = b.states <= b.coarse && b.states <= b.refined;
        out.push_back(b);
    }
    return out;
}

}  // namespace nashsynth
