#include "nashsynth/arena.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace nashsynth {

const char* objective_name(Objective o) {
    switch (o) {
    case Objective::Reach: return "reach";
    case Objective::Safe: return "safe";
    case Objective::Buchi: return "buchi";
    case Objective::CoBuchi: return "cobuchi";
    case Objective::SPath: return "spath";
    }
    return "?";
}

std::optional<Objective> objective_from_name(const std::string& s) {
    if (s == "reach") return Objective::Reach;
    if (s == "safe") return Objective::Safe;
    if (s == "buchi") return Objective::Buchi;
    if (s == "cobuchi") return Objective::CoBuchi;
    if (s == "spath") return Objective::SPath;
    return std::nullopt;
}

int Arena::edge_index(Vertex u, Vertex v) const {
    const auto& s = succ[u];
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i] == v) return static_cast<int>(i);
    return -1;
}

Cost Arena::w(Vertex u, Vertex v) const {
    int i = edge_index(u, v);
    if (i < 0) throw std::out_of_range("no edge " + name(u) + " -> " + name(v));
    return weight[u][i];
}

std::string Arena::name(Vertex v) const {
    if (v >= 0 && v < static_cast<int>(names.size()) && !names[v].empty()) return names[v];
    return "#" + std::to_string(v);
}

std::optional<Vertex> Arena::find(const std::string& nm) const {
    for (int v = 0; v < size(); ++v)
        if (names[v] == nm) return v;
    return std::nullopt;
}

Arena validate_arena(Arena a) {
    using K = ArenaError::Kind;
    const int nv = a.size();
    if (a.num_players < 1) throw ArenaError(K::BadShape, -1, "arena needs at least one player");
    if (nv == 0) throw ArenaError(K::BadShape, -1, "arena has no vertices");
    if (static_cast<int>(a.succ.size()) != nv) throw ArenaError(K::BadShape, -1, "successor table size mismatch");
    if (a.weight.empty()) {
        a.weight.resize(nv);
        for (int v = 0; v < nv; ++v) a.weight[v].assign(a.succ[v].size(), 0);
    }
    if (static_cast<int>(a.weight.size()) != nv) throw ArenaError(K::BadShape, -1, "weight table size mismatch");
    a.names.resize(nv);
    for (int v = 0; v < nv; ++v)
        if (a.names[v].empty()) a.names[v] = "v" + std::to_string(v);
    a.target.resize(a.num_players);
    for (auto& t : a.target) {
        if (t.empty()) t.assign(nv, 0);
        if (static_cast<int>(t.size()) != nv) throw ArenaError(K::BadTarget, -1, "target set size mismatch");
    }
    for (int v = 0; v < nv; ++v) {
        if (a.owner[v] < 1 || a.owner[v] > a.num_players)
            throw ArenaError(K::OwnerOutOfRange, v, "owner of " + a.name(v) + " out of range");
        if (a.succ[v].empty()) throw ArenaError(K::DeadlockVertex, v, "deadlock at " + a.name(v));
        if (a.weight[v].size() != a.succ[v].size())
            throw ArenaError(K::BadShape, v, "weights of " + a.name(v) + " do not match its edges");
        std::set<Vertex> seen;
        for (Vertex s : a.succ[v]) {
            if (s < 0 || s >= nv) throw ArenaError(K::DanglingEdge, v, "dangling edge from " + a.name(v));
            if (!seen.insert(s).second)
                throw ArenaError(K::DuplicateEdge, v, "duplicate edge " + a.name(v) + " -> " + a.name(s));
        }
    }
    return a;
}

const Weights& Game::weights(int player) const {
    const auto& pw = player_weight[player - 1];
    return pw ? *pw : arena.weight;
}

bool Game::shared_weights() const {
    for (const auto& pw : player_weight)
        if (pw) return false;
    return true;
}

std::optional<Objective> Game::uniform_objective() const {
    for (auto o : objective)
        if (o != objective.front()) return std::nullopt;
    return objective.front();
}

Game validate_game(Game g) {
    g.arena = validate_arena(std::move(g.arena));
    const int n = g.arena.num_players;
    if (static_cast<int>(g.objective.size()) != n)
        throw ArenaError(ArenaError::Kind::BadShape, -1, "one objective per player is required");
    g.player_weight.resize(n);
    for (const auto& pw : g.player_weight) {
        if (!pw) continue;
        if (pw->size() != g.arena.succ.size())
            throw ArenaError(ArenaError::Kind::BadShape, -1, "player weight table size mismatch");
        for (int v = 0; v < g.arena.size(); ++v)
            if ((*pw)[v].size() != g.arena.succ[v].size())
                throw ArenaError(ArenaError::Kind::BadShape, v, "player weight table size mismatch");
    }
    if (g.init && (*g.init < 0 || *g.init >= g.arena.size()))
        throw ArenaError(ArenaError::Kind::BadShape, -1, "initial vertex out of range");
    return g;
}

Vertex Lasso::at(long long pos) const {
    const long long p = static_cast<long long>(prefix.size());
    if (pos < p) return prefix[pos];
    return cycle[(pos - p) % static_cast<long long>(cycle.size())];
}

History Lasso::unrolled() const {
    History h = prefix;
    h.insert(h.end(), cycle.begin(), cycle.end());
    return h;
}

Lasso shortest_form(Lasso l) {
    if (l.cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
    const size_t c = l.cycle.size();
    for (size_t d = 1; d <= c; ++d) {
        if (c % d) continue;
        bool ok = true;
        for (size_t i = d; i < c && ok; ++i) ok = l.cycle[i] == l.cycle[i - d];
        if (ok) {
            l.cycle.resize(d);
            break;
        }
    }
    while (!l.prefix.empty() && l.prefix.back() == l.cycle.back()) {
        l.prefix.pop_back();
        std::rotate(l.cycle.begin(), l.cycle.end() - 1, l.cycle.end());
    }
    return l;
}

Lasso canonical(Lasso l) {
    l = shortest_form(std::move(l));
    const size_t m = l.cycle.size();
    size_t best = 0;
    for (size_t r = 1; r < m; ++r) {
        for (size_t i = 0; i < m; ++i) {
            Vertex a = l.cycle[(r + i) % m], b = l.cycle[(best + i) % m];
            if (a != b) {
                if (a < b) best = r;
                break;
            }
        }
    }
    l.prefix.insert(l.prefix.end(), l.cycle.begin(), l.cycle.begin() + best);
    std::rotate(l.cycle.begin(), l.cycle.begin() + best, l.cycle.end());
    return l;
}

bool same_play(const Lasso& a, const Lasso& b) { return canonical(a) == canonical(b); }

bool is_play(const Arena& a, const Lasso& l) {
    if (l.cycle.empty()) return false;
    History h = l.unrolled();
    h.push_back(l.cycle.front());
    for (Vertex v : h)
        if (v < 0 || v >= a.size()) return false;
    for (size_t i = 0; i + 1 < h.size(); ++i)
        if (!a.has_edge(h[i], h[i + 1])) return false;
    return true;
}

bool is_simple_history(const History& h) {
    std::set<Vertex> s(h.begin(), h.end());
    return s.size() == h.size();
}

bool is_simple_lasso(const Lasso& l) { return !l.cycle.empty() && is_simple_history(shortest_form(l).unrolled()); }

std::vector<Vertex> vertices_of(const Lasso& l) {
    History h = l.unrolled();
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
    return h;
}

Lasso suffix(const Lasso& l, long long pos) {
    Lasso r;
    if (pos < static_cast<long long>(l.prefix.size())) {
        r.prefix.assign(l.prefix.begin() + pos, l.prefix.end());
        r.cycle = l.cycle;
    } else {
        long long off = (pos - static_cast<long long>(l.prefix.size())) % static_cast<long long>(l.cycle.size());
        r.cycle = l.cycle;
        std::rotate(r.cycle.begin(), r.cycle.begin() + off, r.cycle.end());
    }
    return r;
}

std::vector<std::vector<Vertex>> Decomposition::segment_vertices() const {
    std::vector<std::vector<Vertex>> out;
    for (const auto& s : segments) {
        History h = s;
        std::sort(h.begin(), h.end());
        h.erase(std::unique(h.begin(), h.end()), h.end());
        out.push_back(h);
    }
    if (!periodic) out.push_back(vertices_of(tail));
    return out;
}

Lasso reconstruct(const Decomposition& d) {
    if (d.periodic) {
        if (d.segments.size() < 2) throw std::invalid_argument("periodic decomposition needs a period");
        Lasso l;
        l.prefix.assign(d.segments[0].begin(), d.segments[0].end() - 1);
        for (size_t j = 1; j < d.segments.size(); ++j)
            l.cycle.insert(l.cycle.end(), d.segments[j].begin(), d.segments[j].end() - 1);
        return l;
    }
    History h;
    for (const auto& s : d.segments) {
        if (h.empty()) {
            h = s;
        } else {
            if (s.empty() || s.front() != h.back()) throw std::invalid_argument("segments do not chain");
            h.insert(h.end(), s.begin() + 1, s.end());
        }
    }
    Lasso l = d.tail;
    if (!h.empty()) {
        if (l.at(0) != h.back()) throw std::invalid_argument("tail does not start at the last segment end");
        History p(h.begin(), h.end() - 1);
        p.insert(p.end(), l.prefix.begin(), l.prefix.end());
        l.prefix = p;
    }
    return l;
}

void validate_machine(const Arena& a, const MealyMachine& m) {
    const int ns = m.num_states();
    if (ns == 0 || m.init < 0 || m.init >= ns) throw std::invalid_argument("machine has no valid initial state");
    if (static_cast<int>(m.up.size()) != ns || static_cast<int>(m.nxt.size()) != ns)
        throw std::invalid_argument("machine tables do not match its states");
    for (int s = 0; s < ns; ++s) {
        if (static_cast<int>(m.up[s].size()) != a.size() || static_cast<int>(m.nxt[s].size()) != a.size())
            throw std::invalid_argument("machine tables do not cover every vertex");
        for (Vertex v = 0; v < a.size(); ++v) {
            if (m.up[s][v] < 0 || m.up[s][v] >= ns)
                throw std::invalid_argument("update of state " + m.state_names[s] + " is not total");
            if (a.owner[v] == m.player) {
                if (!a.has_edge(v, m.nxt[s][v]))
                    throw std::invalid_argument("move of state " + m.state_names[s] + " at " + a.name(v) +
                                                " is not a successor");
            }
        }
    }
}

MealyMachine memoryless_machine(const Arena& a, int player, const std::vector<Vertex>& choice) {
    MealyMachine m;
    m.player = player;
    m.state_names = {"m"};
    m.up.assign(1, std::vector<int>(a.size(), 0));
    m.nxt.assign(1, std::vector<Vertex>(a.size(), -1));
    for (Vertex v = 0; v < a.size(); ++v)
        if (a.owner[v] == player) {
            Vertex c = v < static_cast<int>(choice.size()) ? choice[v] : -1;
            m.nxt[0][v] = c >= 0 ? c : a.succ[v].front();
        }
    return m;
}

long long first_visit(const Arena& a, const Lasso& l, int player) {
    History h = l.unrolled();
    for (size_t i = 0; i < h.size(); ++i)
        if (a.is_target(player, h[i])) return static_cast<long long>(i);
    return -1;
}

std::vector<long long> vispos(const Arena& a, const Lasso& l) {
    std::set<long long> s;
    for (int i = 1; i <= a.num_players; ++i) {
        long long f = first_visit(a, l, i);
        if (f >= 0) s.insert(f);
    }
    return {s.begin(), s.end()};
}

Cost history_weight(const Arena& a, const History& h, const Weights* w) {
    const Weights& wt = w ? *w : a.weight;
    Cost c = 0;
    for (size_t i = 0; i + 1 < h.size(); ++i) c += wt[h[i]][a.edge_index(h[i], h[i + 1])];
    return c;
}

Cost eval_cost(const Arena& a, const Lasso& l, Objective kind, int player, const Weights* w) {
    auto in_cycle = [&] {
        for (Vertex v : l.cycle)
            if (a.is_target(player, v)) return true;
        return false;
    };
    long long f = first_visit(a, l, player);
    switch (kind) {
    case Objective::Reach: return f >= 0 ? kWin : kLose;
    case Objective::Safe: return f >= 0 ? kLose : kWin;
    case Objective::Buchi: return in_cycle() ? kWin : kLose;
    case Objective::CoBuchi: return in_cycle() ? kLose : kWin;
    case Objective::SPath: {
        if (f < 0) return kInf;
        History h;
        for (long long i = 0; i <= f; ++i) h.push_back(l.at(i));
        return history_weight(a, h, w);
    }
    }
    return kInf;
}

Cost eval_cost(const Game& g, const Lasso& l, int player) {
    return eval_cost(g.arena, l, g.objective[player - 1], player, &g.weights(player));
}

CostProfile eval_profile(const Game& g, const Lasso& l) {
    CostProfile c;
    for (int i = 1; i <= g.n(); ++i) c.cost.push_back(eval_cost(g, l, i));
    return c;
}

std::vector<int> satpl(const Game& g, const Lasso& l) {
    std::vector<int> s;
    for (int i = 1; i <= g.n(); ++i) {
        Cost c = eval_cost(g, l, i);
        bool won = g.objective[i - 1] == Objective::SPath ? c != kInf : c == kWin;
        if (won) s.push_back(i);
    }
    return s;
}

std::pair<Lasso, CostProfile> outcome_of_profile(const Game& g, const StrategyProfile& p, Vertex v0) {
    const Arena& a = g.arena;
    if (static_cast<int>(p.machines.size()) != g.n()) throw std::invalid_argument("profile needs one machine per player");
    std::vector<int> mem;
    for (const auto& m : p.machines) mem.push_back(m.init);
    std::map<std::pair<Vertex, std::vector<int>>, size_t> seen;
    History seq;
    Vertex v = v0;
    while (true) {
        auto key = std::make_pair(v, mem);
        auto it = seen.find(key);
        if (it != seen.end()) {
            Lasso l;
            l.prefix.assign(seq.begin(), seq.begin() + it->second);
            l.cycle.assign(seq.begin() + it->second, seq.end());
            l = canonical(l);
            return {l, eval_profile(g, l)};
        }
        seen.emplace(key, seq.size());
        seq.push_back(v);
        const auto& owner_m = p.machines[a.owner[v] - 1];
        Vertex nxt = owner_m.nxt[mem[a.owner[v] - 1]][v];
        for (size_t i = 0; i < mem.size(); ++i) mem[i] = p.machines[i].up[mem[i]][v];
        v = nxt;
    }
}

std::string cost_string(Cost c) { return c == kInf ? "inf" : std::to_string(c); }

}  // namespace nashsynth
