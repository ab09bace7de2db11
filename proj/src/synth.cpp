#include "nashsynth/synth.hpp"

#include <algorithm>

namespace nashsynth {

bool Segment::contains(Vertex v) const {
    if (play) {
        const auto& p = play->prefix;
        const auto& c = play->cycle;
        return std::find(p.begin(), p.end(), v) != p.end() || std::find(c.begin(), c.end(), v) != c.end();
    }
    return std::find(hist.begin(), hist.end(), v) != hist.end();
}

Vertex Segment::first() const { return play ? play->at(0) : hist.front(); }

Vertex Segment::last() const { return play ? -1 : hist.back(); }

Vertex Segment::after(Vertex v) const {
    if (play) {
        History seq = play->unrolled();
        auto it = std::find(seq.begin(), seq.end(), v);
        if (it == seq.end()) return -1;
        return it + 1 == seq.end() ? play->cycle.front() : *(it + 1);
    }
    auto it = std::find(hist.begin(), hist.end(), v);
    if (it == hist.end() || it + 1 == hist.end()) return -1;
    return *(it + 1);
}

std::vector<Segment> template_segments(const Decomposition& d) {
    std::vector<Segment> out;
    for (const auto& h : d.segments) out.push_back(Segment{h, std::nullopt});
    out.push_back(Segment{{}, d.tail});
    return out;
}

int TemplateMachine::state(int player, int j) const {
    auto it = std::find(I.begin(), I.end(), player);
    return static_cast<int>(it - I.begin()) * K + (j - 1);
}

int TemplateMachine::player_of(int s) const { return I[s / K]; }

int TemplateMachine::segment_of(int s) const { return s % K + 1; }

namespace {

bool member(const std::vector<int>& I, int p) { return std::find(I.begin(), I.end(), p) != I.end(); }

Vertex lowest(const Arena& a, Vertex v) { return *std::min_element(a.succ[v].begin(), a.succ[v].end()); }

std::string pname(int i) { return "P" + std::to_string(i); }

std::vector<Strategy> punishers(const Game& g, const std::vector<int>& I) {
    std::vector<Strategy> out(g.n() + 1);
    for (int i : I) out[i] = punishing_strategy(g, i);
    return out;
}

Vertex punish_move(const Arena& a, const std::vector<Strategy>& pun, int against, int player, Vertex v) {
    return against != player ? pun[against][v] : lowest(a, v);
}

MealyMachine blank(int player) {
    MealyMachine m;
    m.player = player;
    return m;
}

int add_state(MealyMachine& m, const Arena& a, const std::string& name) {
    m.state_names.push_back(name);
    m.up.emplace_back(a.size(), -1);
    m.nxt.emplace_back(a.size(), -1);
    return m.num_states() - 1;
}

MealyMachine extend_template(const Arena& a, const TemplateMachine& t, int player, bool punish_states,
                             const std::vector<Strategy>& pun) {
    MealyMachine m = t.machine;
    std::vector<int> punish(a.num_players + 1, -1);
    if (punish_states)
        for (int i : t.I) punish[i] = add_state(m, a, pname(i));
    const int templ = t.K * static_cast<int>(t.I.size());
    for (int s = 0; s < templ; ++s) {
        int ip = t.player_of(s);
        for (Vertex v = 0; v < a.size(); ++v) {
            if (m.up[s][v] < 0) m.up[s][v] = punish_states ? punish[ip] : s;
            if (a.owner[v] == player && m.nxt[s][v] < 0) m.nxt[s][v] = punish_move(a, pun, ip, player, v);
        }
    }
    for (int i : t.I) {
        if (!punish_states) break;
        int s = punish[i];
        for (Vertex v = 0; v < a.size(); ++v) {
            m.up[s][v] = s;
            if (a.owner[v] == player) m.nxt[s][v] = punish_move(a, pun, i, player, v);
        }
    }
    validate_machine(a, m);
    return m;
}

StrategyProfile from_template(const Game& g, const SimplifiedOutcome& s, const std::vector<int>& I,
                              bool punish_states) {
    auto segs = template_segments(s.decomposition);
    auto pun = punishers(g, I);
    StrategyProfile p;
    for (int player = 1; player <= g.n(); ++player)
        p.machines.push_back(extend_template(g.arena, build_template(g.arena, segs, I, player), player,
                                             punish_states, pun));
    return p;
}

// Machines with a first phase replaying `sg0` vertex by vertex (Büchi and co-Büchi constructions).
struct TwoPhase {
    const Arena& a;
    const History& sg0;
    const std::vector<int>& I;
    const std::vector<Strategy>& pun;
    int player;
    MealyMachine m;
    std::vector<int> punish;

    TwoPhase(const Arena& arena, const History& h, const std::vector<int>& mon, const std::vector<Strategy>& p,
             int pl)
        : a(arena), sg0(h), I(mon), pun(p), player(pl), m(blank(pl)), punish(arena.num_players + 1, -1) {
        for (size_t p = 0; p < sg0.size(); ++p) add_state(m, a, "h" + std::to_string(p));
    }

    void add_punish_states() {
        for (int i : I) punish[i] = add_state(m, a, pname(i));
        for (int i : I) {
            int s = punish[i];
            for (Vertex v = 0; v < a.size(); ++v) {
                m.up[s][v] = s;
                if (a.owner[v] == player) m.nxt[s][v] = punish_move(a, pun, i, player, v);
            }
        }
    }

    // first-phase entries except reading the last sg0 vertex on schedule
    void fill_first_phase() {
        const int last = static_cast<int>(sg0.size()) - 1;
        for (int p = 0; p <= last; ++p)
            for (Vertex v = 0; v < a.size(); ++v) {
                if (v == sg0[p]) {
                    if (p < last) {
                        m.up[p][v] = p + 1;
                        if (a.owner[v] == player) m.nxt[p][v] = sg0[p + 1];
                    }
                    continue;
                }
                int dev = p >= 1 ? a.owner[sg0[p - 1]] : 0;
                bool monitored = dev > 0 && member(I, dev);
                m.up[p][v] = monitored ? punish[dev] : p;
                if (a.owner[v] == player)
                    m.nxt[p][v] = monitored && dev != player ? pun[dev][v] : lowest(a, v);
            }
    }
};

}  // namespace

TemplateMachine build_template(const Arena& a, const std::vector<Segment>& segments, const std::vector<int>& I,
                               int player) {
    for (const auto& s : segments)
        if (s.finite() && s.hist.size() < 2) throw TrivialSegment("decomposition has a trivial segment");
    if (I.empty()) throw std::invalid_argument("monitored player set must be nonempty");
    TemplateMachine t;
    t.I = I;
    t.K = static_cast<int>(segments.size());
    t.segments = segments;
    MealyMachine& m = t.machine;
    m.player = player;
    for (int i : I)
        for (int j = 1; j <= t.K; ++j) add_state(m, a, pname(i) + "." + std::to_string(j));
    m.init = t.state(I.front(), 1);
    for (int s = 0; s < m.num_states(); ++s) {
        int ip = t.player_of(s), j = t.segment_of(s);
        const Segment& sg = segments[j - 1];
        for (Vertex v = 0; v < a.size(); ++v) {
            if (!sg.contains(v)) continue;
            int i2 = member(I, a.owner[v]) ? a.owner[v] : ip;
            bool advance = j < t.K && sg.finite() && v == sg.last();
            m.up[s][v] = t.state(i2, advance ? j + 1 : j);
            if (a.owner[v] == player) m.nxt[s][v] = advance ? segments[j].after(v) : sg.after(v);
        }
    }
    return t;
}

int coherence_index(const std::vector<Segment>& segments, const History& h) {
    if (h.empty() || segments.empty() || h.front() != segments.front().first()) return 0;
    const int K = static_cast<int>(segments.size());
    int j = 1;
    for (size_t q = 1; q < h.size(); ++q) {
        Vertex v = h[q];
        const Segment& sg = segments[j - 1];
        if (!sg.contains(v)) return 0;
        if (j < K && sg.finite() && v == sg.last()) ++j;
    }
    return j;
}

std::vector<int> monitored_players(const Game& g, const std::vector<int>& win) {
    std::vector<int> I;
    for (int i = 1; i <= g.n(); ++i)
        if (!std::binary_search(win.begin(), win.end(), i)) I.push_back(i);
    if (I.empty()) I.push_back(1);
    return I;
}

StrategyProfile synth_reach(const Game& g, const SimplifiedOutcome& s) {
    return from_template(g, s, monitored_players(g, s.satpl), false);
}

StrategyProfile synth_spath(const Game& g, const SimplifiedOutcome& s) {
    if (!g.shared_weights()) throw std::invalid_argument("synthesis needs a single shared weight function");
    std::vector<int> all;
    for (int i = 1; i <= g.n(); ++i) all.push_back(i);
    return from_template(g, s, all, true);
}

StrategyProfile synth_safety(const Game& g, const SimplifiedOutcome& s) {
    return from_template(g, s, monitored_players(g, s.satpl), true);
}

StrategyProfile synth_buchi(const Game& g, const SimplifiedOutcome& s) {
    const Arena& a = g.arena;
    const Decomposition& d = s.decomposition;
    if (!d.periodic || d.segments.size() < 2) throw std::invalid_argument("buchi synthesis needs a periodic decomposition");
    const History& sg0 = d.segments[0];
    std::vector<Segment> period;
    for (size_t j = 1; j < d.segments.size(); ++j) period.push_back(Segment{d.segments[j], std::nullopt});
    const int k = static_cast<int>(period.size());
    auto I = monitored_players(g, s.satpl);
    auto pun = punishers(g, I);
    StrategyProfile prof;
    for (int player = 1; player <= g.n(); ++player) {
        TwoPhase tp(a, sg0, I, pun, player);
        MealyMachine& m = tp.m;
        std::vector<std::vector<int>> cell(a.num_players + 1, std::vector<int>(k + 1, -1));
        for (int i : I)
            for (int j = 1; j <= k; ++j) cell[i][j] = add_state(m, a, pname(i) + "." + std::to_string(j));
        tp.add_punish_states();
        auto periodic_up = [&](int i, int j, Vertex v) {
            const Segment& sg = period[j - 1];
            if (!sg.contains(v)) return tp.punish[i];
            int i2 = member(I, a.owner[v]) ? a.owner[v] : i;
            int j2 = v == sg.last() ? (j < k ? j + 1 : 1) : j;
            return cell[i2][j2];
        };
        auto periodic_nxt = [&](int j, Vertex v) {
            const Segment& sg = period[j - 1];
            return v == sg.last() ? period[j % k].after(v) : sg.after(v);
        };
        tp.fill_first_phase();
        const int last = static_cast<int>(sg0.size()) - 1;
        Vertex t1 = sg0[last];
        m.up[last][t1] = periodic_up(I.front(), 1, t1);
        if (a.owner[t1] == player) m.nxt[last][t1] = period[0].after(t1);
        for (int i : I)
            for (int j = 1; j <= k; ++j) {
                int st = cell[i][j];
                for (Vertex v = 0; v < a.size(); ++v) {
                    m.up[st][v] = periodic_up(i, j, v);
                    if (a.owner[v] != player) continue;
                    m.nxt[st][v] = period[j - 1].contains(v) ? periodic_nxt(j, v) : punish_move(a, pun, i, player, v);
                }
            }
        m.init = 0;
        validate_machine(a, m);
        prof.machines.push_back(m);
    }
    return prof;
}

StrategyProfile synth_cobuchi(const Game& g, const SimplifiedOutcome& s) {
    const Arena& a = g.arena;
    const Decomposition& d = s.decomposition;
    if (d.periodic || d.segments.size() != 1) throw std::invalid_argument("cobuchi synthesis needs a two-phase split");
    const History& sg0 = d.segments[0];
    Segment rest{{}, d.tail};
    auto I = monitored_players(g, s.satpl);
    auto pun = punishers(g, I);
    StrategyProfile prof;
    for (int player = 1; player <= g.n(); ++player) {
        TwoPhase tp(a, sg0, I, pun, player);
        MealyMachine& m = tp.m;
        std::vector<int> cell(a.num_players + 1, -1);
        for (int i : I) cell[i] = add_state(m, a, pname(i) + ".1");
        tp.add_punish_states();
        auto second_up = [&](int i, Vertex v) {
            if (!rest.contains(v)) return tp.punish[i];
            return cell[member(I, a.owner[v]) ? a.owner[v] : i];
        };
        tp.fill_first_phase();
        const int last = static_cast<int>(sg0.size()) - 1;
        Vertex x = sg0[last];
        m.up[last][x] = second_up(I.front(), x);
        if (a.owner[x] == player) m.nxt[last][x] = rest.after(x);
        for (int i : I) {
            int st = cell[i];
            for (Vertex v = 0; v < a.size(); ++v) {
                m.up[st][v] = second_up(i, v);
                if (a.owner[v] != player) continue;
                m.nxt[st][v] = rest.contains(v) ? rest.after(v) : punish_move(a, pun, i, player, v);
            }
        }
        m.init = 0;
        validate_machine(a, m);
        prof.machines.push_back(m);
    }
    return prof;
}

StrategyProfile synth(const Game& g, const SimplifiedOutcome& s) {
    switch (s.cls) {
    case Objective::Reach: return synth_reach(g, s);
    case Objective::Safe: return synth_safety(g, s);
    case Objective::Buchi: return synth_buchi(g, s);
    case Objective::CoBuchi: return synth_cobuchi(g, s);
    case Objective::SPath: return synth_spath(g, s);
    }
    throw std::logic_error("unknown objective");
}

Lasso construct_spath_ne_outcome(const Game& g, Vertex v0) {
    for (auto o : g.objective)
        if (o != Objective::SPath) throw std::invalid_argument("existence construction needs spath objectives");
    const Arena& a = g.arena;
    std::vector<Strategy> opt(g.n() + 1);
    for (int i = 1; i <= g.n(); ++i) {
        CoalitionView view(a, i);
        const Region& t = a.target[i - 1];
        const Weights& w = g.weights(i);
        opt[i] = spath_p1_optimal(view, t, w, spath_values(view, t, w));
    }
    StrategyProfile p;
    for (int i = 1; i <= g.n(); ++i) p.machines.push_back(memoryless_machine(a, i, opt[i]));
    return outcome_of_profile(g, p, v0).first;
}

}  // namespace nashsynth
