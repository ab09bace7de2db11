#include "nashsynth/simplify.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

#include "nashsynth/characterize.hpp"

namespace nashsynth {

namespace {

using Key = std::pair<Cost, long long>;  // (weight, edges)
constexpr Key kFar{kInf, 0};

Region single(int nv, Vertex v) {
    Region r(nv, 0);
    r[v] = 1;
    return r;
}

Region set_of(int nv, const std::vector<Vertex>& vs) {
    Region r(nv, 0);
    for (Vertex v : vs) r[v] = 1;
    return r;
}

Region set_of(int nv, const History& h, size_t lo, size_t hi) {
    Region r(nv, 0);
    for (size_t i = lo; i <= hi; ++i) r[h[i]] = 1;
    return r;
}

History positions(const Lasso& l, long long lo, long long hi) {
    History h;
    for (long long i = lo; i <= hi; ++i) h.push_back(l.at(i));
    return h;
}

void assert_that(bool cond, const char* what) {
    if (!cond) throw std::logic_error(std::string("simplification postcondition failed: ") + what);
}

// Follow `rest` from its first vertex until a vertex repeats against `before` (whose last vertex is
// rest's first) or the walk itself, and close the loop there.
Lasso close_walk(const History& before, const Lasso& rest) {
    std::vector<Vertex> walk{rest.at(0)};
    for (long long pos = 1;; ++pos) {
        Vertex u = rest.at(pos);
        auto wi = std::find(walk.begin(), walk.end(), u);
        if (wi != walk.end()) {
            Lasso t;
            t.prefix.assign(walk.begin(), wi);
            t.cycle.assign(wi, walk.end());
            return t;
        }
        auto bi = std::find(before.begin(), before.end(), u);
        if (bi != before.end()) {
            Lasso t;
            t.cycle = walk;
            t.cycle.insert(t.cycle.end(), bi, before.end() - 1);
            return t;
        }
        walk.push_back(u);
    }
}

Lasso merge_into(const History& seg, const Lasso& tail) {
    Lasso m;
    m.prefix.assign(seg.begin(), seg.end() - 1);
    m.prefix.insert(m.prefix.end(), tail.prefix.begin(), tail.prefix.end());
    m.cycle = tail.cycle;
    return m;
}

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

SimplifiedOutcome finish(const Game& g, Decomposition d, Objective cls) {
    SimplifiedOutcome s;
    s.decomposition = std::move(d);
    s.lasso = canonical(reconstruct(s.decomposition));
    s.cls = cls;
    s.vispos = vispos(g.arena, s.lasso);
    s.satpl = satpl(g, s.lasso);
    assert_that(is_play(g.arena, s.lasso), "result is a play");
    return s;
}

// segments between first target visits, restricted to their original vertex sets
Decomposition segment_decomposition(const Game& g, const Lasso& ne, const Weights& w, int& k) {
    const Arena& a = g.arena;
    const int nv = a.size();
    std::vector<long long> pos;
    for (long long p : vispos(a, ne))
        if (p > 0) pos.push_back(p);
    k = static_cast<int>(pos.size());
    Decomposition d;
    long long prev = 0;
    for (long long p : pos) {
        History orig = positions(ne, prev, p);
        auto seg = min_history(a, orig.front(), single(nv, orig.back()), set_of(nv, orig, 0, orig.size() - 1), &w);
        assert_that(seg.has_value(), "segment history exists");
        d.segments.push_back(*seg);
        prev = p;
    }
    History before = d.segments.empty() ? History{ne.at(0)} : d.segments.back();
    d.tail = close_walk(before, suffix(ne, prev));
    return d;
}

void check_segments_simple(const Decomposition& d) {
    for (const auto& seg : d.segments) assert_that(is_simple_history(seg), "segments are simple");
}

}  // namespace

std::optional<History> min_history(const Arena& a, Vertex from, const Region& to, const Region& allowed,
                                   const Weights* w) {
    const int nv = a.size();
    if (!allowed[from]) return std::nullopt;
    std::vector<std::vector<std::pair<Vertex, Cost>>> pred(nv);
    for (Vertex u = 0; u < nv; ++u)
        for (size_t i = 0; i < a.succ[u].size(); ++i) pred[a.succ[u][i]].push_back({u, w ? (*w)[u][i] : 0});
    std::vector<Key> dist(nv, kFar);
    using Item = std::pair<Key, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (Vertex v = 0; v < nv; ++v)
        if (to[v] && allowed[v]) {
            dist[v] = {0, 0};
            pq.push({dist[v], v});
        }
    while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (d != dist[x]) continue;
        for (auto [u, c] : pred[x]) {
            if (!allowed[u] || to[u]) continue;
            Key nd{d.first + c, d.second + 1};
            if (nd < dist[u]) {
                dist[u] = nd;
                pq.push({nd, u});
            }
        }
    }
    if (dist[from] == kFar) return std::nullopt;
    History h{from};
    Vertex u = from;
    while (!to[u]) {
        Vertex pick = -1;
        for (size_t i = 0; i < a.succ[u].size(); ++i) {
            Vertex s = a.succ[u][i];
            if (!allowed[s] || dist[s] == kFar) continue;
            Key via{dist[s].first + (w ? (*w)[u][i] : 0), dist[s].second + 1};
            if (via == dist[u] && (pick < 0 || s < pick)) pick = s;
        }
        h.push_back(pick);
        u = pick;
    }
    return h;
}

std::optional<History> shortest_cycle(const Arena& a, Vertex t, const Region& allowed) {
    if (!allowed[t]) return std::nullopt;
    const int nv = a.size();
    std::optional<History> best;
    for (Vertex s : a.succ[t]) {
        if (!allowed[s]) continue;
        std::optional<History> rest = s == t ? History{t} : min_history(a, s, single(nv, t), allowed);
        if (!rest) continue;
        History c{t};
        c.insert(c.end(), rest->begin(), rest->end());
        if (!best || c.size() < best->size() || (c.size() == best->size() && c < *best)) best = c;
    }
    return best;
}

SimplifiedOutcome simplify_spath(const Game& g, const Lasso& ne) {
    if (!g.shared_weights()) throw std::invalid_argument("synthesis needs a single shared weight function");
    if (!check_spath_outcome(g, ne).is_ne_outcome) throw NotAnNEOutcome("lasso is not an NE outcome");
    int k = 0;
    Decomposition d = segment_decomposition(g, ne, g.arena.weight, k);
    SimplifiedOutcome s = finish(g, d, Objective::SPath);
    s.k = k;
    check_segments_simple(s.decomposition);
    assert_that(is_simple_lasso(k > 0 ? merge_into(d.segments.back(), d.tail) : d.tail), "tail merge is simple");
    assert_that(static_cast<int>(std::count_if(s.vispos.begin(), s.vispos.end(), [](long long p) { return p > 0; })) == k,
                "segment count matches visit positions");
    assert_that(check_spath_outcome(g, s.lasso).is_ne_outcome, "result is an NE outcome");
    CostProfile before = eval_profile(g, ne), after = eval_profile(g, s.lasso);
    for (int i = 0; i < g.n(); ++i) assert_that(after.cost[i] <= before.cost[i], "costs do not increase");
    return s;
}

SimplifiedOutcome simplify_reach(const Game& g, const Lasso& ne) {
    for (auto o : g.objective)
        if (o != Objective::Reach) throw std::invalid_argument("reach simplification needs reach objectives");
    if (!check_qual_outcome(g, ne).is_ne_outcome) throw NotAnNEOutcome("lasso is not an NE outcome");
    int k = 0;
    Weights zero;
    for (const auto& s : g.arena.succ) zero.emplace_back(s.size(), 0);
    Decomposition d = segment_decomposition(g, ne, zero, k);
    if (!d.segments.empty()) {
        d.tail = merge_into(d.segments.back(), d.tail);
        d.segments.pop_back();
    }
    d.tail_merged = true;
    SimplifiedOutcome s = finish(g, d, Objective::Reach);
    s.k = k;
    check_segments_simple(s.decomposition);
    assert_that(is_simple_lasso(d.tail), "merged tail is simple");
    assert_that(check_qual_outcome(g, s.lasso).is_ne_outcome, "result is an NE outcome");
    assert_that(s.satpl == satpl(g, ne), "same targets visited");
    return s;
}

SimplifiedOutcome simplify_safety(const Game& g, const Lasso& ne) {
    if (!check_safety_outcome(g, ne).is_ne_outcome) throw NotAnNEOutcome("lasso is not an NE outcome");
    const Arena& a = g.arena;
    const int nv = a.size();
    long long jstar = -1, istar = -1;
    for (long long j = 0; jstar < 0; ++j)
        for (long long i = 0; i <= j; ++i)
            if (a.has_edge(ne.at(j), ne.at(i))) {
                jstar = j;
                istar = i;
                break;
            }
    Lasso pi;
    pi.prefix = positions(ne, 0, istar - 1);
    pi.cycle = positions(ne, istar, jstar);
    assert_that(is_simple_lasso(pi), "closed lasso is simple");

    Decomposition d;
    long long prev = 0;
    for (long long p : vispos(a, pi)) {
        if (p == 0) continue;
        d.segments.push_back(positions(pi, prev, p));
        prev = p;
    }
    d.tail = suffix(pi, prev);
    SimplifiedOutcome s = finish(g, d, Objective::Safe);
    s.k = static_cast<int>(d.segments.size());
    check_segments_simple(s.decomposition);
    assert_that(is_simple_lasso(d.tail), "tail is simple");
    // no cycle avoids the segment end among the vertices seen so far
    History seen;
    for (const auto& seg : d.segments) {
        seen.insert(seen.end(), seg.begin(), seg.end());
        Region part = set_of(nv, seen);
        part[seg.back()] = 0;
        for (Vertex v = 0; v < nv; ++v)
            if (part[v]) assert_that(!shortest_cycle(a, v, part).has_value(), "no cycle before a segment end");
    }
    assert_that(check_safety_outcome(g, s.lasso).is_ne_outcome, "result is an NE outcome");
    assert_that(subset(satpl(g, ne), s.satpl), "winners are kept");
    return s;
}

SimplifiedOutcome simplify_buchi(const Game& g, const Lasso& input) {
    for (auto o : g.objective)
        if (o != Objective::Buchi) throw std::invalid_argument("buchi simplification needs buchi objectives");
    if (!check_qual_outcome(g, input).is_ne_outcome) throw NotAnNEOutcome("lasso is not an NE outcome");
    const Arena& a = g.arena;
    const int nv = a.size();
    Lasso ne = canonical(input);
    std::vector<int> win = satpl(g, ne);
    std::vector<Vertex> reps;
    for (int i : win)
        for (Vertex v : ne.cycle)
            if (a.is_target(i, v)) {
                if (std::find(reps.begin(), reps.end(), v) == reps.end()) reps.push_back(v);
                break;
            }
    if (reps.empty()) reps.push_back(ne.cycle.front());
    Region cyc = set_of(nv, ne.cycle);
    Region all = set_of(nv, vertices_of(ne));

    Decomposition d;
    d.periodic = true;
    auto sg0 = min_history(a, ne.at(0), single(nv, reps.front()), all);
    assert_that(sg0.has_value(), "initial history exists");
    d.segments.push_back(*sg0);
    const size_t k = reps.size();
    if (k == 1) {
        auto c = shortest_cycle(a, reps.front(), cyc);
        assert_that(c.has_value(), "period cycle exists");
        d.segments.push_back(*c);
    } else {
        for (size_t j = 0; j < k; ++j) {
            auto h = min_history(a, reps[j], single(nv, reps[(j + 1) % k]), cyc);
            assert_that(h.has_value(), "period history exists");
            d.segments.push_back(*h);
        }
    }
    SimplifiedOutcome s = finish(g, d, Objective::Buchi);
    s.k = static_cast<int>(k);
    assert_that(is_simple_history(d.segments[0]), "initial history is simple");
    for (size_t j = 1; j < d.segments.size(); ++j) {
        const History& seg = d.segments[j];
        bool ok = k == 1 ? seg.front() == seg.back() && is_simple_history(History(seg.begin() + 1, seg.end()))
                         : seg.size() >= 2 && is_simple_history(seg);
        assert_that(ok, "period segments are simple");
        for (int i = 1; i <= g.n(); ++i)
            if (!std::binary_search(win.begin(), win.end(), i))
                for (Vertex v : seg) assert_that(!a.is_target(i, v), "no losing target in the period");
    }
    assert_that(check_qual_outcome(g, s.lasso).is_ne_outcome, "result is an NE outcome");
    assert_that(s.satpl == win, "winners are preserved");
    return s;
}

long long cobuchi_lstar(const Game& g, const Lasso& l) {
    std::vector<int> win = satpl(g, l);
    long long lstar = 0;
    History h = l.unrolled();
    for (long long j = 0; j < static_cast<long long>(h.size()); ++j)
        for (int i : win)
            if (g.arena.is_target(i, h[j])) lstar = std::max(lstar, j + 1);
    return lstar;
}

SimplifiedOutcome simplify_cobuchi(const Game& g, const Lasso& input) {
    for (auto o : g.objective)
        if (o != Objective::CoBuchi) throw std::invalid_argument("cobuchi simplification needs cobuchi objectives");
    if (!check_qual_outcome(g, input).is_ne_outcome) throw NotAnNEOutcome("lasso is not an NE outcome");
    const Arena& a = g.arena;
    const int nv = a.size();
    const std::vector<int> original = satpl(g, input);
    Lasso rho = input;
    Lasso pi;
    long long lstar = 0;
    while (true) {
        // reduce to a simple lasso whose cycle lies after the last winner target
        long long l = cobuchi_lstar(g, rho);
        Lasso tail = close_walk(History{rho.at(l)}, suffix(rho, l));
        const History& cyc = tail.cycle;
        auto path = min_history(a, rho.at(0), set_of(nv, cyc), set_of(nv, vertices_of(rho)));
        assert_that(path.has_value(), "path to the cycle exists");
        auto entry = std::find(cyc.begin(), cyc.end(), path->back());
        pi.prefix.assign(path->begin(), path->end() - 1);
        pi.cycle.assign(entry, cyc.end());
        pi.cycle.insert(pi.cycle.end(), cyc.begin(), entry);
        assert_that(is_simple_lasso(pi), "reduced lasso is simple");

        std::vector<int> win = satpl(g, pi);
        lstar = cobuchi_lstar(g, pi);
        Lasso rest = suffix(pi, lstar);
        Region part = set_of(nv, vertices_of(rest));
        bool restarted = false;
        for (int j = 1; j <= g.n() && !restarted; ++j) {
            if (std::binary_search(win.begin(), win.end(), j)) continue;
            Region avoid = part;
            for (Vertex v = 0; v < nv; ++v) {
                bool bad = a.is_target(j, v);
                for (int i : win) bad = bad || a.is_target(i, v);
                if (bad) avoid[v] = 0;
            }
            for (Vertex c = 0; c < nv && !restarted; ++c) {
                if (!avoid[c]) continue;
                auto loop = shortest_cycle(a, c, avoid);
                if (!loop) continue;
                auto reach = min_history(a, rest.at(0), single(nv, c), part);
                if (!reach) continue;
                Lasso next;
                next.prefix = positions(pi, 0, lstar - 1);
                next.prefix.insert(next.prefix.end(), reach->begin(), reach->end() - 1);
                next.cycle.assign(loop->begin(), loop->end() - 1);
                assert_that(is_play(a, next), "witness is a play");
                assert_that(subset(win, satpl(g, next)) && satpl(g, next).size() > win.size(), "witness enlarges");
                rho = next;
                restarted = true;
            }
        }
        if (!restarted) break;
    }
    Decomposition d;
    d.segments.push_back(positions(pi, 0, lstar));
    d.tail = suffix(pi, lstar);
    SimplifiedOutcome s = finish(g, d, Objective::CoBuchi);
    s.lstar = lstar;
    s.k = 1;
    assert_that(is_simple_lasso(d.tail) && is_simple_history(d.segments[0]), "phases are simple");
    assert_that(check_qual_outcome(g, s.lasso).is_ne_outcome, "result is an NE outcome");
    assert_that(subset(original, s.satpl), "winners are kept");
    return s;
}

SimplifiedOutcome simplify(const Game& g, const Lasso& ne) {
    auto cls = g.uniform_objective();
    if (!cls) throw MixedObjectives("simplification needs a single objective kind");
    switch (*cls) {
    case Objective::Reach: return simplify_reach(g, ne);
    case Objective::Safe: return simplify_safety(g, ne);
    case Objective::Buchi: return simplify_buchi(g, ne);
    case Objective::CoBuchi: return simplify_cobuchi(g, ne);
    case Objective::SPath: return simplify_spath(g, ne);
    }
    throw std::logic_error("unknown objective");
}

}  // namespace nashsynth
