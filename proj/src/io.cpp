#include "nashsynth/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace nashsynth {

namespace {

struct Token {
    std::string text;
    int col;
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

bool valid_name(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
    });
}

struct Lines {
    std::vector<std::pair<int, std::vector<Token>>> rows;  // (line number, tokens), blank lines dropped
    int last_line = 1;

    explicit Lines(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int no = 0;
        while (std::getline(in, line)) {
            ++no;
            auto t = tokenize(line);
            if (!t.empty()) rows.push_back({no, std::move(t)});
        }
        last_line = std::max(no, 1);
    }
};

struct Row {
    int line;
    const std::vector<Token>& tok;

    [[noreturn]] void fail(std::size_t i, const std::string& msg) const {
        int col = i < tok.size() ? tok[i].col : tok.back().col + static_cast<int>(tok.back().text.size());
        throw SyntaxError(line, col, msg);
    }
    void arity(std::size_t lo, std::size_t hi) const {
        if (tok.size() < lo) fail(tok.size(), "missing field after '" + tok.back().text + "'");
        if (tok.size() > hi) fail(hi, "unexpected token '" + tok[hi].text + "'");
    }
    unsigned long long number(std::size_t i) const {
        const std::string& s = tok[i].text;
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
            s.size() > 18)
            fail(i, "expected a non-negative integer, got '" + s + "'");
        return std::stoull(s);
    }
    const std::string& name(std::size_t i) const {
        if (!valid_name(tok[i].text)) fail(i, "invalid name '" + tok[i].text + "'");
        return tok[i].text;
    }
};

std::string read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string read_file(const std::string& path) { return read_all(path); }

Game parse_game(const std::string& text) {
    Lines lines(text);
    if (lines.rows.empty()) throw SyntaxError(1, 1, "expected 'players'");
    Game g;
    Arena& a = g.arena;
    std::map<std::string, Vertex> ids;
    std::vector<std::vector<std::pair<Vertex, Cost>>> edges;
    std::vector<std::optional<Objective>> obj;
    std::vector<std::map<std::pair<Vertex, Vertex>, Cost>> override_w;
    std::vector<std::vector<Vertex>> tgt;
    bool have_players = false;
    auto lookup = [&](const Row& r, std::size_t i) {
        auto it = ids.find(r.name(i));
        if (it == ids.end()) r.fail(i, "unknown vertex '" + r.tok[i].text + "'");
        return it->second;
    };
    auto player = [&](const Row& r, std::size_t i) {
        auto p = r.number(i);
        if (p < 1 || p > static_cast<unsigned long long>(a.num_players)) r.fail(i, "player out of range");
        return static_cast<int>(p);
    };
    for (const auto& [no, tok] : lines.rows) {
        Row r{no, tok};
        const std::string& kw = tok[0].text;
        if (!have_players && kw != "players") r.fail(0, "expected 'players'");
        if (kw == "players") {
            if (have_players) r.fail(0, "duplicate 'players'");
            r.arity(2, 2);
            auto n = r.number(1);
            if (n < 1 || n > 64) r.fail(1, "player count must be in 1..64");
            a.num_players = static_cast<int>(n);
            obj.assign(n, std::nullopt);
            override_w.resize(n);
            tgt.resize(n);
            have_players = true;
        } else if (kw == "vertex") {
            r.arity(3, 3);
            const std::string& nm = r.name(1);
            if (ids.count(nm)) r.fail(1, "duplicate vertex '" + nm + "'");
            auto o = r.number(2);
            ids[nm] = a.size();
            a.names.push_back(nm);
            a.owner.push_back(static_cast<int>(std::min<unsigned long long>(o, 1u << 30)));
            edges.emplace_back();
        } else if (kw == "edge") {
            r.arity(3, 4);
            Vertex u = lookup(r, 1), v = lookup(r, 2);
            Cost w = tok.size() == 4 ? r.number(3) : 0;
            for (const auto& e : edges[u])
                if (e.first == v) r.fail(2, "duplicate edge");
            edges[u].push_back({v, w});
        } else if (kw == "objective") {
            r.arity(3, tok.size());
            int p = player(r, 1);
            if (obj[p - 1]) r.fail(1, "duplicate objective for player " + std::to_string(p));
            auto k = objective_from_name(tok[2].text);
            if (!k) r.fail(2, "unknown objective kind '" + tok[2].text + "'");
            obj[p - 1] = *k;
            for (std::size_t i = 3; i < tok.size(); ++i) tgt[p - 1].push_back(lookup(r, i));
        } else if (kw == "weight") {
            r.arity(5, 5);
            int p = player(r, 1);
            Vertex u = lookup(r, 2), v = lookup(r, 3);
            override_w[p - 1][{u, v}] = r.number(4);
        } else if (kw == "init") {
            r.arity(2, 2);
            if (g.init) r.fail(0, "duplicate 'init'");
            g.init = lookup(r, 1);
        } else {
            r.fail(0, "unknown keyword '" + kw + "'");
        }
    }
    for (int p = 1; p <= a.num_players; ++p)
        if (!obj[p - 1]) throw SyntaxError(lines.last_line, 1, "player " + std::to_string(p) + " has no objective");
    const int nv = a.size();
    a.succ.resize(nv);
    a.weight.resize(nv);
    for (Vertex u = 0; u < nv; ++u) {
        std::sort(edges[u].begin(), edges[u].end());
        for (auto [v, w] : edges[u]) {
            a.succ[u].push_back(v);
            a.weight[u].push_back(w);
        }
    }
    for (int p = 0; p < a.num_players; ++p) {
        g.objective.push_back(*obj[p]);
        Region t(nv, 0);
        for (Vertex v : tgt[p]) t[v] = 1;
        a.target.push_back(t);
    }
    g.player_weight.resize(a.num_players);
    for (int p = 0; p < a.num_players; ++p) {
        if (override_w[p].empty()) continue;
        Weights w = a.weight;
        for (const auto& [e, c] : override_w[p]) {
            int idx = a.edge_index(e.first, e.second);
            if (idx < 0)
                throw ArenaError(ArenaError::Kind::DanglingEdge, e.first,
                                 "weight given for missing edge " + a.names[e.first] + " -> " + a.names[e.second]);
            w[e.first][idx] = c;
        }
        g.player_weight[p] = w;
    }
    return validate_game(std::move(g));
}

Game load_game(const std::string& path) { return parse_game(read_all(path)); }

std::string serialize_game(const Game& g) {
    const Arena& a = g.arena;
    std::ostringstream out;
    out << "players " << a.num_players << "\n";
    for (Vertex v = 0; v < a.size(); ++v) out << "vertex " << a.name(v) << " " << a.owner[v] << "\n";
    for (Vertex u = 0; u < a.size(); ++u) {
        std::vector<std::size_t> order(a.succ[u].size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a.succ[u][x] < a.succ[u][y]; });
        for (auto i : order) out << "edge " << a.name(u) << " " << a.name(a.succ[u][i]) << " " << a.weight[u][i] << "\n";
    }
    for (int p = 1; p <= a.num_players; ++p) {
        out << "objective " << p << " " << objective_name(g.objective[p - 1]);
        for (Vertex v = 0; v < a.size(); ++v)
            if (a.is_target(p, v)) out << " " << a.name(v);
        out << "\n";
    }
    for (int p = 1; p <= a.num_players; ++p) {
        const auto& pw = g.player_weight.size() >= static_cast<std::size_t>(p) ? g.player_weight[p - 1] : std::nullopt;
        if (!pw) continue;
        for (Vertex u = 0; u < a.size(); ++u) {
            std::vector<std::size_t> order(a.succ[u].size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](std::size_t x, std::size_t y) { return a.succ[u][x] < a.succ[u][y]; });
            for (auto i : order)
                if ((*pw)[u][i] != a.weight[u][i])
                    out << "weight " << p << " " << a.name(u) << " " << a.name(a.succ[u][i]) << " " << (*pw)[u][i]
                        << "\n";
        }
    }
    if (g.init) out << "init " << a.name(*g.init) << "\n";
    return out.str();
}

StrategyProfile parse_profile(const std::string& text, const Arena& a) {
    Lines lines(text);
    if (lines.rows.empty()) throw SyntaxError(1, 1, "expected 'machine'");
    struct Draft {
        MealyMachine m;
        std::map<std::string, int> ids;
        bool has_init = false;
        int line;
    };
    std::vector<Draft> drafts;
    auto vertex = [&](const Row& r, std::size_t i) {
        auto v = a.find(r.name(i));
        if (!v) r.fail(i, "unknown vertex '" + r.tok[i].text + "'");
        return *v;
    };
    for (const auto& [no, tok] : lines.rows) {
        Row r{no, tok};
        const std::string& kw = tok[0].text;
        if (drafts.empty() && kw != "machine") r.fail(0, "expected 'machine'");
        if (kw == "machine") {
            r.arity(2, 2);
            auto p = r.number(1);
            if (p < 1 || p > static_cast<unsigned long long>(a.num_players)) r.fail(1, "player out of range");
            for (const auto& d : drafts)
                if (d.m.player == static_cast<int>(p)) r.fail(1, "duplicate machine for player " + std::to_string(p));
            Draft d;
            d.m.player = static_cast<int>(p);
            d.line = no;
            drafts.push_back(std::move(d));
            continue;
        }
        Draft& d = drafts.back();
        auto state = [&](std::size_t i) {
            auto it = d.ids.find(r.name(i));
            if (it == d.ids.end()) r.fail(i, "unknown state '" + tok[i].text + "'");
            return it->second;
        };
        if (kw == "state") {
            r.arity(2, 2);
            const std::string& nm = r.name(1);
            if (d.ids.count(nm)) r.fail(1, "duplicate state '" + nm + "'");
            d.ids[nm] = d.m.num_states();
            d.m.state_names.push_back(nm);
            d.m.up.emplace_back(a.size(), -1);
            d.m.nxt.emplace_back(a.size(), -1);
        } else if (kw == "initial") {
            r.arity(2, 2);
            if (d.has_init) r.fail(0, "duplicate 'initial'");
            d.m.init = state(1);
            d.has_init = true;
        } else if (kw == "update") {
            r.arity(4, 4);
            int s = state(1);
            Vertex v = vertex(r, 2);
            if (d.m.up[s][v] >= 0) r.fail(2, "duplicate update");
            d.m.up[s][v] = state(3);
        } else if (kw == "move") {
            r.arity(4, 4);
            int s = state(1);
            Vertex v = vertex(r, 2), u = vertex(r, 3);
            if (a.owner[v] != d.m.player) r.fail(2, "move at a vertex the player does not own");
            if (!a.has_edge(v, u)) r.fail(3, "move is not an edge");
            if (d.m.nxt[s][v] >= 0) r.fail(2, "duplicate move");
            d.m.nxt[s][v] = u;
        } else {
            r.fail(0, "unknown keyword '" + kw + "'");
        }
    }
    StrategyProfile p;
    p.machines.resize(a.num_players);
    std::vector<char> have(a.num_players, 0);
    for (auto& d : drafts) {
        if (!d.has_init) throw SyntaxError(d.line, 1, "machine has no 'initial' state");
        validate_machine(a, d.m);
        have[d.m.player - 1] = 1;
        p.machines[d.m.player - 1] = std::move(d.m);
    }
    for (int i = 0; i < a.num_players; ++i)
        if (!have[i]) throw SyntaxError(lines.last_line, 1, "no machine for player " + std::to_string(i + 1));
    return p;
}

StrategyProfile load_profile(const std::string& path, const Arena& a) { return parse_profile(read_all(path), a); }

std::string serialize_machine(const Arena& a, const MealyMachine& m) {
    std::ostringstream out;
    out << "machine " << m.player << "\n";
    for (const auto& s : m.state_names) out << "state " << s << "\n";
    out << "initial " << m.state_names[m.init] << "\n";
    for (int s = 0; s < m.num_states(); ++s)
        for (Vertex v = 0; v < a.size(); ++v)
            out << "update " << m.state_names[s] << " " << a.name(v) << " " << m.state_names[m.up[s][v]] << "\n";
    for (int s = 0; s < m.num_states(); ++s)
        for (Vertex v = 0; v < a.size(); ++v)
            if (a.owner[v] == m.player)
                out << "move " << m.state_names[s] << " " << a.name(v) << " " << a.name(m.nxt[s][v]) << "\n";
    return out.str();
}

std::string serialize_profile(const Arena& a, const StrategyProfile& p) {
    std::string out;
    for (const auto& m : p.machines) out += serialize_machine(a, m);
    return out;
}

Lasso parse_lasso(const std::string& s, const Arena& a) {
    auto bar = s.find('|');
    if (bar == std::string::npos || s.find('|', bar + 1) != std::string::npos)
        throw std::invalid_argument("lasso must look like 'prefix|cycle'");
    auto split = [&](const std::string& part) {
        History h;
        std::stringstream ss(part);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item.erase(0, item.find_first_not_of(" \t"));
            item.erase(item.find_last_not_of(" \t") + 1);
            if (item.empty()) continue;
            auto v = a.find(item);
            if (!v) throw std::invalid_argument("unknown vertex '" + item + "' in lasso");
            h.push_back(*v);
        }
        return h;
    };
    Lasso l{split(s.substr(0, bar)), split(s.substr(bar + 1))};
    if (l.cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
    return l;
}

std::string history_string(const Arena& a, const History& h) {
    std::string out;
    for (std::size_t i = 0; i < h.size(); ++i) out += (i ? "," : "") + a.name(h[i]);
    return out;
}

std::string lasso_string(const Arena& a, const Lasso& l) {
    return history_string(a, l.prefix) + "|" + history_string(a, l.cycle);
}

std::string arena_dot(const Game& g) {
    const Arena& a = g.arena;
    std::ostringstream out;
    out << "digraph arena {\n";
    for (Vertex v = 0; v < a.size(); ++v) {
        std::string label = a.name(v) + "\\nP" + std::to_string(a.owner[v]);
        std::string t;
        for (int p = 1; p <= a.num_players; ++p)
            if (a.is_target(p, v)) t += (t.empty() ? "" : ",") + std::to_string(p);
        if (!t.empty()) label += "\\nT" + t;
        out << "  n" << v << " [label=" << quote(label) << (g.init && *g.init == v ? ", peripheries=2" : "")
            << "];\n";
    }
    for (Vertex u = 0; u < a.size(); ++u)
        for (std::size_t i = 0; i < a.succ[u].size(); ++i) {
            out << "  n" << u << " -> n" << a.succ[u][i];
            if (a.weight[u][i] != 0) out << " [label=" << quote(std::to_string(a.weight[u][i])) << "]";
            out << ";\n";
        }
    out << "}\n";
    return out.str();
}

std::string machine_dot(const Arena& a, const MealyMachine& m) {
    std::ostringstream out;
    out << "digraph machine_P" << m.player << " {\n";
    for (int s = 0; s < m.num_states(); ++s) {
        std::string label = m.state_names[s];
        for (Vertex v = 0; v < a.size(); ++v)
            if (a.owner[v] == m.player && m.nxt[s][v] >= 0) label += "\\n" + a.name(v) + "->" + a.name(m.nxt[s][v]);
        out << "  s" << s << " [label=" << quote(label) << (s == m.init ? ", peripheries=2" : "") << "];\n";
    }
    for (int s = 0; s < m.num_states(); ++s) {
        std::map<int, std::string> by_target;
        for (Vertex v = 0; v < a.size(); ++v) {
            auto& l = by_target[m.up[s][v]];
            l += (l.empty() ? "" : ",") + a.name(v);
        }
        for (const auto& [t, l] : by_target) out << "  s" << s << " -> s" << t << " [label=" << quote(l) << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace nashsynth
