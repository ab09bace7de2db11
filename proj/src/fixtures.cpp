#include "nashsynth/fixtures.hpp"

#include <sstream>
#include <stdexcept>

#include "nashsynth/io.hpp"

namespace nashsynth {

namespace {

const char* kFig1a = R"(# two-player shortest path
players 2
vertex v0 1
vertex t12 1
vertex v1 2
vertex v2 1
vertex t1 1
edge v0 t12 3
edge v0 v1 1
edge t12 v1 1
edge v1 v2 1
edge v1 t1 1
edge v2 v2 1
edge t1 v1 1
objective 1 spath t12 t1
objective 2 spath t12
init v0
)";

const char* kFig1b = R"(# four-player reachability
players 4
vertex v0 1
vertex t2 2
vertex v1 3
vertex v2 4
vertex t1 1
vertex v3 1
vertex t3 3
vertex t4 4
edge v0 t2
edge v0 v1
edge t2 t2
edge v1 v0
edge v1 v2
edge v1 v3
edge v2 v1
edge v2 t1
edge v2 v3
edge t1 v2
edge v3 t3
edge v3 t4
edge t3 t3
edge t4 t4
objective 1 reach t1
objective 2 reach t2
objective 3 reach t3
objective 4 reach t4
init v0
)";

const char* kFig3a = R"(# four-player reachability, split exits
players 4
vertex v0 1
vertex t2 2
vertex v1 3
vertex v2 4
vertex t1 1
vertex v3 4
vertex v4 3
vertex v5 1
vertex t3 3
vertex t4 4
edge v0 t2
edge v0 v1
edge t2 t2
edge v1 v0
edge v1 v2
edge v1 v3
edge v2 v1
edge v2 t1
edge v2 v4
edge t1 v2
edge v3 v5
edge v4 v5
edge v5 t3
edge v5 t4
edge t3 t3
edge t4 t4
objective 1 reach t1
objective 2 reach t2
objective 3 reach t3
objective 4 reach t4
init v0
)";

const char* kFig4a = R"(# three-player shortest path
players 3
vertex v0 1
vertex v1 1
vertex v2 2
vertex v3 3
vertex t 2
vertex v4 1
vertex t12 1
edge v0 v1 3
edge v0 v2 1
edge v1 v3 1
edge v2 v3 1
edge v2 t12 1
edge v3 v0 1
edge v3 t 1
edge v3 v4 1
edge t t 1
edge v4 v4 1
edge t12 t12 1
objective 1 spath t t12
objective 2 spath t t12
objective 3 spath t
init v0
)";

const char* kSafety6 = R"(# two-player safety
players 2
vertex v0 1
vertex v1 1
vertex v2 2
vertex v3 1
vertex v4 1
vertex v5 1
edge v0 v1
edge v0 v2
edge v1 v2
edge v2 v1
edge v2 v3
edge v3 v4
edge v3 v5
edge v4 v4
edge v5 v5
objective 1 safe v1 v4
objective 2 safe v5
init v0
)";

const char* kFig5c = R"(# safety with a committed punisher
players 2
vertex v0 1
vertex v1 1
vertex v2 1
vertex v3 2
vertex v4 2
edge v0 v1
edge v0 v2
edge v1 v3
edge v2 v3
edge v3 v3
edge v3 v4
edge v4 v4
objective 1 safe v1 v4
objective 2 safe v2
init v0
)";

const char* kFig5aBuchi = R"(# two-player buchi
players 2
vertex v0 2
vertex v1 1
vertex v2 2
vertex v3 2
edge v0 v1
edge v0 v3
edge v1 v0
edge v1 v2
edge v2 v2
edge v3 v3
objective 1 buchi v0 v1
objective 2 buchi v2
init v0
)";

const char* kFig5aCobuchi = R"(# two-player co-buchi on the buchi arena
players 2
vertex v0 2
vertex v1 1
vertex v2 2
vertex v3 2
edge v0 v1
edge v0 v3
edge v1 v0
edge v1 v2
edge v2 v2
edge v3 v3
objective 1 cobuchi v2 v3
objective 2 cobuchi v0 v1 v3
init v0
)";

const char* kFig5b = R"(# two-player co-buchi
players 2
vertex v0 2
vertex v1 1
vertex v2 1
vertex v3 1
vertex v4 1
edge v0 v1
edge v0 v2
edge v1 v3
edge v2 v3
edge v3 v0
edge v3 v4
edge v4 v4
objective 1 cobuchi v2 v4
objective 2 cobuchi v1 v4
init v0
)";

const char* kLoop = R"(players 1
vertex v 1
edge v v
objective 1 spath v
init v
)";

}  // namespace

std::string truncated_ladder_text(int n) {
    if (n < 1) throw std::invalid_argument("ladder length must be positive");
    std::ostringstream out;
    out << "# truncated ladder, length " << n << "\nplayers 2\nvertex vinf 2\nvertex t 1\n";
    for (int a = 0; a <= n; ++a) out << "vertex v" << a << " 1\n";
    for (int a = 1; a <= n; ++a) out << "edge vinf v" << a << " 1\n";
    out << "edge t t 1\n";
    out << "edge v0 vinf 1\nedge v0 v0 1\n";
    out << "edge v1 vinf 1\nedge v1 v0 1\nedge v1 t 1\n";
    for (int a = 2; a <= n; ++a) out << "edge v" << a << " vinf 1\nedge v" << a << " v" << a - 1 << " 1\n";
    out << "objective 1 spath t\nobjective 2 spath\ninit v" << n << "\n";
    return out.str();
}

std::string buchi_family_text(int p) {
    if (p < 1) throw std::invalid_argument("family parameter must be positive");
    std::ostringstream out;
    out << "# buchi memory family, p = " << p << "\nplayers 2\n";
    for (int q = 1; q <= p; ++q) out << "vertex v" << q << " 2\nvertex w" << q << " 1\n";
    out << "vertex v" << p + 1 << " 2\nvertex v" << p + 2 << " 2\n";
    for (int q = 1; q <= p; ++q) {
        out << "edge v" << q << " w" << q << "\nedge v" << q << " v" << p + 2 << "\n";
        for (int r = 1; r <= q + 1; ++r) out << "edge w" << q << " v" << r << "\n";
    }
    out << "edge v" << p + 1 << " v" << p + 1 << "\nedge v" << p + 2 << " v" << p + 2 << "\n";
    out << "objective 1 buchi";
    for (int q = 1; q <= p; ++q) out << " v" << q << " w" << q;
    out << "\nobjective 2 buchi v" << p + 1 << "\ninit v1\n";
    return out.str();
}

MealyMachine buchi_family_machine(const Arena& a, int p) {
    auto id = [&](const std::string& s) { return *a.find(s); };
    MealyMachine m;
    m.player = 2;
    for (int q = 1; q <= p + 1; ++q) {
        m.state_names.push_back(std::to_string(q));
        m.up.emplace_back(a.size(), q - 1);
        m.nxt.emplace_back(a.size(), -1);
    }
    const Vertex top = id("v" + std::to_string(p + 1)), sink = id("v" + std::to_string(p + 2));
    for (int q = 1; q <= p + 1; ++q) {
        int s = q - 1;
        if (q <= p) m.up[s][id("v" + std::to_string(q))] = q;
        for (Vertex v = 0; v < a.size(); ++v) {
            if (a.owner[v] != 2) continue;
            if (v == top || v == sink) m.nxt[s][v] = v;
            else m.nxt[s][v] = sink;
        }
        if (q <= p) m.nxt[s][id("v" + std::to_string(q))] = id("w" + std::to_string(q));
    }
    validate_machine(a, m);
    return m;
}

MealyMachine buchi_family_p1(const Arena& a, int p) {
    std::vector<Vertex> choice(a.size(), -1);
    for (int q = 1; q <= p; ++q) choice[*a.find("w" + std::to_string(q))] = *a.find("v" + std::to_string(q + 1));
    return memoryless_machine(a, 1, choice);
}

const std::vector<Fixture>& bundled_fixtures() {
    static const std::vector<Fixture> all = {
        {"fig1a", kFig1a},
        {"fig1b", kFig1b},
        {"fig3a", kFig3a},
        {"fig4a", kFig4a},
        {"safety6", kSafety6},
        {"fig5c", kFig5c},
        {"fig5a_buchi", kFig5aBuchi},
        {"fig5a_cobuchi", kFig5aCobuchi},
        {"fig5b", kFig5b},
        {"loop", kLoop},
        {"ladder3", truncated_ladder_text(3)},
        {"ladder5", truncated_ladder_text(5)},
        {"buchi_family1", buchi_family_text(1)},
        {"buchi_family3", buchi_family_text(3)},
    };
    return all;
}

const std::string& fixture_text(const std::string& name) {
    for (const auto& f : bundled_fixtures())
        if (f.name == name) return f.text;
    throw std::out_of_range("unknown fixture '" + name + "'");
}

Game fixture_game(const std::string& name) { return parse_game(fixture_text(name)); }

}  // namespace nashsynth
