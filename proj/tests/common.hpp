#pragma once

#include <string>

#include "nashsynth/arena.hpp"
#include "nashsynth/fixtures.hpp"
#include "nashsynth/io.hpp"

namespace testing_util {

using namespace nashsynth;

inline Lasso L(const Game& g, const std::string& s) { return parse_lasso(s, g.arena); }
inline Vertex V(const Game& g, const std::string& name) { return *g.arena.find(name); }
inline std::string S(const Game& g, const Lasso& l) { return lasso_string(g.arena, l); }

inline std::string costs(const Game& g, const Lasso& l) {
    auto c = eval_profile(g, l);
    std::string s;
    for (std::size_t i = 0; i < c.cost.size(); ++i) s += (i ? "," : "") + cost_string(c.cost[i]);
    return s;
}

inline Region region(const Game& g, std::initializer_list<const char*> names) {
    Region r(g.arena.size(), 0);
    for (const char* n : names) r[V(g, n)] = 1;
    return r;
}

}  // namespace testing_util
