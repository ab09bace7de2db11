#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nashsynth {

using Vertex = int;
using Cost = std::uint64_t;
using History = std::vector<Vertex>;
using Weights = std::vector<std::vector<Cost>>;  // parallel to Arena::succ
using Region = std::vector<char>;

inline constexpr Cost kInf = std::numeric_limits<Cost>::max();
// qualitative objectives are encoded as costs: lower is better
inline constexpr Cost kWin = 0;
inline constexpr Cost kLose = 1;

enum class Objective { Reach, Safe, Buchi, CoBuchi, SPath };

const char* objective_name(Objective o);
std::optional<Objective> objective_from_name(const std::string& s);

class ArenaError : public std::runtime_error {
public:
    enum class Kind { DeadlockVertex, OwnerOutOfRange, DanglingEdge, DuplicateEdge, BadTarget, BadShape };
    ArenaError(Kind k, int vertex, const std::string& msg)
        : std::runtime_error(msg), kind(k), vertex(vertex) {}
    Kind kind;
    int vertex;
};

struct Arena {
    int num_players = 1;
    std::vector<int> owner;                  // players are 1..num_players
    std::vector<std::vector<Vertex>> succ;
    Weights weight;
    std::vector<Region> target;              // target[i-1][v]
    std::vector<std::string> names;

    int size() const { return static_cast<int>(owner.size()); }
    int edge_index(Vertex u, Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const { return edge_index(u, v) >= 0; }
    Cost w(Vertex u, Vertex v) const;
    bool is_target(int player, Vertex v) const { return target[player - 1][v] != 0; }
    std::string name(Vertex v) const;
    std::optional<Vertex> find(const std::string& name) const;
};

Arena validate_arena(Arena raw);

struct Game {
    Arena arena;
    std::vector<Objective> objective;          // per player
    std::vector<std::optional<Weights>> player_weight;  // optional per-player override
    std::optional<Vertex> init;

    int n() const { return arena.num_players; }
    const Weights& weights(int player) const;
    bool shared_weights() const;
    // common objective kind, or nullopt when mixed
    std::optional<Objective> uniform_objective() const;
};

Game validate_game(Game g);

struct Lasso {
    History prefix;
    History cycle;

    int period_start() const { return static_cast<int>(prefix.size()); }
    int length() const { return static_cast<int>(prefix.size() + cycle.size()); }
    Vertex at(long long pos) const;
    History unrolled() const;  // prefix followed by one copy of the cycle
    bool operator==(const Lasso& o) const { return prefix == o.prefix && cycle == o.cycle; }
};

// primitive cycle, prefix as short as possible
Lasso shortest_form(Lasso l);
Lasso canonical(Lasso l);
bool same_play(const Lasso& a, const Lasso& b);
bool is_play(const Arena& a, const Lasso& l);
// the play is p c^w with every vertex of p c distinct
bool is_simple_lasso(const Lasso& l);
bool is_simple_history(const History& h);
std::vector<Vertex> vertices_of(const Lasso& l);
Lasso suffix(const Lasso& l, long long pos);

struct Decomposition {
    std::vector<History> segments;
    Lasso tail;
    bool tail_merged = false;  // tail counts as the last segment
    bool periodic = false;     // segments[0] is sg_0, the rest repeat forever
    std::vector<std::vector<Vertex>> segment_vertices() const;
};

Lasso reconstruct(const Decomposition& d);

struct MealyMachine {
    int player = 1;
    int init = 0;
    std::vector<std::string> state_names;
    std::vector<std::vector<int>> up;      // up[state][vertex]
    std::vector<std::vector<Vertex>> nxt;  // nxt[state][vertex], -1 off owned vertices

    int num_states() const { return static_cast<int>(state_names.size()); }
};

void validate_machine(const Arena& a, const MealyMachine& m);

struct StrategyProfile {
    std::vector<MealyMachine> machines;  // machines[i-1] belongs to player i
};

MealyMachine memoryless_machine(const Arena& a, int player, const std::vector<Vertex>& choice);

struct CostProfile {
    std::vector<Cost> cost;  // per player, kWin/kLose for qualitative kinds
};

Cost eval_cost(const Arena& a, const Lasso& l, Objective kind, int player, const Weights* w = nullptr);
Cost eval_cost(const Game& g, const Lasso& l, int player);
CostProfile eval_profile(const Game& g, const Lasso& l);
std::vector<int> satpl(const Game& g, const Lasso& l);
// first position at which T_player occurs, or -1
long long first_visit(const Arena& a, const Lasso& l, int player);
std::vector<long long> vispos(const Arena& a, const Lasso& l);
Cost history_weight(const Arena& a, const History& h, const Weights* w = nullptr);

std::pair<Lasso, CostProfile> outcome_of_profile(const Game& g, const StrategyProfile& p, Vertex v0);

std::string cost_string(Cost c);

}  // namespace nashsynth
