#pragma once

#include <string>
#include <vector>

#include "nashsynth/arena.hpp"

namespace nashsynth {

struct Fixture {
    std::string name;
    std::string text;  // GameSpecFile
};

const std::vector<Fixture>& bundled_fixtures();
// throws std::out_of_range for unknown names
const std::string& fixture_text(const std::string& name);
Game fixture_game(const std::string& name);

// chain v_0..v_n with a hub v_inf owned by player 2; player 1 reaches t from v_1
std::string truncated_ladder_text(int n);
// Büchi lower-bound family with parameter p >= 1
std::string buchi_family_text(int p);
// (p+1)-state machine of player 2 in buchi_family_text(p)
MealyMachine buchi_family_machine(const Arena& a, int p);
// player 1 moves w_q -> v_{q+1}
MealyMachine buchi_family_p1(const Arena& a, int p);

}  // namespace nashsynth
