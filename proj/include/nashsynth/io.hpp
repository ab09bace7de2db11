#pragma once

#include <string>

#include "nashsynth/arena.hpp"

namespace nashsynth {

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(int line, int col, const std::string& msg)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line(line), col(col) {}
    int line;
    int col;
};

Game parse_game(const std::string& text);
Game load_game(const std::string& path);
std::string serialize_game(const Game& g);

StrategyProfile parse_profile(const std::string& text, const Arena& a);
StrategyProfile load_profile(const std::string& path, const Arena& a);
std::string serialize_machine(const Arena& a, const MealyMachine& m);
std::string serialize_profile(const Arena& a, const StrategyProfile& p);

// "a,b|c,d": prefix a b, cycle c d
Lasso parse_lasso(const std::string& s, const Arena& a);
std::string lasso_string(const Arena& a, const Lasso& l);
std::string history_string(const Arena& a, const History& h);

std::string arena_dot(const Game& g);
std::string machine_dot(const Arena& a, const MealyMachine& m);

std::string read_file(const std::string& path);

}  // namespace nashsynth
