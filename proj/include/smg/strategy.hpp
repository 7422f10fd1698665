#pragma once

#include <optional>
#include <vector>

#include "smg/finite_game.hpp"

namespace smg {

// The strategy's spine: the all-left path A_0..A_h and the brothers B_1..B_h.
struct SelectedPath {
  int h;
  NodeId A(int i) const { return NodeId(std::string(i, '0')); }
  NodeId B(int j) const { return NodeId(std::string(j - 1, '0') + "1"); }
};

struct CaseResult {
  enum class Kind { None, CaseA, CaseB };
  Kind kind = Kind::None;
  int a_index = 0;  // the i of the triggering A_i for CaseA
};

// Mathematician's strategy for the finite-tree game: the opening placement and
// at most one reaction move (Case A or Case B).
namespace strategy {

SelectedPath all_left(int h);

// Opening: t = c on every leaf above B_3, B_5, ..., labeled 1; internal nodes
// carry the exact average of their leaf descendants; the root stays 1.
GameState first_move(const GameState& s);

CaseResult detect_case(const GameState& s, const SelectedPath& sel);

// Case A reaction: t = c on all leaves except A_h, all labeled 1; averages
// below make the root exactly 1.
GameState case_a_move(const GameState& s, const SelectedPath& sel);

// Case B reaction: t = 3/2 on all leaves above B_1, labeled 2.
GameState case_b_move(const GameState& s, const SelectedPath& sel);

// Guaranteed values of the root-betting adversary supermartingale along
// A_{h-1}..A_1 once it exceeds the floor 1 at every B_3, B_5, ..., plus the
// resulting cap for its value at B_1 (2 - bound(A_1)).
struct LowerBounds {
  std::vector<Rational> along;  // A_{h-1} down to A_1
  Rational b1_cap;
  Target root_bettor;
};
LowerBounds path_lower_bounds(int h, int root_parity);

// Runs the pending strategy reaction, if any: Init -> opening move;
// Stage1 -> case detection and at most one case move.
GameState react(const GameState& s);

}  // namespace strategy

}  // namespace smg
