#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "smg/finite_game.hpp"

namespace smg {

// n-th bit of the no-shortcut leaf pattern (1-indexed): the parity of the
// 2-adic valuation of n. The first 16 values are 0100010101000100.
int no_shortcut_sequence(std::uint64_t n);

struct AdversaryConfig {
  enum class Kind { Passive, CaseAScripted, CaseBScripted, Random, Pattern };
  Kind kind = Kind::Passive;

  int target_index = 1;        // CaseAScripted: which A_i
  Target role = Target::T1;    // CaseAScripted: which supermartingale
  Rational delta = Rational(1, 2);  // raise margin; CaseBScripted admits 0 (diagnostic)
  std::uint64_t seed = 0;      // Random
  int budget = 50;             // Random / Pattern: max move count

  static std::optional<AdversaryConfig::Kind> kind_from_name(const std::string& s);
  static const char* kind_name(Kind k);
};

// A deterministic adversary driver bound to one finite game. next() yields a
// fully validated move batch (built with minimal propagation) or nullopt once
// the script is complete / the budget is exhausted.
class Adversary {
 public:
  Adversary(AdversaryConfig cfg, int h);

  const AdversaryConfig& config() const { return cfg_; }
  bool halted() const { return halted_; }
  int moves_made() const { return moves_made_; }

  std::optional<std::vector<Assignment>> next(const GameState& s);

 private:
  std::optional<std::vector<Assignment>> next_case_a(const GameState& s);
  std::optional<std::vector<Assignment>> next_case_b(const GameState& s);
  std::optional<std::vector<Assignment>> next_random(const GameState& s);
  std::optional<std::vector<Assignment>> next_pattern(const GameState& s);

  // Raises `target`'s valuation to `value` at each node, with minimal
  // propagation; returns nullopt when no valid batch exists.
  static std::optional<std::vector<Assignment>> raise_batch(const GameState& s, Target target,
                                                            const std::vector<ValueAssign>& raises);

  AdversaryConfig cfg_;
  int h_;
  bool halted_ = false;
  int moves_made_ = 0;
  int script_step_ = 0;  // CaseBScripted: next odd j is 3 + 2*script_step_; Pattern: leaf index
  std::mt19937_64 rng_;
};

}  // namespace smg
