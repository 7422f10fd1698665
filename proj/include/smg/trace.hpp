#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>

#include "smg/finite_game.hpp"

namespace smg {

// Appends one JSON object per line. Keys are emitted sorted, so traces are
// byte-stable across runs.
class TraceWriter {
 public:
  explicit TraceWriter(std::ostream& out) : out_(&out) {}

  void record(const nlohmann::json& j);

  void game_header(const GameState& s);
  void move(int index, const Move& mv);
  // Status lines for every labeled leaf whose status changed since the last
  // emission for this writer.
  void statuses(const GameState& s);
  void verdict(const Verdict& v);

 private:
  std::ostream* out_;
  std::map<NodeId, LeafStatus::Kind> last_status_;
};

nlohmann::json move_to_json(const Move& mv, int index);
Move move_from_json(const nlohmann::json& j);

// Replays a trace file and checks it against the engine.
//   exit_code 0: consistent
//   exit_code 1: replay mismatch / rule violation (message names the class:
//                monotonicity, structure, or label)
//   exit_code 2: malformed input
struct VerifyResult {
  int exit_code = 0;
  std::string message;    // empty when consistent
  int record_index = -1;  // 0-based line of the offending record
};

VerifyResult verify_trace_file(const std::string& path);

}  // namespace smg
