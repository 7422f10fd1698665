#pragma once

#include <stdexcept>
#include <string>

#include "smg/tree.hpp"

namespace smg {

enum class ViolationKind { Monotonicity, Structure, Label };

inline const char* violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::Monotonicity:
      return "monotonicity";
    case ViolationKind::Structure:
      return "structure";
    case ViolationKind::Label:
      return "label";
  }
  return "?";
}

// Thrown by mutating operations when a move breaks the rules. The kind lets
// callers (and the trace verifier) classify the rejection.
class GameError : public std::runtime_error {
 public:
  GameError(ViolationKind kind, NodeId node, const std::string& what)
      : std::runtime_error(std::string(violation_name(kind)) + " violation at '" + node.str() +
                           "': " + what),
        kind_(kind),
        node_(std::move(node)) {}

  ViolationKind kind() const { return kind_; }
  const NodeId& node() const { return node_; }

 private:
  ViolationKind kind_;
  NodeId node_;
};

}  // namespace smg
