#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace smg {

// Which player a valuation belongs to, in terms of where it may bet.
// Even bets only on even steps: its value is fixed across the children of
// every even-depth node, so it may change values only below odd depths.
// Odd is the mirror image; Full may bet everywhere.
enum class Role { Full, Even, Odd };

// True iff `role` may change values between depth `global_depth` and
// `global_depth + 1`, i.e. the node at `global_depth` is a betting node.
inline bool bets_at(Role role, std::size_t global_depth) {
  switch (role) {
    case Role::Full:
      return true;
    case Role::Even:
      return global_depth % 2 == 1;
    case Role::Odd:
      return global_depth % 2 == 0;
  }
  return false;
}

// A binary-tree node addressed by its root path ("" is the root).
class NodeId {
 public:
  NodeId() = default;
  explicit NodeId(std::string bits) : bits_(std::move(bits)) {
    for (char c : bits_)
      if (c != '0' && c != '1') throw std::invalid_argument("NodeId: path must be 0/1 bits");
  }

  std::size_t depth() const { return bits_.size(); }
  bool is_root() const { return bits_.empty(); }
  const std::string& str() const { return bits_; }

  NodeId child(int bit) const { return NodeId(bits_ + (bit ? '1' : '0')); }
  NodeId parent() const {
    if (is_root()) throw std::logic_error("NodeId: root has no parent");
    return NodeId(bits_.substr(0, bits_.size() - 1));
  }
  NodeId sibling() const {
    NodeId s = parent();
    return s.child(last_bit() ^ 1);
  }
  int last_bit() const {
    if (is_root()) throw std::logic_error("NodeId: root has no last bit");
    return bits_.back() == '1';
  }
  int bit_at(std::size_t i) const { return bits_.at(i) == '1'; }

  bool is_prefix_of(const NodeId& o) const {
    return o.bits_.size() >= bits_.size() && o.bits_.compare(0, bits_.size(), bits_) == 0;
  }
  NodeId concat(const NodeId& o) const { return NodeId(bits_ + o.bits_); }
  // Suffix below a given ancestor.
  NodeId relative_to(const NodeId& ancestor) const {
    if (!ancestor.is_prefix_of(*this))
      throw std::logic_error("NodeId: relative_to requires an ancestor");
    return NodeId(bits_.substr(ancestor.bits_.size()));
  }
  NodeId prefix(std::size_t d) const { return NodeId(bits_.substr(0, d)); }

  // Deterministic order: by (depth, lexicographic path). Among nodes of equal
  // depth this is left-to-right order.
  std::strong_ordering operator<=>(const NodeId& o) const {
    if (auto c = bits_.size() <=> o.bits_.size(); c != 0) return c;
    int c = bits_.compare(o.bits_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  bool operator==(const NodeId& o) const { return bits_ == o.bits_; }

 private:
  std::string bits_;
};

}  // namespace smg
