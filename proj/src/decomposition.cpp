#include "smg/decomposition.hpp"

#include <stdexcept>

namespace smg {

std::vector<NodeId> complete_tree_nodes(int depth) {
  std::vector<NodeId> out;
  out.push_back(NodeId());
  for (int d = 1; d <= depth; ++d) {
    for (std::uint64_t i = 0; i < (std::uint64_t(1) << d); ++i) {
      std::string bits(d, '0');
      for (int b = 0; b < d; ++b)
        if (i & (std::uint64_t(1) << (d - 1 - b))) bits[b] = '1';
      out.push_back(NodeId(bits));
    }
  }
  return out;
}

bool FiniteMartingale::valid() const {
  if (at(NodeId()) != Rational(1)) return false;
  for (const auto& [node, value] : values) {
    if (node.depth() < static_cast<std::size_t>(depth)) {
      auto i0 = values.find(node.child(0));
      auto i1 = values.find(node.child(1));
      if (i0 == values.end() || i1 == values.end()) return false;
      if (value != avg(i0->second, i1->second)) return false;
    }
  }
  return true;
}

bool FiniteMartingale::strictly_positive() const {
  for (const auto& [node, value] : values)
    if (value.is_zero()) return false;
  return true;
}

FiniteMartingale make_positive(const FiniteMartingale& t, const Rational& c) {
  if (c.is_zero()) throw std::invalid_argument("make_positive: c must be > 0");
  FiniteMartingale out;
  out.depth = t.depth;
  Rational scale = Rational(1) + c;
  for (const auto& [node, value] : t.values) out.values[node] = (value + c) / scale;
  return out;
}

SplitResult split(const FiniteMartingale& t) {
  if (!t.strictly_positive()) throw std::invalid_argument("split: t must be strictly positive");
  SplitResult r;
  r.t0.depth = r.t1.depth = t.depth;
  r.t0.values[NodeId()] = Rational(1);
  r.t1.values[NodeId()] = Rational(1);
  for (const NodeId& node : complete_tree_nodes(t.depth)) {
    if (node.depth() == static_cast<std::size_t>(t.depth)) continue;
    Rational ratio0 = t.at(node.child(0)) / t.at(node);
    Rational ratio1 = t.at(node.child(1)) / t.at(node);
    bool odd_step = node.depth() % 2 == 0;  // the step producing the children
    for (int bit : {0, 1}) {
      NodeId c = node.child(bit);
      const Rational& ratio = bit ? ratio1 : ratio0;
      if (odd_step) {
        // t1 bets on odd steps, copying t's proportions; t0 stands pat.
        r.t1.values[c] = r.t1.at(node) * ratio;
        r.t0.values[c] = r.t0.at(node);
      } else {
        r.t0.values[c] = r.t0.at(node) * ratio;
        r.t1.values[c] = r.t1.at(node);
      }
    }
  }
  return r;
}

BoundednessReport boundedness_check(const FiniteMartingale& t, const FiniteMartingale& t0,
                                    const FiniteMartingale& t1, const NodeId& prefix) {
  BoundednessReport rep{Rational(0), Rational(0), Rational(0), false};
  std::size_t limit = std::min<std::size_t>(prefix.depth(), t.depth);
  for (std::size_t d = 0; d <= limit; ++d) {
    NodeId p = prefix.prefix(d);
    rep.max_t = std::max(rep.max_t, t.at(p));
    rep.max_t0 = std::max(rep.max_t0, t0.at(p));
    rep.max_t1 = std::max(rep.max_t1, t1.at(p));
  }
  rep.product_bound_holds = rep.max_t <= rep.max_t0 * rep.max_t1;
  return rep;
}

}  // namespace smg
