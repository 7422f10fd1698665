#pragma once

#include <map>
#include <vector>

#include "smg/rational.hpp"
#include "smg/tree.hpp"

namespace smg {

// A martingale (exact averaging, no money thrown away) on the complete tree of
// a given depth, root value 1.
struct FiniteMartingale {
  int depth = 0;
  std::map<NodeId, Rational> values;

  Rational at(const NodeId& x) const { return values.at(x); }
  // Checks root = 1 and exact averaging at every internal node.
  bool valid() const;
  bool strictly_positive() const;
};

// All nodes of depth <= d, in (depth, path) order.
std::vector<NodeId> complete_tree_nodes(int depth);

// (t + c) / (1 + c): strictly positive, still a martingale with root 1.
FiniteMartingale make_positive(const FiniteMartingale& t, const Rational& c);

struct SplitResult {
  FiniteMartingale t0;  // bets only on even steps
  FiniteMartingale t1;  // bets only on odd steps
};

// Splits a strictly positive martingale into an even-betting and an
// odd-betting martingale with t0(x) * t1(x) = t(x) at every node.
SplitResult split(const FiniteMartingale& t);

struct BoundednessReport {
  Rational max_t, max_t0, max_t1;
  bool product_bound_holds;  // max_t <= max_t0 * max_t1
};

// Maxima of t, t0, t1 over the prefixes of `prefix` (within depth).
BoundednessReport boundedness_check(const FiniteMartingale& t, const FiniteMartingale& t0,
                                    const FiniteMartingale& t1, const NodeId& prefix);

}  // namespace smg
