#include <doctest.h>

#include <random>

#include "smg/decomposition.hpp"

using namespace smg;

namespace {
NodeId n(const char* s) { return NodeId(s); }
Rational r(long long p, long long q = 1) { return Rational(p, q); }

FiniteMartingale worked_example() {
  FiniteMartingale t;
  t.depth = 2;
  t.values[n("")] = r(1);
  t.values[n("0")] = r(3, 2);
  t.values[n("1")] = r(1, 2);
  t.values[n("00")] = r(2);
  t.values[n("01")] = r(1);
  t.values[n("10")] = r(1, 2);
  t.values[n("11")] = r(1, 2);
  return t;
}

FiniteMartingale random_martingale(int depth, std::mt19937_64& rng) {
  FiniteMartingale t;
  t.depth = depth;
  t.values[n("")] = r(1);
  for (int d = 0; d < depth; ++d) {
    for (const auto& node : complete_tree_nodes(d)) {
      if (static_cast<int>(node.depth()) != d) continue;
      Rational v = t.values.at(node);
      Rational left = v * r(int(rng() % 9), 4);
      if (left > v + v) left = v + v;
      t.values[node.child(0)] = left;
      t.values[node.child(1)] = v + v - left;
    }
  }
  return t;
}
}  // namespace

TEST_CASE("make_positive") {
  FiniteMartingale one;
  one.depth = 1;
  one.values[n("")] = r(1);
  one.values[n("0")] = r(1);
  one.values[n("1")] = r(1);
  FiniteMartingale p = make_positive(one, r(1));
  CHECK(p.at(n("0")) == r(1));

  FiniteMartingale t;
  t.depth = 1;
  t.values[n("")] = r(1);
  t.values[n("0")] = r(0);
  t.values[n("1")] = r(2);
  FiniteMartingale q = make_positive(t, r(1));
  CHECK(q.at(n("0")) == r(1, 2));
  CHECK(q.at(n("1")) == r(3, 2));
  CHECK(q.valid());
  CHECK(q.strictly_positive());
  for (const auto& [node, v] : q.values) CHECK(v >= r(1, 2));
}

TEST_CASE("split reproduces the worked example") {
  FiniteMartingale t = worked_example();
  REQUIRE(t.valid());
  REQUIRE(t.strictly_positive());
  SplitResult sp = split(t);
  CHECK(sp.t1.at(n("0")) == r(3, 2));
  CHECK(sp.t1.at(n("1")) == r(1, 2));
  CHECK(sp.t1.at(n("00")) == r(3, 2));
  CHECK(sp.t1.at(n("01")) == r(3, 2));
  CHECK(sp.t1.at(n("10")) == r(1, 2));
  CHECK(sp.t1.at(n("11")) == r(1, 2));
  CHECK(sp.t0.at(n("0")) == r(1));
  CHECK(sp.t0.at(n("1")) == r(1));
  CHECK(sp.t0.at(n("00")) == r(4, 3));
  CHECK(sp.t0.at(n("01")) == r(2, 3));
  CHECK(sp.t0.at(n("10")) == r(1));
  CHECK(sp.t0.at(n("11")) == r(1));
  CHECK(sp.t0.at(n("00")) * sp.t1.at(n("00")) == t.at(n("00")));
}

TEST_CASE("split of the constant is the constant") {
  FiniteMartingale t;
  t.depth = 3;
  for (const auto& node : complete_tree_nodes(3)) t.values[node] = r(1);
  SplitResult sp = split(t);
  for (const auto& node : complete_tree_nodes(3)) {
    CHECK(sp.t0.at(node) == r(1));
    CHECK(sp.t1.at(node) == r(1));
  }
}

TEST_CASE("split identities hold on random positives") {
  std::mt19937_64 rng(777);
  for (int iter = 0; iter < 100; ++iter) {
    int depth = 1 + int(rng() % 6);
    FiniteMartingale t = make_positive(random_martingale(depth, rng), r(1));
    REQUIRE(t.valid());
    SplitResult sp = split(t);
    CHECK(sp.t0.valid());
    CHECK(sp.t1.valid());
    for (const auto& [node, v] : t.values) {
      // exact node-wise product
      CHECK(sp.t0.at(node) * sp.t1.at(node) == v);
      // exact parity equalities
      if (static_cast<int>(node.depth()) < depth) {
        if (node.depth() % 2 == 0)
          CHECK(sp.t0.at(node.child(0)) == sp.t0.at(node.child(1)));
        else
          CHECK(sp.t1.at(node.child(0)) == sp.t1.at(node.child(1)));
      }
    }
  }
}

TEST_CASE("boundedness report") {
  FiniteMartingale t = worked_example();
  SplitResult sp = split(t);
  BoundednessReport rep = boundedness_check(t, sp.t0, sp.t1, n("00"));
  CHECK(rep.max_t == r(2));
  CHECK(rep.max_t0 == r(4, 3));
  CHECK(rep.max_t1 == r(3, 2));
  CHECK(rep.product_bound_holds);
  CHECK(rep.max_t == rep.max_t0 * rep.max_t1);

  FiniteMartingale c;
  c.depth = 2;
  for (const auto& node : complete_tree_nodes(2)) c.values[node] = r(1);
  SplitResult cs = split(c);
  BoundednessReport crep = boundedness_check(c, cs.t0, cs.t1, n("11"));
  CHECK(crep.max_t == r(1));
  CHECK(crep.max_t0 == r(1));
  CHECK(crep.max_t1 == r(1));
}

TEST_CASE("validity checks catch broken inputs") {
  FiniteMartingale t = worked_example();
  t.values[n("00")] = r(3);  // averaging broken
  CHECK(!t.valid());
  FiniteMartingale z = worked_example();
  z.values[n("10")] = r(0);
  z.values[n("11")] = r(1);
  CHECK(z.valid());
  CHECK(!z.strictly_positive());
}
