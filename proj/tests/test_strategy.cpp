#include <doctest.h>

#include "smg/adversary.hpp"
#include "smg/strategy.hpp"

using namespace smg;

namespace {
NodeId n(const char* s) { return NodeId(s); }
Rational r(long long p, long long q = 1) { return Rational(p, q); }

// exact mass the opening move puts at the root's children, by direct summation
Rational opening_leaf_mass(const GameState& s) {
  Rational total(0);
  for (const auto& leaf : s.all_leaves())
    total += s.t().get(leaf) / pow(r(2), static_cast<unsigned>(s.h()));
  return total;
}
}  // namespace

TEST_CASE("selected path coordinates") {
  SelectedPath sel = strategy::all_left(7);
  CHECK(sel.A(3) == n("000"));
  CHECK(sel.B(3) == n("001"));
  CHECK(sel.B(1) == n("1"));
  CHECK(sel.A(7).depth() == 7);
}

TEST_CASE("opening move h=3") {
  GameState s = strategy::first_move(GameState::fresh(3));
  CHECK(s.t().get(n("001")) == r(8, 7));
  CHECK(s.t().get(n("00")) == r(4, 7));
  CHECK(s.t().get(n("0")) == r(2, 7));
  CHECK(s.t().get(n("")) == r(1));
  CHECK(s.labels().at(n("001")) == 1);
  CHECK(opening_leaf_mass(s) == r(1, 7));
  CHECK(s.t().validate().empty());
}

TEST_CASE("opening move leaf counts and masses") {
  // h=7: 16 + 4 + 1 leaves above B_3, B_5, B_7 get c = 128/127
  GameState s7 = strategy::first_move(GameState::fresh(7));
  int funded = 0;
  for (const auto& leaf : s7.all_leaves())
    if (s7.t().get(leaf) == r(128, 127)) ++funded;
  CHECK(funded == 21);
  CHECK(opening_leaf_mass(s7) == r(21) * r(128, 127) / r(128));

  GameState s5 = strategy::first_move(GameState::fresh(5));
  int funded5 = 0;
  for (const auto& leaf : s5.all_leaves())
    if (s5.t().get(leaf) == r(32, 31)) ++funded5;
  CHECK(funded5 == 5);
  CHECK(s5.labels().size() == 5);
}

TEST_CASE("case detection") {
  SelectedPath sel = strategy::all_left(3);
  GameState s = strategy::first_move(GameState::fresh(3));
  CHECK(strategy::detect_case(s, sel).kind == CaseResult::Kind::None);

  // raise t1 past 1 at A_2
  GameState a = s.submit(Mover::A, {{Target::T1, n("00"), r(9, 8)},
                                    {Target::T1, n("01"), r(9, 8)},
                                    {Target::T1, n("0"), r(9, 8)}});
  CaseResult ca = strategy::detect_case(a, sel);
  CHECK(ca.kind == CaseResult::Kind::CaseA);
  CHECK(ca.a_index == 1);  // "0" itself already exceeds 1

  // discredit the only labeled leaf without touching the A-path above 1
  GameState b = s.submit(Mover::A, {{Target::T1, n("001"), r(3, 2)},
                                    {Target::T1, n("00"), r(3, 4)},
                                    {Target::T1, n("0"), r(3, 4)},
                                    {Target::T1, n("01"), r(3, 4)}});
  CHECK(strategy::detect_case(b, sel).kind == CaseResult::Kind::CaseB);
}

TEST_CASE("case A move: root average exactly 1") {
  SelectedPath sel = strategy::all_left(3);
  GameState s = strategy::first_move(GameState::fresh(3));
  s = s.submit(Mover::A, {{Target::T1, n("00"), r(9, 8)},
                          {Target::T1, n("01"), r(9, 8)},
                          {Target::T1, n("0"), r(9, 8)}});
  GameState a = strategy::case_a_move(s, sel);
  for (const auto& leaf : a.all_leaves()) {
    if (leaf == sel.A(3))
      CHECK(a.t().get(leaf) == r(0));
    else
      CHECK(a.t().get(leaf) == r(8, 7));
  }
  CHECK(a.t().get(n("0")) == r(6, 7));
  CHECK(a.t().get(n("1")) == r(8, 7));
  CHECK(avg(a.t().get(n("0")), a.t().get(n("1"))) == r(1));
  CHECK(opening_leaf_mass(a) == r(1));  // 7 of 8 leaves at 8/7: mass 7*(8/7)/8
  CHECK(a.t().validate(Measure::uniform(), true).empty());

  // some non-leftmost leaf keeps path max <= 1
  NodeId safe = min_nonincreasing_path(a.t0(), a.t1(), n(""), 3);
  CHECK(a.path_max(safe) <= r(1));
  CHECK(a.leaf_status(safe).kind == LeafStatus::Kind::Winning);
}

TEST_CASE("case A is monotone on top of the opening") {
  SelectedPath sel = strategy::all_left(3);
  GameState s = strategy::first_move(GameState::fresh(3));
  s = s.submit(Mover::A, {{Target::T1, n("00"), r(9, 8)},
                          {Target::T1, n("01"), r(9, 8)},
                          {Target::T1, n("0"), r(9, 8)}});
  CHECK_NOTHROW(strategy::case_a_move(s, sel));  // "001" already at c: no decrease
}

TEST_CASE("case B move h=3") {
  SelectedPath sel = strategy::all_left(3);
  GameState s = strategy::first_move(GameState::fresh(3));
  s = s.submit(Mover::A, {{Target::T1, n("001"), r(3, 2)},
                          {Target::T1, n("00"), r(3, 4)},
                          {Target::T1, n("0"), r(3, 4)},
                          {Target::T1, n("01"), r(3, 4)}});
  GameState b = strategy::case_b_move(s, sel);
  CHECK(b.t().get(n("1")) == r(3, 2));
  CHECK(b.t().get(n("100")) == r(3, 2));
  CHECK(b.labels().at(n("100")) == 2);
  CHECK(avg(b.t().get(n("0")), b.t().get(n("1"))) == r(25, 28));
  CHECK(b.t().validate().empty());
  // t0 untouched by this adversary: stays at 1 on B_1; t1 capped by 2 - bound
  CHECK(b.t0().get(n("1")) == r(1));
  CHECK(b.t1().get(n("1")) <= strategy::path_lower_bounds(3, 0).b1_cap);
  CHECK(b.leaf_status(n("100")).kind == LeafStatus::Kind::Winning);
}

TEST_CASE("case B root mass h=7") {
  SelectedPath sel = strategy::all_left(7);
  GameState s = strategy::first_move(GameState::fresh(7));
  Adversary adv(AdversaryConfig{AdversaryConfig::Kind::CaseBScripted, 1, Target::T1, r(1, 8), 0, 50},
                7);
  for (;;) {
    auto batch = adv.next(s);
    if (!batch) break;
    s = s.submit(Mover::A, *batch);
  }
  REQUIRE(strategy::detect_case(s, sel).kind == CaseResult::Kind::CaseB);
  GameState b = strategy::case_b_move(s, sel);
  // root average: 21*(128/127)/128 + (3/2)/2 = 21/127 + 3/4 < 1
  CHECK(opening_leaf_mass(b) == r(21, 127) + r(3, 4));
  CHECK(opening_leaf_mass(b) < r(1));
}

TEST_CASE("lower bound chain") {
  strategy::LowerBounds b7 = strategy::path_lower_bounds(7, 0);
  REQUIRE(b7.along.size() == 6);
  CHECK(b7.along[0] == r(1, 2));  // A_6
  CHECK(b7.along[1] == r(1, 2));
  CHECK(b7.along[2] == r(3, 4));
  CHECK(b7.along[3] == r(3, 4));
  CHECK(b7.along[4] == r(7, 8));
  CHECK(b7.along[5] == r(7, 8));  // A_1
  CHECK(b7.b1_cap == r(9, 8));
  CHECK(b7.root_bettor == Target::T1);

  CHECK(strategy::path_lower_bounds(3, 0).along.back() == r(1, 2));
  CHECK(strategy::path_lower_bounds(3, 0).b1_cap == r(3, 2));
  CHECK(strategy::path_lower_bounds(5, 0).b1_cap == r(5, 4));
  // cap identity: 2 - bound(A_1) = 1 + 1/2^((h-1)/2)
  for (int h : {3, 5, 7, 9}) {
    auto lb = strategy::path_lower_bounds(h, 0);
    CHECK(lb.b1_cap == thresholds(h).m2);
    CHECK(lb.b1_cap == r(2) - lb.along.back());
  }
  // parity only swaps which valuation is the root bettor
  auto odd = strategy::path_lower_bounds(7, 1);
  CHECK(odd.root_bettor == Target::T0);
  CHECK(odd.along == b7.along);
}

TEST_CASE("react as a driver") {
  GameState s = strategy::react(GameState::fresh(3));
  CHECK(s.phase() == Phase::Stage1);
  GameState again = strategy::react(s);  // nothing pending
  CHECK(again.move_log().size() == s.move_log().size());
}
