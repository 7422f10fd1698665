#include <doctest.h>

#include "smg/finite_game.hpp"
#include "smg/strategy.hpp"

using namespace smg;

namespace {
NodeId n(const char* s) { return NodeId(s); }
Rational r(long long p, long long q = 1) { return Rational(p, q); }
}  // namespace

TEST_CASE("threshold table") {
  Thresholds t3 = thresholds(3);
  CHECK(t3.M1 == r(8, 7));
  CHECK(t3.m1 == r(1));
  CHECK(t3.M2 == r(3, 2));
  CHECK(t3.m2 == r(3, 2));

  Thresholds t5 = thresholds(5);
  CHECK(t5.M1 == r(32, 31));
  CHECK(t5.m2 == r(5, 4));

  Thresholds t7 = thresholds(7);
  CHECK(t7.M1 == r(128, 127));
  CHECK(t7.m2 == r(9, 8));

  CHECK(thresholds(9).m2 == r(1) + r(1, 16));
  CHECK(leaf_capital(7) == t7.M1);
  CHECK_THROWS(thresholds(4));
  CHECK_THROWS(thresholds(1));
}

TEST_CASE("move discipline") {
  GameState s = GameState::fresh(3);
  // A raises t1 above "001" with minimal propagation: accepted
  std::vector<Assignment> good = {{Target::T1, n("001"), r(3, 2)},
                                  {Target::T1, n("00"), r(3, 4)},
                                  {Target::T1, n("0"), r(3, 4)},
                                  {Target::T1, n("01"), r(3, 4)}};
  CHECK(!s.check(Mover::A, good));
  GameState s2 = s.submit(Mover::A, good);
  CHECK(s2.t1().get(n("001")) == r(3, 2));

  // t0 is non-betting at the root: raising "0" alone is rejected
  CHECK(s.check(Mover::A, {{Target::T0, n("0"), r(1, 2)}}).has_value());

  // movers may only touch their own valuations
  CHECK(s.check(Mover::A, {{Target::T, n("0"), r(1, 2)}}).has_value());
  CHECK(s.check(Mover::M, {{Target::T1, n("001"), r(3, 2)}}).has_value());

  // labels: M only, leaves only, write-once
  GameState labeled = s.submit(Mover::M, {}, {{n("001"), 1}});
  CHECK(labeled.labels().at(n("001")) == 1);
  CHECK(labeled.check(Mover::M, {}, {{n("001"), 1}}).has_value());
  CHECK(labeled.check(Mover::M, {}, {{n("001"), 2}}).has_value());
  CHECK(s.check(Mover::A, {}, {{n("001"), 1}}).has_value());
  CHECK(s.check(Mover::M, {}, {{n("00"), 1}}).has_value());
  CHECK(s.check(Mover::M, {}, {{n("001"), 3}}).has_value());
}

TEST_CASE("bettor_at depends on root parity") {
  GameState even = GameState::fresh(3, 0);
  CHECK(even.bettor_at(0) == Target::T1);
  CHECK(even.bettor_at(1) == Target::T0);
  GameState odd = GameState::fresh(3, 1);
  CHECK(odd.bettor_at(0) == Target::T0);
  CHECK(odd.bettor_at(1) == Target::T1);
}

TEST_CASE("leaf status after the opening move") {
  GameState s = strategy::react(GameState::fresh(3));
  CHECK(s.leaf_status(n("001")).kind == LeafStatus::Kind::Winning);
  CHECK(s.leaf_status(n("001")).label == 1);
  CHECK(s.leaf_status(n("000")).kind == LeafStatus::Kind::Unlabeled);
  CHECK(*s.current_winner() == n("001"));

  // A discredits it; absorbing even if values grow later
  GameState s2 = s.submit(Mover::A, {{Target::T1, n("001"), r(3, 2)},
                                     {Target::T1, n("00"), r(3, 4)},
                                     {Target::T1, n("0"), r(3, 4)},
                                     {Target::T1, n("01"), r(3, 4)}});
  CHECK(s2.leaf_status(n("001")).kind == LeafStatus::Kind::Discredited);
  CHECK(s2.path_max(n("001")) == r(3, 2));
}

TEST_CASE("pending status") {
  GameState s = GameState::fresh(3);
  s = s.submit(Mover::M, {}, {{n("001"), 1}});
  // labeled but t below M1
  CHECK(s.leaf_status(n("001")).kind == LeafStatus::Kind::Pending);
}

TEST_CASE("fresh game has no winner; verdicts") {
  GameState s = GameState::fresh(3);
  CHECK(!s.current_winner());
  CHECK(!s.referee_final().m_wins);

  GameState opened = strategy::react(s);
  Verdict v = opened.referee_final();
  CHECK(v.m_wins);
  CHECK(v.leaf == n("001"));
  CHECK(v.label == 1);
}

TEST_CASE("A wins when every labeled leaf is discredited and M never reacts") {
  GameState s = strategy::react(GameState::fresh(3));  // strategy disabled afterwards
  GameState s2 = s.submit(Mover::A, {{Target::T1, n("001"), r(3, 2)},
                                     {Target::T1, n("00"), r(3, 4)},
                                     {Target::T1, n("0"), r(3, 4)},
                                     {Target::T1, n("01"), r(3, 4)}});
  CHECK(!s2.referee_final().m_wins);
}

TEST_CASE("move log replays to the same state") {
  GameState s = strategy::react(GameState::fresh(3));
  s = s.submit(Mover::A, {{Target::T1, n("001"), r(3, 2)},
                          {Target::T1, n("00"), r(3, 4)},
                          {Target::T1, n("0"), r(3, 4)},
                          {Target::T1, n("01"), r(3, 4)}});
  s = strategy::react(s);

  GameState replay = GameState::fresh(3);
  for (const auto& mv : s.move_log())
    replay = replay.submit(mv.mover, mv.assignments, mv.labels, mv.phase);
  CHECK(replay.t().serialize().size() == s.t().serialize().size());
  for (const auto& va : s.t().serialize()) CHECK(replay.t().get(va.node) == va.value);
  for (const auto& va : s.t0().serialize()) CHECK(replay.t0().get(va.node) == va.value);
  for (const auto& va : s.t1().serialize()) CHECK(replay.t1().get(va.node) == va.value);
  CHECK(replay.labels() == s.labels());
}

TEST_CASE("all valuations stay valid through play") {
  GameState s = strategy::react(GameState::fresh(5));
  CHECK(s.t().validate().empty());
  CHECK(s.t0().validate().empty());
  CHECK(s.t1().validate().empty());
  CHECK(s.all_leaves().size() == 32);
}
