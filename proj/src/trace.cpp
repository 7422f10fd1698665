#include "smg/trace.hpp"

#include <fstream>
#include <ostream>

namespace smg {

namespace {

using nlohmann::json;

const char* status_name(LeafStatus::Kind k) {
  switch (k) {
    case LeafStatus::Kind::Unlabeled:
      return "unlabeled";
    case LeafStatus::Kind::Winning:
      return "winning";
    case LeafStatus::Kind::Pending:
      return "pending";
    case LeafStatus::Kind::Discredited:
      return "discredited";
  }
  return "?";
}

std::string dump_sorted(const json& j) {
  // nlohmann's default object is already key-sorted.
  return j.dump();
}

}  // namespace

void TraceWriter::record(const json& j) { *out_ << dump_sorted(j) << '\n'; }

void TraceWriter::game_header(const GameState& s) {
  record(json{{"kind", "game"},
              {"h", s.h()},
              {"parity", s.root_parity()},
              {"a0_root", s.t0().get(NodeId()).str()},
              {"a1_root", s.t1().get(NodeId()).str()}});
}

json move_to_json(const Move& mv, int index) {
  json assigns = json::array();
  for (const auto& a : mv.assignments)
    assigns.push_back(
        json{{"target", target_name(a.target)}, {"node", a.node.str()}, {"value", a.value.str()}});
  json labels = json::array();
  for (const auto& l : mv.labels) labels.push_back(json{{"leaf", l.leaf.str()}, {"label", l.label}});
  return json{{"kind", "move"},
              {"index", index},
              {"mover", mv.mover == Mover::M ? "M" : "A"},
              {"phase", mv.phase},
              {"assignments", assigns},
              {"labels", labels}};
}

Move move_from_json(const json& j) {
  Move mv;
  const auto mover = j.at("mover").get<std::string>();
  if (mover != "M" && mover != "A") throw std::invalid_argument("bad mover: " + mover);
  mv.mover = mover == "M" ? Mover::M : Mover::A;
  mv.phase = j.value("phase", std::string());
  for (const auto& a : j.at("assignments")) {
    auto tgt = target_from_name(a.at("target").get<std::string>());
    if (!tgt) throw std::invalid_argument("bad target");
    auto val = Rational::try_parse(a.at("value").get<std::string>());
    if (!val) throw std::invalid_argument("bad rational");
    mv.assignments.push_back({*tgt, NodeId(a.at("node").get<std::string>()), *val});
  }
  for (const auto& l : j.at("labels"))
    mv.labels.push_back({NodeId(l.at("leaf").get<std::string>()), l.at("label").get<int>()});
  return mv;
}

void TraceWriter::move(int index, const Move& mv) { record(move_to_json(mv, index)); }

void TraceWriter::statuses(const GameState& s) {
  for (const auto& [leaf, label] : s.labels()) {
    LeafStatus st = s.leaf_status(leaf);
    auto it = last_status_.find(leaf);
    if (it != last_status_.end() && it->second == st.kind) continue;
    last_status_[leaf] = st.kind;
    record(json{{"kind", "status"},
                {"leaf", leaf.str()},
                {"status", status_name(st.kind)},
                {"label", label}});
  }
}

void TraceWriter::verdict(const Verdict& v) {
  record(json{
      {"kind", "verdict"}, {"m_wins", v.m_wins}, {"leaf", v.leaf.str()}, {"label", v.label}});
}

namespace {

struct Fail {
  int code;
  std::string msg;
};

VerifyResult fail(int code, int index, const std::string& msg) { return {code, msg, index}; }

Rational parse_rat(const json& j, const char* key) {
  auto v = Rational::try_parse(j.at(key).get<std::string>());
  if (!v) throw std::invalid_argument(std::string("bad rational in ") + key);
  return *v;
}

VerifyResult verify_game(const json& header, std::ifstream& in, int index) {
  GameState s = GameState::fresh(header.at("h").get<int>(), header.at("parity").get<int>(),
                                 parse_rat(header, "a0_root"), parse_rat(header, "a1_root"));
  int next_move = 0;
  bool saw_verdict = false;
  std::string line;
  while (std::getline(in, line)) {
    ++index;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      return fail(2, index, std::string("parse error: ") + e.what());
    }
    try {
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "move") {
        if (j.at("index").get<int>() != next_move) return fail(2, index, "move index out of order");
        Move mv = move_from_json(j);
        try {
          s = s.submit(mv.mover, mv.assignments, mv.labels, mv.phase);
        } catch (const GameError& e) {
          return fail(1, index, e.what());
        }
        ++next_move;
      } else if (kind == "status") {
        NodeId leaf(j.at("leaf").get<std::string>());
        LeafStatus st = s.leaf_status(leaf);
        if (j.at("label").get<int>() != st.label)
          return fail(1, index, "label violation: status record disagrees at '" + leaf.str() + "'");
        if (j.at("status").get<std::string>() != status_name(st.kind))
          return fail(1, index,
                      "structure violation: status record disagrees at '" + leaf.str() + "'");
      } else if (kind == "verdict") {
        Verdict v = s.referee_final();
        if (j.at("m_wins").get<bool>() != v.m_wins ||
            NodeId(j.at("leaf").get<std::string>()) != v.leaf)
          return fail(1, index, "structure violation: verdict disagrees with replay");
        if (j.at("label").get<int>() != v.label)
          return fail(1, index, "label violation: verdict label disagrees with replay");
        saw_verdict = true;
      } else {
        return fail(2, index, "unknown record kind: " + kind);
      }
    } catch (const json::exception& e) {
      return fail(2, index, std::string("malformed record: ") + e.what());
    } catch (const std::invalid_argument& e) {
      return fail(2, index, std::string("malformed record: ") + e.what());
    }
  }
  if (!saw_verdict) return fail(2, index, "trace ends without a verdict");
  return {};
}

struct SpawnInfo {
  NodeId root;
  int h;
  Rational m_scale, a_scale;
  int parent;
  int label;
  bool discarded = false;
};

VerifyResult verify_session(const json& header, std::ifstream& in, int index) {
  (void)header;
  Valuation t0(Role::Even, 0, std::nullopt, Valuation::RootRule::AtMostOne);
  Valuation t1(Role::Odd, 0, std::nullopt, Valuation::RootRule::AtMostOne);
  std::map<int, SpawnInfo> stages;
  stages[0] = SpawnInfo{NodeId(), header.at("h").get<int>(), Rational(1), Rational(1), -1, 0};
  bool saw_report = false;
  std::string line;
  while (std::getline(in, line)) {
    ++index;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      return fail(2, index, std::string("parse error: ") + e.what());
    }
    try {
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "stage-spawn") {
        SpawnInfo si;
        si.root = NodeId(j.at("root").get<std::string>());
        si.h = j.at("h").get<int>();
        si.m_scale = parse_rat(j, "m_scale");
        si.a_scale = parse_rat(j, "a_scale");
        si.parent = j.at("parent").get<int>();
        si.label = j.at("label").get<int>();
        int idx = j.at("index").get<int>();
        auto pit = stages.find(si.parent);
        if (pit == stages.end()) return fail(2, index, "spawn references unknown parent");
        const SpawnInfo& p = pit->second;
        Thresholds th = thresholds(p.h);
        if (si.m_scale != p.m_scale * th.M(si.label) || si.a_scale != p.a_scale * th.m(si.label))
          return fail(1, index, "structure violation: spawn scales break the stitching rule");
        if (si.h != (si.label == 1 ? p.h : p.h + 2))
          return fail(1, index, "structure violation: spawn height disagrees with its label");
        if (!p.root.is_prefix_of(si.root) || si.root.depth() != p.root.depth() + p.h)
          return fail(1, index, "structure violation: spawn root is not a leaf of its parent");
        if (j.at("parity").get<int>() != static_cast<int>(si.root.depth()) % 2)
          return fail(1, index, "structure violation: spawn parity disagrees with its root depth");
        stages[idx] = si;
      } else if (kind == "stage-discard") {
        auto it = stages.find(j.at("index").get<int>());
        if (it == stages.end()) return fail(2, index, "discard references unknown stage");
        it->second.discarded = true;
      } else if (kind == "global-move") {
        std::vector<ValueAssign> b0, b1;
        for (const auto& a : j.at("assignments")) {
          auto tgt = target_from_name(a.at("target").get<std::string>());
          auto val = Rational::try_parse(a.at("value").get<std::string>());
          if (!tgt || !val || *tgt == Target::T) return fail(2, index, "bad global assignment");
          (*tgt == Target::T0 ? b0 : b1).push_back({NodeId(a.at("node").get<std::string>()), *val});
        }
        try {
          if (!b0.empty()) t0 = t0.with_increase(b0);
          if (!b1.empty()) t1 = t1.with_increase(b1);
        } catch (const GameError& e) {
          return fail(1, index, e.what());
        }
      } else if (kind == "report") {
        NodeId omega(j.at("omega").get<std::string>());
        Rational growth(1), allowance(1);
        auto labels = j.at("labels");
        auto heights = j.at("heights");
        if (labels.size() != heights.size()) return fail(2, index, "report label/height mismatch");
        for (std::size_t i = 0; i < labels.size(); ++i) {
          Thresholds th = thresholds(heights[i].get<int>());
          growth *= th.M(labels[i].get<int>());
          allowance *= th.m(labels[i].get<int>());
        }
        if (parse_rat(j, "growth") != growth || parse_rat(j, "allowance") != allowance)
          return fail(1, index, "structure violation: report products disagree with the labels");
        Rational a_max(0);
        for (std::size_t d = 0; d <= omega.depth(); ++d) {
          NodeId p = omega.prefix(d);
          a_max = std::max({a_max, t0.get(p), t1.get(p)});
        }
        if (parse_rat(j, "a_max") != a_max)
          return fail(1, index, "monotonicity violation: reported adversary max disagrees");
        saw_report = true;
      } else {
        return fail(2, index, "unknown record kind: " + kind);
      }
    } catch (const json::exception& e) {
      return fail(2, index, std::string("malformed record: ") + e.what());
    } catch (const std::invalid_argument& e) {
      return fail(2, index, std::string("malformed record: ") + e.what());
    }
  }
  if (!saw_report) return fail(2, index, "trace ends without a report");
  return {};
}

}  // namespace

VerifyResult verify_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return fail(2, -1, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) return fail(2, 0, "empty trace");
  json header;
  try {
    header = json::parse(line);
    const auto kind = header.at("kind").get<std::string>();
    if (kind == "game") return verify_game(header, in, 0);
    if (kind == "session") return verify_session(header, in, 0);
    return fail(2, 0, "unknown header kind: " + kind);
  } catch (const json::exception& e) {
    return fail(2, 0, std::string("bad header: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return fail(2, 0, std::string("bad header: ") + e.what());
  }
}

}  // namespace smg
