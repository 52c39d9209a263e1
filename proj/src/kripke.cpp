#include "provd/kripke.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "json.hpp"

namespace provd {

int KripkeModel::index_of(const std::string& world) const {
  for (size_t i = 0; i < worlds.size(); ++i)
    if (worlds[i] == world) return static_cast<int>(i);
  return -1;
}

KripkeModel validate_model(
    const std::vector<std::string>& worlds,
    const std::vector<std::pair<std::string, std::string>>& rel,
    const std::map<std::string, Valuation>& val) {
  KripkeModel m;
  m.worlds = worlds;
  const size_t n = worlds.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : rel) {
    int i = m.index_of(a), j = m.index_of(b);
    if (i < 0) throw ModelError("unknown world in relation: " + a);
    if (j < 0) throw ModelError("unknown world in relation: " + b);
    adj[i][j] = true;
  }
  // Warshall closure; a diagonal entry afterwards means a cycle.
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (adj[i][k])
        for (size_t j = 0; j < n; ++j)
          if (adj[k][j]) adj[i][j] = true;
  for (size_t i = 0; i < n; ++i)
    if (adj[i][i])
      throw ModelError("irreflexivity violation: world '" + worlds[i] +
                       "' lies on a cycle");
  m.succ.resize(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (adj[i][j]) m.succ[i].push_back(static_cast<int>(j));
  m.val.resize(n);
  for (const auto& [w, v] : val) {
    int i = m.index_of(w);
    if (i < 0) throw ModelError("valuation names unknown world: " + w);
    m.val[i] = v;
  }
  return m;
}

namespace {

bool lookup_var(const Valuation& v, const std::string& name) {
  auto it = v.find(name);
  if (it == v.end())
    throw ModelError("variable '" + name + "' is not assigned");
  return it->second;
}

// Truth of every subformula at every base world, worlds evaluated in an
// order compatible with the (acyclic) relation.
class BaseEval {
public:
  explicit BaseEval(const KripkeModel& m) : m_(m) {}

  bool eval(int world, const FormulaPtr& f) {
    auto key = std::make_pair(world, f->key);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool r = false;
    switch (f->kind) {
      case FKind::Var: r = lookup_var(m_.val[world], f->name); break;
      case FKind::Bottom: r = false; break;
      case FKind::Implies: r = !eval(world, f->lhs) || eval(world, f->rhs); break;
      case FKind::Box: {
        r = true;
        for (int w2 : m_.succ[world])
          if (!eval(w2, f->lhs)) { r = false; break; }
        break;
      }
    }
    memo_[key] = r;
    return r;
  }

private:
  const KripkeModel& m_;
  std::map<std::pair<int, std::string>, bool> memo_;
};

}  // namespace

bool eval_at(const KripkeModel& m, const std::string& world, const FormulaPtr& f) {
  int i = m.index_of(world);
  if (i < 0) throw ModelError("unknown world: " + world);
  BaseEval ev(m);
  return ev.eval(i, f);
}

static bool valuations_agree(const Valuation& a, const Valuation& b) {
  std::set<std::string> keys;
  for (const auto& [k, _] : a) keys.insert(k);
  for (const auto& [k, _] : b) keys.insert(k);
  for (const auto& k : keys) {
    auto ia = a.find(k), ib = b.find(k);
    if (ia == a.end() || ib == b.end()) return false;
    if (ia->second != ib->second) return false;
  }
  return true;
}

TailLimitModel build_tail_limit(KripkeModel base, const std::string& attach,
                                std::vector<Valuation> prefix,
                                Valuation constant, Valuation limit) {
  TailLimitModel tm;
  int t0 = base.index_of(attach);
  if (t0 < 0) throw ModelError("unknown attach world: " + attach);
  tm.base = std::move(base);
  tm.attach = attach;
  tm.prefix = std::move(prefix);
  tm.constant = std::move(constant);
  tm.limit = std::move(limit);
  // The paper's constancy conditions quantify over all tail worlds, t0
  // included, so the attach world's own valuation takes part.
  bool cst = valuations_agree(tm.base.val[t0], tm.constant);
  for (const auto& v : tm.prefix) cst = cst && valuations_agree(v, tm.constant);
  tm.constant_tail = cst;
  tm.strongly_constant = cst && valuations_agree(tm.constant, tm.limit);
  return tm;
}

// ---------------------------------------------------------------------------
// Tail evaluation.
//
// Truth at tail world t_i depends on the valuation at t_i, on truth at
// t_0..t_{i-1}, and on truth at the base successors of t_0. Once the
// valuation is constant, the only moving part is, per boxed subformula
// box a, whether a has held at every tail world so far; that summary is
// pointwise non-increasing, so all truths are fixed after
// prefix length + #boxed subformulas + 1 rows.
// ---------------------------------------------------------------------------

namespace {

struct TailEval {
  const TailLimitModel& tm;
  std::vector<FormulaPtr> subs;                 // post-order: children first
  std::unordered_map<std::string, int> sub_ix;  // key -> index
  int t0 = -1;
  std::vector<char> base_succ_ok;  // per sub: true at every base successor of t0
  std::vector<std::vector<char>> row;  // row[i][s] = truth of sub s at t_i
  std::vector<char> all_below;         // running conjunction over rows so far
  std::vector<char> limit_row;
  int rows = 0;
  int stab = 0;

  explicit TailEval(const TailLimitModel& model, const FormulaPtr& f) : tm(model) {
    collect(f);
    t0 = tm.base.index_of(tm.attach);
    BaseEval base_ev(tm.base);
    base_succ_ok.assign(subs.size(), 1);
    for (size_t s = 0; s < subs.size(); ++s)
      for (int w : tm.base.succ[t0])
        if (!base_ev.eval(w, subs[s])) { base_succ_ok[s] = 0; break; }

    int boxed = 0;
    for (const auto& g : subs)
      if (g->kind == FKind::Box) ++boxed;
    rows = static_cast<int>(tm.prefix.size()) + boxed + 1;

    // Row 0 is the attach world itself.
    std::vector<char> row0(subs.size());
    for (size_t s = 0; s < subs.size(); ++s)
      row0[s] = base_ev.eval(t0, subs[s]) ? 1 : 0;
    row.push_back(row0);
    all_below = row0;

    for (int i = 1; i <= rows; ++i) {
      const Valuation& v = i <= static_cast<int>(tm.prefix.size())
                               ? tm.prefix[i - 1]
                               : tm.constant;
      std::vector<char> r(subs.size());
      for (size_t s = 0; s < subs.size(); ++s) r[s] = truth_from(v, s, r);
      row.push_back(r);
      for (size_t s = 0; s < subs.size(); ++s)
        all_below[s] = all_below[s] && r[s];
    }

    limit_row.resize(subs.size());
    for (size_t s = 0; s < subs.size(); ++s)
      limit_row[s] = truth_from(tm.limit, s, limit_row);

    stab = rows;
    while (stab > 1 && row[stab - 1] == row[rows]) --stab;
  }

  int index(const FormulaPtr& f) const { return sub_ix.at(f->key); }

  // Truth of subs[s] under valuation v, given truths r of earlier subs in
  // the same row; box looks at all_below (rows already pushed) and the base
  // successors of t0.
  char truth_from(const Valuation& v, size_t s, const std::vector<char>& r) {
    const FormulaPtr& f = subs[s];
    switch (f->kind) {
      case FKind::Var: return lookup_var(v, f->name) ? 1 : 0;
      case FKind::Bottom: return 0;
      case FKind::Implies:
        return (!r[index(f->lhs)] || r[index(f->rhs)]) ? 1 : 0;
      case FKind::Box: {
        int b = index(f->lhs);
        return (all_below[b] && base_succ_ok[b]) ? 1 : 0;
      }
    }
    return 0;
  }

  void collect(const FormulaPtr& f) {
    if (sub_ix.count(f->key)) return;
    if (f->kind == FKind::Implies) {
      collect(f->lhs);
      collect(f->rhs);
    } else if (f->kind == FKind::Box) {
      collect(f->lhs);
    }
    sub_ix.emplace(f->key, static_cast<int>(subs.size()));
    subs.push_back(f);
  }
};

}  // namespace

LimitVerdict eval_tail_limit(const TailLimitModel& tm, const FormulaPtr& f) {
  TailEval ev(tm, f);
  LimitVerdict v;
  int s = ev.index(f);
  v.at_limit = ev.limit_row[s];
  v.eventually_always = ev.row[ev.rows][s];
  v.stabilization_index = ev.stab;
  return v;
}

bool eval_tail_world(const TailLimitModel& tm, const std::string& world,
                     const FormulaPtr& f) {
  if (tm.base.index_of(world) >= 0) return eval_at(tm.base, world, f);
  TailEval ev(tm, f);
  int s = ev.index(f);
  if (world == "limit") return ev.limit_row[s];
  if (world == "t#") return ev.row[ev.rows][s];
  if (world.size() > 1 && world[0] == 't') {
    size_t k = 0;
    try {
      k = std::stoul(world.substr(1));
    } catch (...) {
      throw ModelError("unknown world: " + world);
    }
    if (k >= 1 && k <= tm.prefix.size()) return ev.row[k][s];
    throw ModelError("tail position out of range: " + world);
  }
  throw ModelError("unknown world: " + world);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

using nlohmann::json;

static Valuation valuation_from_json(const json& j) {
  Valuation v;
  for (auto it = j.begin(); it != j.end(); ++it) v[it.key()] = it.value().get<bool>();
  return v;
}

static json valuation_to_json(const Valuation& v) {
  json j = json::object();
  for (const auto& [k, b] : v) j[k] = b;
  return j;
}

ModelFile model_from_json(const std::string& text) {
  json j = json::parse(text);
  std::vector<std::string> worlds = j.at("worlds").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> rel;
  for (const auto& e : j.at("rel"))
    rel.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  std::map<std::string, Valuation> val;
  if (j.contains("val"))
    for (auto it = j["val"].begin(); it != j["val"].end(); ++it)
      val[it.key()] = valuation_from_json(it.value());
  ModelFile mf;
  mf.base = validate_model(worlds, rel, val);
  if (j.contains("tail")) {
    const json& t = j["tail"];
    std::vector<Valuation> prefix;
    if (t.contains("prefix"))
      for (const auto& p : t["prefix"]) prefix.push_back(valuation_from_json(p));
    mf.tail = build_tail_limit(mf.base, t.at("attach").get<std::string>(),
                               std::move(prefix),
                               valuation_from_json(t.at("constant")),
                               valuation_from_json(t.at("limit")));
  }
  return mf;
}

static json base_to_json(const KripkeModel& m) {
  json j;
  j["worlds"] = m.worlds;
  json rel = json::array();
  for (size_t i = 0; i < m.worlds.size(); ++i)
    for (int k : m.succ[i]) rel.push_back({m.worlds[i], m.worlds[k]});
  j["rel"] = rel;
  json val = json::object();
  for (size_t i = 0; i < m.worlds.size(); ++i)
    val[m.worlds[i]] = valuation_to_json(m.val[i]);
  j["val"] = val;
  return j;
}

std::string model_to_json(const KripkeModel& m) { return base_to_json(m).dump(2); }

std::string model_to_json(const TailLimitModel& tm) {
  json j = base_to_json(tm.base);
  json t;
  t["attach"] = tm.attach;
  json prefix = json::array();
  for (const auto& p : tm.prefix) prefix.push_back(valuation_to_json(p));
  t["prefix"] = prefix;
  t["constant"] = valuation_to_json(tm.constant);
  t["limit"] = valuation_to_json(tm.limit);
  j["tail"] = t;
  return j.dump(2);
}

}  // namespace provd
