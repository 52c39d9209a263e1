#include "provd/glin.hpp"
#include <algorithm>
#include <cstdint>
#include <map>

namespace provd {

KripkeModel nat_frame_to_kripke(const NatFrameModel& m) {
  KripkeModel k;
  for (int w = 0; w <= m.size; ++w) k.worlds.push_back("n" + std::to_string(w));
  k.succ.resize(m.size + 1);
  for (int w = 0; w <= m.size; ++w)
    for (int v = w - 1; v >= 0; --v) k.succ[w].push_back(v);
  k.val = m.val;
  return k;
}

namespace {

// Truth of every subformula along the linear order, worlds bottom up.
// all_below[s] tracks whether subformula s held at every world < w.
// Subformulas are kept in post-order so a row can be filled left to right.
struct LinearEval {
  std::vector<FormulaPtr> subs;
  std::vector<std::string> vars;
  std::map<std::string, int> sub_ix;

  explicit LinearEval(const FormulaPtr& f) {
    collect(f);
    vars = variables_of(f);
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

  int index(const FormulaPtr& f) const { return sub_ix.at(f->key); }

  std::vector<char> row(const Valuation& v,
                        const std::vector<char>& all_below) const {
    std::vector<char> r(subs.size());
    for (size_t s = 0; s < subs.size(); ++s) {
      const FormulaPtr& g = subs[s];
      switch (g->kind) {
        case FKind::Var: r[s] = v.at(g->name) ? 1 : 0; break;
        case FKind::Bottom: r[s] = 0; break;
        case FKind::Implies:
          r[s] = (!r[index(g->lhs)] || r[index(g->rhs)]) ? 1 : 0;
          break;
        case FKind::Box: r[s] = all_below[index(g->lhs)]; break;
      }
    }
    return r;
  }
};

Valuation nth_valuation(const std::vector<std::string>& vars, uint64_t bits) {
  Valuation v;
  for (size_t i = 0; i < vars.size(); ++i)
    v[vars[i]] = ((bits >> i) & 1) != 0;
  return v;
}

int default_bound(const FormulaPtr& f) {
  return static_cast<int>(subformula_closure({f}).formulas.size()) + 1;
}

}  // namespace

GLLinVerdict gllin_valid(const FormulaPtr& f, int bound) {
  GLLinVerdict verdict;
  verdict.bound = bound > 0 ? bound : default_bound(f);
  LinearEval ev(f);
  const int nvars = static_cast<int>(ev.vars.size());
  const int target = ev.index(f);
  // Sizes start at 1: world 0 of a size-1 frame already replays the
  // single-world frame under every valuation.
  for (int size = 1; size <= verdict.bound; ++size) {
    // One valuation per world; world valuations enumerated lexicographically
    // with world 0 in the lowest bits.
    const int bits_per_world = nvars;
    const int total_bits = bits_per_world * (size + 1);
    if (total_bits > 62)
      throw ModelError("nat-frame enumeration out of range");
    const uint64_t total = 1ull << total_bits;
    for (uint64_t assignment = 0; assignment < total; ++assignment) {
      NatFrameModel m;
      m.size = size;
      std::vector<char> all_below(ev.subs.size(), 1);
      std::vector<std::vector<char>> rows;
      for (int w = 0; w <= size; ++w) {
        uint64_t bits = bits_per_world
                            ? (assignment >> (w * bits_per_world)) &
                                  ((1ull << bits_per_world) - 1)
                            : 0;
        m.val.push_back(nth_valuation(ev.vars, bits));
        rows.push_back(ev.row(m.val.back(), all_below));
        for (size_t s = 0; s < ev.subs.size(); ++s)
          all_below[s] = all_below[s] && rows.back()[s];
      }
      for (int w = 0; w <= size; ++w) {
        if (!rows[w][target]) {
          verdict.valid = false;
          verdict.witness = m;
          verdict.witness_world = w;
          return verdict;
        }
      }
    }
  }
  verdict.valid = true;
  return verdict;
}

OmegaResult omega_refute_search(const FormulaPtr& f, const OmegaConfig& cfg) {
  OmegaResult result;
  const int base_max = cfg.base_size_max > 0 ? cfg.base_size_max : default_bound(f);
  std::vector<std::string> vars = variables_of(FormulaSet{f});
  const int nvars = static_cast<int>(vars.size());
  const uint64_t per_world = nvars ? (1ull << nvars) : 1;

  for (int size = 0; size <= base_max; ++size) {
    if (nvars * (size + 1) > 56) throw ModelError("omega enumeration out of range");
    uint64_t base_total = 1;
    for (int w = 0; w <= size; ++w) base_total *= per_world;
    for (uint64_t base_bits = 0; base_bits < base_total; ++base_bits) {
      NatFrameModel nat;
      nat.size = size;
      uint64_t rest = base_bits;
      for (int w = 0; w <= size; ++w) {
        nat.val.push_back(nth_valuation(vars, rest % per_world));
        rest /= per_world;
      }
      KripkeModel base = nat_frame_to_kripke(nat);
      std::string attach = "n" + std::to_string(size);
      for (int plen = 0; plen <= cfg.prefix_len_max; ++plen) {
        uint64_t prefix_total = 1;
        for (int i = 0; i < plen; ++i) prefix_total *= per_world;
        for (uint64_t pbits = 0; pbits < prefix_total; ++pbits) {
          std::vector<Valuation> prefix;
          uint64_t pr = pbits;
          for (int i = 0; i < plen; ++i) {
            prefix.push_back(nth_valuation(vars, pr % per_world));
            pr /= per_world;
          }
          for (uint64_t cbits = 0; cbits < per_world; ++cbits) {
            for (uint64_t lbits = 0; lbits < per_world; ++lbits) {
              TailLimitModel tm = build_tail_limit(
                  base, attach, prefix, nth_valuation(vars, cbits),
                  nth_valuation(vars, lbits));
              if (!eval_tail_limit(tm, f).at_limit) {
                result.refuted = true;
                result.model = tm;
                return result;
              }
            }
          }
        }
      }
    }
  }
  return result;
}

}  // namespace provd
