#include "provd/hilbert.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include "json.hpp"
#include "provd/glin.hpp"
#include "provd/prover.hpp"

namespace provd {

std::string hsystem_name(HSystem s) {
  switch (s) {
    case HSystem::GLH: return "glh";
    case HSystem::SH: return "sh";
    case HSystem::DH: return "dh";
    case HSystem::DH2: return "dh2";
    case HSystem::DH3: return "dh3";
    case HSystem::D2_GLin: return "d2-gllin";
    case HSystem::D3_GLin: return "d3-gllin";
  }
  return "?";
}

std::optional<HSystem> hsystem_from_name(const std::string& name) {
  static const std::pair<const char*, HSystem> table[] = {
      {"glh", HSystem::GLH},         {"sh", HSystem::SH},
      {"dh", HSystem::DH},           {"dh2", HSystem::DH2},
      {"dh3", HSystem::DH3},         {"d2-gllin", HSystem::D2_GLin},
      {"d3-gllin", HSystem::D3_GLin}};
  for (const auto& [n, s] : table)
    if (name == n) return s;
  return std::nullopt;
}

FormulaPtr big_and(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return mk_top();
  FormulaPtr out = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) out = mk_and(fs[i], out);
  return out;
}

FormulaPtr big_or(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return mk_bottom();
  FormulaPtr out = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) out = mk_or(fs[i], out);
  return out;
}

// ---------------------------------------------------------------------------
// Tautology checking over variable and boxed atoms
// ---------------------------------------------------------------------------

namespace {

void collect_atoms(const FormulaPtr& f, FormulaSet& atoms) {
  switch (f->kind) {
    case FKind::Var:
    case FKind::Box:
      if (!set_contains(atoms, f)) atoms = set_insert(atoms, f);
      break;
    case FKind::Bottom: break;
    case FKind::Implies:
      collect_atoms(f->lhs, atoms);
      collect_atoms(f->rhs, atoms);
      break;
  }
}

bool eval_boolean(const FormulaPtr& f, const FormulaSet& atoms, uint64_t bits) {
  switch (f->kind) {
    case FKind::Bottom: return false;
    case FKind::Implies:
      return !eval_boolean(f->lhs, atoms, bits) ||
             eval_boolean(f->rhs, atoms, bits);
    default: {
      auto it = std::lower_bound(atoms.begin(), atoms.end(), f, formula_less);
      return ((bits >> (it - atoms.begin())) & 1) != 0;
    }
  }
}

}  // namespace

bool is_tautology(const FormulaPtr& f) {
  FormulaSet atoms;
  collect_atoms(f, atoms);
  if (atoms.size() > 24)
    throw HilbertError("tautology check out of range: too many atoms");
  const uint64_t total = 1ull << atoms.size();
  for (uint64_t bits = 0; bits < total; ++bits)
    if (!eval_boolean(f, atoms, bits)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Axiom recognition
// ---------------------------------------------------------------------------

namespace {

bool match_k(const FormulaPtr& f) {
  // box(a -> b) -> (box a -> box b)
  if (f->kind != FKind::Implies || f->lhs->kind != FKind::Box) return false;
  const FormulaPtr& in = f->lhs->lhs;
  if (in->kind != FKind::Implies) return false;
  const FormulaPtr& r = f->rhs;
  return r->kind == FKind::Implies && r->lhs->kind == FKind::Box &&
         r->rhs->kind == FKind::Box && same_formula(r->lhs->lhs, in->lhs) &&
         same_formula(r->rhs->lhs, in->rhs);
}

bool match_lob(const FormulaPtr& f) {
  // box(box a -> a) -> box a
  if (f->kind != FKind::Implies || f->lhs->kind != FKind::Box ||
      f->rhs->kind != FKind::Box)
    return false;
  const FormulaPtr& in = f->lhs->lhs;
  return in->kind == FKind::Implies && in->lhs->kind == FKind::Box &&
         same_formula(in->lhs->lhs, in->rhs) &&
         same_formula(in->rhs, f->rhs->lhs);
}

bool match_refl(const FormulaPtr& f) {
  return f->kind == FKind::Implies && f->lhs->kind == FKind::Box &&
         same_formula(f->lhs->lhs, f->rhs);
}

bool match_not_box_bot(const FormulaPtr& f) {
  return f->kind == FKind::Implies && f->rhs->kind == FKind::Bottom &&
         f->lhs->kind == FKind::Box && f->lhs->lhs->kind == FKind::Bottom;
}

// box(box a | box b) -> box a | box b  with the canonical disjunction
bool match_d(const FormulaPtr& f, FormulaPtr* a = nullptr,
             FormulaPtr* b = nullptr) {
  if (f->kind != FKind::Implies || f->lhs->kind != FKind::Box) return false;
  const FormulaPtr& x = f->lhs->lhs;
  if (!same_formula(x, f->rhs)) return false;
  // x must be (box a -> bot) -> box b
  if (x->kind != FKind::Implies || x->lhs->kind != FKind::Implies ||
      x->lhs->rhs->kind != FKind::Bottom || x->lhs->lhs->kind != FKind::Box ||
      x->rhs->kind != FKind::Box)
    return false;
  if (a) *a = x->lhs->lhs->lhs;
  if (b) *b = x->rhs->lhs;
  return true;
}

std::vector<FormulaPtr> boxed_list(const std::vector<FormulaPtr>& fs) {
  std::vector<FormulaPtr> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(mk_box(f));
  return out;
}

FormulaPtr d_shape_formula(const std::vector<FormulaPtr>& gamma,
                           const std::vector<FormulaPtr>& delta) {
  return mk_implies(big_and(boxed_list(gamma)), big_or(boxed_list(delta)));
}

FormulaPtr d2_side_condition(const std::vector<FormulaPtr>& gamma,
                             const std::vector<FormulaPtr>& delta) {
  std::vector<FormulaPtr> lhs = gamma;
  for (const auto& g : gamma) lhs.push_back(mk_box(g));
  return mk_implies(big_and(lhs), big_or(boxed_list(delta)));
}

bool gl_oracle_proves(const FormulaSet& left, const FormulaSet& right) {
  return prove(Sequent{SequentKind::GL, left, right}, Calculus::GLseq).provable;
}

bool d2_side_holds(const std::vector<FormulaPtr>& gamma,
                   const std::vector<FormulaPtr>& delta, HSystem system,
                   const HilbertOptions& opts) {
  if (system == HSystem::D2_GLin)
    return gllin_valid(d2_side_condition(gamma, delta), opts.gllin_bound).valid;
  FormulaSet left = make_set(gamma);
  for (const auto& g : gamma) left = set_insert(left, mk_box(g));
  FormulaSet right = make_set(boxed_list(delta));
  return gl_oracle_proves(left, right);
}

bool d3_side_holds(const std::vector<FormulaPtr>& gamma,
                   const std::vector<FormulaPtr>& delta, HSystem system,
                   const HilbertOptions& opts) {
  FormulaSet left = make_set(boxed_list(gamma));
  FormulaSet right = make_set(boxed_list(delta));
  if (system == HSystem::D3_GLin) {
    GLOracle oracle = [&opts](const FormulaSet& l, const FormulaSet& r) {
      std::vector<FormulaPtr> ls(l.begin(), l.end());
      std::vector<FormulaPtr> rs(r.begin(), r.end());
      return gllin_valid(mk_implies(big_and(ls), big_or(rs)), opts.gllin_bound)
          .valid;
    };
    return prove_s_over_oracle(left, right, oracle);
  }
  return prove(Sequent{SequentKind::S, left, right}, Calculus::Sseq).provable;
}

bool scheme_in_system(const std::string& scheme, HSystem system) {
  switch (system) {
    case HSystem::GLH:
      return scheme == "taut" || scheme == "k" || scheme == "lob";
    case HSystem::SH:
      return scheme == "taut" || scheme == "refl" || scheme == "glh";
    case HSystem::DH:
      return scheme == "taut" || scheme == "not_box_bot" || scheme == "d" ||
             scheme == "glh";
    case HSystem::DH2:
    case HSystem::D2_GLin:
      return scheme == "taut" || scheme == "d2";
    case HSystem::DH3:
    case HSystem::D3_GLin:
      return scheme == "taut" || scheme == "d3";
  }
  return false;
}

bool axiom_fits(const FormulaPtr& f, const std::string& scheme, HSystem system,
                const std::vector<FormulaPtr>& gamma,
                const std::vector<FormulaPtr>& delta,
                const HilbertOptions& opts) {
  if (!scheme_in_system(scheme, system)) return false;
  if (scheme == "taut") return is_tautology(f);
  if (scheme == "k") return match_k(f);
  if (scheme == "lob") return match_lob(f);
  if (scheme == "refl") return match_refl(f);
  if (scheme == "not_box_bot") return match_not_box_bot(f);
  if (scheme == "d") return match_d(f);
  if (scheme == "glh")
    return gl_oracle_proves({}, FormulaSet{f});
  if (scheme == "d2") {
    if (!same_formula(f, d_shape_formula(gamma, delta)))
      throw HilbertError("malformed witness: formula does not match the declared shape");
    return d2_side_holds(gamma, delta, system, opts);
  }
  if (scheme == "d3") {
    if (!same_formula(f, d_shape_formula(gamma, delta)))
      throw HilbertError("malformed witness: formula does not match the declared shape");
    return d3_side_holds(gamma, delta, system, opts);
  }
  return false;
}

}  // namespace

std::optional<std::string> recognize_axiom(const FormulaPtr& f, HSystem system,
                                           const std::vector<FormulaPtr>& gamma,
                                           const std::vector<FormulaPtr>& delta,
                                           const HilbertOptions& opts) {
  static const char* order[] = {"k",   "lob", "refl", "not_box_bot", "d",
                                "taut", "d2",  "d3",   "glh"};
  for (const char* scheme : order) {
    if (!scheme_in_system(scheme, system)) continue;
    // the shaped schemes need witnesses to pin the conjunction/disjunction
    if ((scheme == std::string("d2") || scheme == std::string("d3")) &&
        gamma.empty() && delta.empty())
      continue;
    if (axiom_fits(f, scheme, system, gamma, delta, opts)) return scheme;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Proof checking
// ---------------------------------------------------------------------------

HilbertReport check_hilbert_proof(const HilbertProof& p,
                                  const HilbertOptions& opts) {
  HilbertReport report;
  std::vector<FormulaPtr> derived(p.lines.size());
  auto fail = [&](int i, const std::string& msg) {
    report.valid = false;
    report.first_bad_line = i;
    report.message = "line " + std::to_string(i) + ": " + msg;
    return report;
  };
  for (size_t i = 0; i < p.lines.size(); ++i) {
    const HLine& line = p.lines[i];
    const HJust& j = line.just;
    switch (j.kind) {
      case HJust::Kind::Axiom: {
        if (!line.formula)
          return fail(static_cast<int>(i), "axiom line has no formula");
        derived[i] = line.formula;
        bool ok = false;
        try {
          ok = axiom_fits(line.formula, j.scheme, p.system, j.gamma, j.delta,
                          opts);
        } catch (const HilbertError& e) {
          return fail(static_cast<int>(i), e.what());
        }
        if (!ok)
          return fail(static_cast<int>(i),
                      "not an instance of scheme '" + j.scheme + "' in " +
                          hsystem_name(p.system));
        bool prover_backed =
            j.scheme == "glh" || j.scheme == "d2" || j.scheme == "d3";
        if (opts.require_subproofs && prover_backed) {
          if (!j.subproof)
            return fail(static_cast<int>(i),
                        "scheme '" + j.scheme +
                            "' requires an explicit subproof here");
        }
        if (j.subproof) {
          HilbertReport sub = check_hilbert_proof(*j.subproof, opts);
          if (!sub.valid)
            return fail(static_cast<int>(i), "embedded subproof invalid: " + sub.message);
          FormulaPtr want;
          if (j.scheme == "glh") want = line.formula;
          else if (j.scheme == "d2") want = d2_side_condition(j.gamma, j.delta);
          else if (j.scheme == "d3") want = line.formula;
          if (want && !same_formula(sub.final_formula, want))
            return fail(static_cast<int>(i),
                        "embedded subproof concludes the wrong formula");
        }
        break;
      }
      case HJust::Kind::MP: {
        if (j.from < 0 || j.imp < 0 || j.from >= static_cast<int>(i) ||
            j.imp >= static_cast<int>(i))
          return fail(static_cast<int>(i), "modus ponens indices out of range");
        const FormulaPtr& imp = derived[j.imp];
        const FormulaPtr& from = derived[j.from];
        if (imp->kind != FKind::Implies || !same_formula(imp->lhs, from))
          return fail(static_cast<int>(i),
                      "modus ponens premises do not fit together");
        derived[i] = imp->rhs;
        if (line.formula && !same_formula(line.formula, derived[i]))
          return fail(static_cast<int>(i),
                      "stated formula disagrees with modus ponens");
        break;
      }
      case HJust::Kind::Nec: {
        if (p.system != HSystem::GLH)
          return fail(static_cast<int>(i),
                      "necessitation is only a rule of the GL system");
        if (j.from < 0 || j.from >= static_cast<int>(i))
          return fail(static_cast<int>(i), "necessitation index out of range");
        derived[i] = mk_box(derived[j.from]);
        if (line.formula && !same_formula(line.formula, derived[i]))
          return fail(static_cast<int>(i),
                      "stated formula disagrees with necessitation");
        break;
      }
    }
  }
  if (p.lines.empty()) return fail(-1, "empty proof");
  report.valid = true;
  report.final_formula = derived.back();
  return report;
}

// ---------------------------------------------------------------------------
// Proof builder
// ---------------------------------------------------------------------------

namespace {

class Builder {
public:
  explicit Builder(HSystem system) { proof_.system = system; }

  int axiom(const FormulaPtr& f, const std::string& scheme,
            std::vector<FormulaPtr> gamma = {},
            std::vector<FormulaPtr> delta = {}) {
    if (auto it = index_.find(f->key); it != index_.end()) return it->second;
    HLine line;
    line.formula = f;
    line.just.kind = HJust::Kind::Axiom;
    line.just.scheme = scheme;
    line.just.gamma = std::move(gamma);
    line.just.delta = std::move(delta);
    return push(f, std::move(line));
  }

  int taut(const FormulaPtr& f) {
    if (!is_tautology(f))
      throw HilbertError("internal: generated a non-tautology: " +
                         print_formula(f));
    return axiom(f, "taut");
  }

  int mp(int imp, int from) {
    const FormulaPtr& impf = proof_.lines[imp].formula;
    if (impf->kind != FKind::Implies)
      throw HilbertError("internal: modus ponens on a non-implication");
    FormulaPtr f = impf->rhs;
    if (auto it = index_.find(f->key); it != index_.end()) return it->second;
    HLine line;
    line.formula = f;
    line.just.kind = HJust::Kind::MP;
    line.just.imp = imp;
    line.just.from = from;
    return push(f, std::move(line));
  }

  int nec(int from) {
    FormulaPtr f = mk_box(proof_.lines[from].formula);
    if (auto it = index_.find(f->key); it != index_.end()) return it->second;
    HLine line;
    line.formula = f;
    line.just.kind = HJust::Kind::Nec;
    line.just.from = from;
    return push(f, std::move(line));
  }

  // target as a tautological consequence of the given lines: one tautology
  // deps[0] -> (deps[1] -> ... -> target) and a modus ponens chain.
  int chain(const FormulaPtr& target, const std::vector<int>& deps) {
    if (auto it = index_.find(target->key); it != index_.end()) return it->second;
    FormulaPtr imp = target;
    for (size_t i = deps.size(); i-- > 0;)
      imp = mk_implies(proof_.lines[deps[i]].formula, imp);
    int cur = taut(imp);
    for (int dep : deps) cur = mp(cur, dep);
    return cur;
  }

  const FormulaPtr& formula(int i) const { return proof_.lines[i].formula; }

  // Makes line `i`'s formula the final line (the checker reports the last
  // line as the conclusion). Re-derives it through a trivial implication
  // when dedup left it in the middle of the proof.
  void conclude(int i) {
    FormulaPtr f = proof_.lines[i].formula;
    if (i == static_cast<int>(proof_.lines.size()) - 1) return;
    int t = taut(mk_implies(f, f));
    HLine line;
    line.formula = f;
    line.just.kind = HJust::Kind::MP;
    line.just.imp = t;
    line.just.from = i;
    proof_.lines.push_back(std::move(line));
  }

  HilbertProof take() { return std::move(proof_); }

private:
  int push(const FormulaPtr& f, HLine line) {
    proof_.lines.push_back(std::move(line));
    int ix = static_cast<int>(proof_.lines.size()) - 1;
    index_.emplace(f->key, ix);
    return ix;
  }

  HilbertProof proof_;
  std::map<std::string, int> index_;
};

// GLH theorem: box a -> box box a.
int derive_four(Builder& b, const FormulaPtr& a) {
  FormulaPtr ba = mk_box(a);
  FormulaPtr conj = mk_and(a, ba);  // a & box a
  FormulaPtr bconj = mk_box(conj);
  int t1 = b.taut(mk_implies(conj, a));
  int n1 = b.nec(t1);
  int k1 = b.axiom(mk_implies(mk_box(mk_implies(conj, a)),
                              mk_implies(bconj, ba)),
                   "k");
  int step1 = b.mp(k1, n1);  // box conj -> box a
  int step2 = b.chain(mk_implies(a, mk_implies(bconj, conj)), {step1});
  int n2 = b.nec(step2);
  int k2 = b.axiom(mk_implies(mk_box(b.formula(step2)),
                              mk_implies(ba, mk_box(mk_implies(bconj, conj)))),
                   "k");
  int step3 = b.mp(k2, n2);  // box a -> box(box conj -> conj)
  int lob = b.axiom(mk_implies(mk_box(mk_implies(bconj, conj)), bconj), "lob");
  int t2 = b.taut(mk_implies(conj, ba));
  int n3 = b.nec(t2);
  int k3 = b.axiom(mk_implies(mk_box(mk_implies(conj, ba)),
                              mk_implies(bconj, mk_box(ba))),
                   "k");
  int step4 = b.mp(k3, n3);  // box conj -> box box a
  return b.chain(mk_implies(ba, mk_box(ba)), {step3, lob, step4});
}

// GLH derivation of  /\ box G -> box /\ C  from nothing, where the
// components /\ box G -> box c are available for every c in C.
int derive_box_conj(Builder& b, const FormulaPtr& ante,
                    const std::vector<FormulaPtr>& cs,
                    const std::vector<int>& component_lines) {
  // R_i = c_{i+1} -> (... -> /\ C); W_i proves ante -> box R_i.
  std::vector<FormulaPtr> rs;  // R_n .. R_0 built backwards
  FormulaPtr r = big_and(cs);
  rs.push_back(r);
  for (size_t i = cs.size(); i-- > 0;) {
    r = mk_implies(cs[i], r);
    rs.push_back(r);
  }
  std::reverse(rs.begin(), rs.end());  // rs[i] = R_i, rs[0] curried intro
  int t0 = b.taut(rs[0]);
  int n0 = b.nec(t0);
  int w = b.chain(mk_implies(ante, mk_box(rs[0])), {n0});
  for (size_t i = 0; i < cs.size(); ++i) {
    int k = b.axiom(mk_implies(mk_box(rs[i]),
                               mk_implies(mk_box(cs[i]), mk_box(rs[i + 1]))),
                    "k");
    w = b.chain(mk_implies(ante, mk_box(rs[i + 1])),
                {w, k, component_lines[i]});
  }
  return w;  // ante -> box /\ C
}

FormulaPtr seq_formula(const Sequent& s) {
  std::vector<FormulaPtr> l(s.left.begin(), s.left.end());
  std::vector<FormulaPtr> r(s.right.begin(), s.right.end());
  return mk_implies(big_and(l), big_or(r));
}

// Translation of a GL-box inference inside the GL Hilbert system: from
// chi' = /\ (G, box G, box a) -> a  derive  /\ box G -> box a.
int translate_glbox_glh(Builder& b, const Sequent& conclusion,
                        const Sequent& premise, int premise_line) {
  FormulaPtr phi = conclusion.right[0]->lhs;
  FormulaPtr box_phi = conclusion.right[0];
  std::vector<FormulaPtr> c(premise.left.begin(), premise.left.end());
  c.erase(std::remove_if(c.begin(), c.end(),
                         [&](const FormulaPtr& g) {
                           return same_formula(g, box_phi);
                         }),
          c.end());
  FormulaPtr conj_c = big_and(c);
  FormulaPtr ante = seq_formula(conclusion)->lhs;  // /\ box G
  // X: /\ C -> (box a -> a)
  int x = b.chain(mk_implies(conj_c, mk_implies(box_phi, phi)), {premise_line});
  int nx = b.nec(x);
  int k = b.axiom(mk_implies(mk_box(b.formula(x)),
                             mk_implies(mk_box(conj_c),
                                        mk_box(mk_implies(box_phi, phi)))),
                  "k");
  int dist = b.mp(k, nx);
  int lob = b.axiom(mk_implies(mk_box(mk_implies(box_phi, phi)), box_phi), "lob");
  int to_box_phi =
      b.chain(mk_implies(mk_box(conj_c), box_phi), {dist, lob});
  // ante -> box c for every component c
  std::vector<int> components;
  FormulaSet gamma_boxes = conclusion.left;
  for (const auto& comp : c) {
    if (set_contains(gamma_boxes, mk_box(comp))) {
      components.push_back(b.taut(mk_implies(ante, mk_box(comp))));
    } else {
      // comp is box g with box g in box G: use the 4 theorem
      int four = derive_four(b, comp->lhs);
      components.push_back(b.chain(mk_implies(ante, mk_box(comp)), {four}));
    }
  }
  int w = derive_box_conj(b, ante, c, components);
  return b.chain(mk_implies(ante, box_phi), {w, to_box_phi});
}

enum class Target { GLH, SH, DH2, DH3 };

HSystem target_system(Target t) {
  switch (t) {
    case Target::GLH: return HSystem::GLH;
    case Target::SH: return HSystem::SH;
    case Target::DH2: return HSystem::DH2;
    case Target::DH3: return HSystem::DH3;
  }
  return HSystem::GLH;
}

struct SeqTranslator {
  Builder& b;
  Target target;

  std::vector<FormulaPtr> sorted(const FormulaSet& s) {
    return {s.begin(), s.end()};
  }

  int translate(const ProofPtr& node) {
    FormulaPtr chi = seq_formula(node->seq);
    switch (node->rule) {
      case Rule::Init:
      case Rule::InitBot:
        return b.taut(chi);
      case Rule::Weak:
      case Rule::ImpL:
      case Rule::ImpR:
      case Rule::Cut: {
        std::vector<int> deps;
        deps.reserve(node->premises.size());
        for (const auto& q : node->premises) deps.push_back(translate(q));
        return b.chain(chi, deps);
      }
      case Rule::GLBox: {
        if (target == Target::GLH) {
          int prem = translate(node->premises[0]);
          return translate_glbox_glh(b, node->seq, node->premises[0]->seq, prem);
        }
        if (target == Target::SH)
          return b.axiom(chi, "glh");
        // shaped axiom in the D systems
        std::vector<FormulaPtr> gamma = sorted(unbox_members(node->seq.left));
        std::vector<FormulaPtr> delta = sorted(unbox_members(node->seq.right));
        return b.axiom(chi, target == Target::DH2 ? "d2" : "d3", gamma, delta);
      }
      case Rule::LiftS:
        // the GL subtree collapses into one GL-theorem axiom line
        return b.axiom(chi, "glh");
      case Rule::BoxLS: {
        int prem = translate(node->premises[0]);
        FormulaPtr phi = node->principal;
        if (!phi) throw HilbertError("box-left node lacks its principal");
        int refl = b.axiom(mk_implies(mk_box(phi), phi), "refl");
        return b.chain(chi, {refl, prem});
      }
      case Rule::DBoxGL: {
        std::vector<FormulaPtr> gamma = sorted(unbox_members(node->seq.left));
        std::vector<FormulaPtr> delta = sorted(unbox_members(node->seq.right));
        return b.axiom(chi, "d2", gamma, delta);
      }
      case Rule::DBoxS: {
        std::vector<FormulaPtr> gamma = sorted(unbox_members(node->seq.left));
        std::vector<FormulaPtr> delta = sorted(unbox_members(node->seq.right));
        return b.axiom(chi, "d3", gamma, delta);
      }
    }
    throw HilbertError("unexpected rule in a sequent proof");
  }
};

HilbertProof finish(Builder& b, const Sequent& end, int last) {
  if (end.left.empty()) {
    std::vector<FormulaPtr> r(end.right.begin(), end.right.end());
    last = b.chain(big_or(r), {last});
  }
  b.conclude(last);
  return b.take();
}

}  // namespace

HilbertProof seq_proof_to_hilbert(const ProofPtr& p, Calculus calculus) {
  ProofReport rep = check_proof(p, calculus, CutPolicy::Unrestricted);
  if (!rep.valid)
    throw HilbertError("invalid input proof for the Hilbert translation");
  Target target = Target::GLH;
  switch (p->seq.kind) {
    case SequentKind::GL: target = Target::GLH; break;
    case SequentKind::S: target = Target::SH; break;
    case SequentKind::D:
      target = calculus == Calculus::Dseq2 ? Target::DH2 : Target::DH3;
      break;
  }
  Builder b(target_system(target));
  SeqTranslator tr{b, target};
  int last = tr.translate(p);
  HilbertProof out = finish(b, p->seq, last);
  HilbertReport check = check_hilbert_proof(out);
  if (!check.valid)
    throw HilbertError("internal: translated Hilbert proof failed the checker: " +
                       check.message);
  return out;
}

// ---------------------------------------------------------------------------
// The collapse lemma
// ---------------------------------------------------------------------------

namespace {

// line proving  box \/ box(delta[i..]) -> \/ box(delta[i..])  in DH
int collapse_step(Builder& b, const std::vector<FormulaPtr>& delta, size_t i) {
  std::vector<FormulaPtr> boxes;
  for (size_t j = i; j < delta.size(); ++j) boxes.push_back(mk_box(delta[j]));
  FormulaPtr goal_body = big_or(boxes);
  FormulaPtr goal = mk_implies(mk_box(goal_body), goal_body);
  if (i + 1 == delta.size()) {
    const FormulaPtr& d = delta[i];
    FormulaPtr twice = mk_or(mk_box(d), mk_box(d));
    int g1 = b.axiom(mk_implies(mk_box(mk_box(d)), mk_box(twice)), "glh");
    int g2 = b.axiom(mk_implies(mk_box(twice), twice), "d");
    return b.chain(goal, {g1, g2});
  }
  FormulaPtr x = big_or(std::vector<FormulaPtr>(boxes.begin() + 1, boxes.end()));
  FormulaPtr d1 = delta[i];
  int rest = collapse_step(b, delta, i + 1);  // box X -> X
  FormulaPtr lifted = mk_or(mk_box(d1), mk_box(x));
  int g1 = b.axiom(mk_implies(mk_box(goal_body), mk_box(lifted)), "glh");
  int g2 = b.axiom(mk_implies(mk_box(lifted), lifted), "d");
  return b.chain(goal, {g1, g2, rest});
}

}  // namespace

HilbertProof derive_collapse_lemma(const std::vector<FormulaPtr>& delta) {
  if (delta.empty()) throw HilbertError("empty delta for the collapse lemma");
  Builder b(HSystem::DH);
  collapse_step(b, delta, 0);
  HilbertProof out = b.take();
  HilbertReport check = check_hilbert_proof(out);
  if (!check.valid)
    throw HilbertError("internal: collapse lemma failed the checker: " +
                       check.message);
  return out;
}

// ---------------------------------------------------------------------------
// DH2 <-> DH translation
// ---------------------------------------------------------------------------

namespace {

int expand_d2_axiom_in_dh(Builder& b, const FormulaPtr& axiom,
                          const std::vector<FormulaPtr>& gamma,
                          const std::vector<FormulaPtr>& delta) {
  FormulaPtr disj = big_or(boxed_list(delta));
  FormulaPtr ante = big_and(boxed_list(gamma));
  int x3 = b.axiom(mk_implies(ante, mk_box(disj)), "glh");
  int collapse;
  if (delta.empty()) {
    collapse = b.axiom(mk_implies(mk_box(mk_bottom()), mk_bottom()),
                       "not_box_bot");
  } else {
    collapse = collapse_step(b, delta, 0);
  }
  return b.chain(axiom, {x3, collapse});
}

int embed_glseq_in_dh2(Builder& b, const FormulaPtr& f) {
  Verdict v = prove(Sequent{SequentKind::GL, {}, FormulaSet{f}},
                    Calculus::GLseq);
  if (!v.provable)
    throw HilbertError("claimed GL theorem is not provable: " + print_formula(f));
  SeqTranslator tr{b, Target::DH2};
  int chi = tr.translate(v.proof);
  return b.chain(f, {chi});
}

}  // namespace

HilbertProof translate_hilbert_d2_d(const HilbertProof& p, D2DDirection dir) {
  HSystem want = dir == D2DDirection::DH2_to_DH ? HSystem::DH2 : HSystem::DH;
  if (p.system != want)
    throw HilbertError("invalid input proof: expected a " + hsystem_name(want) +
                       " proof");
  HilbertReport in = check_hilbert_proof(p);
  if (!in.valid)
    throw HilbertError("invalid input proof: " + in.message);
  Builder b(dir == D2DDirection::DH2_to_DH ? HSystem::DH : HSystem::DH2);
  std::vector<int> mapped(p.lines.size());
  std::vector<FormulaPtr> derived(p.lines.size());
  for (size_t i = 0; i < p.lines.size(); ++i) {
    const HLine& line = p.lines[i];
    if (line.just.kind == HJust::Kind::MP) {
      derived[i] = derived[line.just.imp]->rhs;
      mapped[i] = b.mp(mapped[line.just.imp], mapped[line.just.from]);
      continue;
    }
    if (line.just.kind == HJust::Kind::Nec)
      throw HilbertError("necessitation has no place in the D systems");
    derived[i] = line.formula;
    const std::string& scheme = line.just.scheme;
    if (scheme == "taut") {
      mapped[i] = b.taut(line.formula);
    } else if (scheme == "d2") {
      mapped[i] =
          expand_d2_axiom_in_dh(b, line.formula, line.just.gamma, line.just.delta);
    } else if (scheme == "glh") {
      mapped[i] = embed_glseq_in_dh2(b, line.formula);
    } else if (scheme == "not_box_bot") {
      mapped[i] = b.axiom(line.formula, "d2",
                          std::vector<FormulaPtr>{mk_bottom()}, {});
    } else if (scheme == "d") {
      FormulaPtr a, bb;
      match_d(line.formula, &a, &bb);
      mapped[i] = b.axiom(line.formula, "d2",
                          std::vector<FormulaPtr>{mk_or(mk_box(a), mk_box(bb))},
                          std::vector<FormulaPtr>{a, bb});
    } else {
      throw HilbertError("unexpected scheme in the translation: " + scheme);
    }
  }
  // Preserve the final formula exactly.
  b.conclude(b.chain(derived.back(), {mapped.back()}));
  HilbertProof out = b.take();
  HilbertReport check = check_hilbert_proof(out);
  if (!check.valid)
    throw HilbertError("internal: translated proof failed the checker: " +
                       check.message);
  if (!same_formula(check.final_formula, in.final_formula))
    throw HilbertError("internal: translation changed the final formula");
  return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

using nlohmann::json;

namespace {

json lines_to_json(const std::vector<HLine>& lines) {
  json out = json::array();
  for (const auto& line : lines) {
    json j;
    switch (line.just.kind) {
      case HJust::Kind::Axiom: {
        j["formula"] = print_formula(line.formula);
        j["just"] = "axiom";
        j["scheme"] = line.just.scheme;
        if (!line.just.gamma.empty() || !line.just.delta.empty() ||
            line.just.scheme == "d2" || line.just.scheme == "d3") {
          json g = json::array(), d = json::array();
          for (const auto& f : line.just.gamma) g.push_back(print_formula(f));
          for (const auto& f : line.just.delta) d.push_back(print_formula(f));
          j["gamma"] = g;
          j["delta"] = d;
        }
        if (line.just.subproof)
          j["subproof"] = lines_to_json(line.just.subproof->lines);
        break;
      }
      case HJust::Kind::MP:
        j["just"] = "mp";
        j["from"] = line.just.from;
        j["imp"] = line.just.imp;
        break;
      case HJust::Kind::Nec:
        j["just"] = "nec";
        j["from"] = line.just.from;
        break;
    }
    out.push_back(j);
  }
  return out;
}

std::vector<HLine> lines_from_json(const json& arr, HSystem system);

HLine line_from_json(const json& j, HSystem system) {
  HLine line;
  std::string just = j.at("just").get<std::string>();
  if (just == "axiom") {
    line.just.kind = HJust::Kind::Axiom;
    line.formula = parse_formula(j.at("formula").get<std::string>());
    line.just.scheme = j.at("scheme").get<std::string>();
    if (j.contains("gamma"))
      for (const auto& s : j["gamma"])
        line.just.gamma.push_back(parse_formula(s.get<std::string>()));
    if (j.contains("delta"))
      for (const auto& s : j["delta"])
        line.just.delta.push_back(parse_formula(s.get<std::string>()));
    if (j.contains("subproof")) {
      auto sub = std::make_shared<HilbertProof>();
      sub->system = line.just.scheme == "glh"   ? HSystem::GLH
                    : line.just.scheme == "d2" ? HSystem::GLH
                    : line.just.scheme == "d3" ? HSystem::SH
                                               : system;
      sub->lines = lines_from_json(j["subproof"], sub->system);
      line.just.subproof = sub;
    }
  } else if (just == "mp") {
    line.just.kind = HJust::Kind::MP;
    line.just.from = j.at("from").get<int>();
    line.just.imp = j.at("imp").get<int>();
    if (j.contains("formula"))
      line.formula = parse_formula(j["formula"].get<std::string>());
  } else if (just == "nec") {
    line.just.kind = HJust::Kind::Nec;
    line.just.from = j.at("from").get<int>();
    if (j.contains("formula"))
      line.formula = parse_formula(j["formula"].get<std::string>());
  } else {
    throw HilbertError("unknown justification kind: " + just);
  }
  return line;
}

std::vector<HLine> lines_from_json(const json& arr, HSystem system) {
  std::vector<HLine> lines;
  for (const auto& j : arr) lines.push_back(line_from_json(j, system));
  return lines;
}

}  // namespace

std::string hilbert_to_json(const HilbertProof& p) {
  json j;
  j["system"] = hsystem_name(p.system);
  j["lines"] = lines_to_json(p.lines);
  return j.dump(2);
}

HilbertProof hilbert_from_json(const std::string& text) {
  json j = json::parse(text);
  auto system = hsystem_from_name(j.at("system").get<std::string>());
  if (!system) throw HilbertError("unknown system name in proof file");
  HilbertProof p;
  p.system = *system;
  p.lines = lines_from_json(j.at("lines"), p.system);
  return p;
}

}  // namespace provd
