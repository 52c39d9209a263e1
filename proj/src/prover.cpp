#include "provd/prover.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace provd {

namespace {

// ---------------------------------------------------------------------------
// Shared saturation step finding. All of these inverted steps are
// provability-preserving in both directions, so processing them in set
// order keeps verdicts and emitted proofs deterministic.
// ---------------------------------------------------------------------------

FormulaPtr closing_formula(const Sequent& s) {
  for (const auto& f : s.left)
    if (set_contains(s.right, f)) return f;
  return nullptr;
}

bool has_bottom_left(const Sequent& s) {
  return set_contains(s.left, mk_bottom());
}

// First left implication not yet saturated: a->b with a not on the right
// and b not on the left.
FormulaPtr pending_imp_left(const Sequent& s) {
  for (const auto& f : s.left)
    if (f->kind == FKind::Implies && !set_contains(s.right, f->lhs) &&
        !set_contains(s.left, f->rhs))
      return f;
  return nullptr;
}

FormulaPtr pending_imp_right(const Sequent& s) {
  for (const auto& f : s.right)
    if (f->kind == FKind::Implies &&
        !(set_contains(s.left, f->lhs) && set_contains(s.right, f->rhs)))
      return f;
  return nullptr;
}

// First boxed left formula whose body is missing on the left (S-sequents).
FormulaPtr pending_box_left(const Sequent& s) {
  for (const auto& f : s.left)
    if (f->kind == FKind::Box && !set_contains(s.left, f->lhs)) return f;
  return nullptr;
}

// First boxed subformula of the end-sequent absent from both sides.
FormulaPtr pending_box_placement(const Sequent& s, const FormulaSet& boxed_sf) {
  for (const auto& f : boxed_sf)
    if (!set_contains(s.left, f) && !set_contains(s.right, f)) return f;
  return nullptr;
}

ProofPtr close_by_axiom(const Sequent& s) {
  if (FormulaPtr f = closing_formula(s)) {
    Sequent axiom{s.kind, {f}, {f}};
    ProofPtr init = make_node(axiom, Rule::Init, {});
    if (axiom == s) return init;
    return make_node(s, Rule::Weak, {init});
  }
  if (has_bottom_left(s)) {
    Sequent axiom{s.kind, {mk_bottom()}, {}};
    ProofPtr init = make_node(axiom, Rule::InitBot, {});
    if (axiom == s) return init;
    return make_node(s, Rule::Weak, {init});
  }
  return nullptr;
}

ProofPtr weak_to(ProofPtr p, const Sequent& target) {
  if (p->seq == target) return p;
  return make_node(target, Rule::Weak, {std::move(p)});
}

// ---------------------------------------------------------------------------
// Search engine. One instance per prove() call; verdicts for both polarities
// are memoised globally within the call, which is sound here because the
// search has no branch-repetition pruning: termination comes from a
// well-founded measure (boxed left growth across GL-box descents, monotone
// side growth everywhere else), so unprovability of a sequent never depends
// on the path that reached it.
// ---------------------------------------------------------------------------

struct GLRes {
  ProofPtr proof;
  GLFailurePtr fail;
};

struct SRes {
  ProofPtr proof;
  SFailurePtr fail;
};

struct DRes {
  ProofPtr proof;
  D2FailurePtr d2;
  D3FailurePtr d3;
  bool refuted_without_cert = false;
};

std::string sequent_key(const Sequent& s) {
  std::string k(1, static_cast<char>('0' + static_cast<int>(s.kind)));
  for (const auto& f : s.left) k += "," + f->key;
  k += "|";
  for (const auto& f : s.right) k += "," + f->key;
  return k;
}

class Search {
public:
  Search(Calculus calc, CutPolicy policy, const Sequent& end)
      : calc_(calc), policy_(policy) {
    SubformulaClosure sf = subformula_closure(set_union(end.left, end.right));
    boxed_sf_ = sf.boxed;
  }

  GLRes prove_gl(const Sequent& s) {
    auto it = gl_memo_.find(sequent_key(s));
    if (it != gl_memo_.end()) return it->second;
    GLRes r = prove_gl_uncached(s);
    gl_memo_.emplace(sequent_key(s), r);
    return r;
  }

  SRes prove_s(const Sequent& s) {
    auto it = s_memo_.find(sequent_key(s));
    if (it != s_memo_.end()) return it->second;
    SRes r = prove_s_uncached(s);
    s_memo_.emplace(sequent_key(s), r);
    return r;
  }

  DRes prove_d(const Sequent& s) {
    auto it = d_memo_.find(sequent_key(s));
    if (it != d_memo_.end()) return it->second;
    DRes r = prove_d_uncached(s);
    d_memo_.emplace(sequent_key(s), r);
    return r;
  }

private:
  GLRes prove_gl_uncached(const Sequent& s) {
    if (ProofPtr ax = close_by_axiom(s)) return {ax, nullptr};
    if (FormulaPtr imp = pending_imp_left(s)) {
      Sequent p1{SequentKind::GL, s.left, set_insert(s.right, imp->lhs)};
      Sequent p2{SequentKind::GL, set_insert(s.left, imp->rhs), s.right};
      GLRes r1 = prove_gl(p1);
      if (r1.fail) return {nullptr, r1.fail};
      GLRes r2 = prove_gl(p2);
      if (r2.fail) return {nullptr, r2.fail};
      return {make_node(s, Rule::ImpL, {r1.proof, r2.proof}, imp), nullptr};
    }
    if (FormulaPtr imp = pending_imp_right(s)) {
      Sequent p{SequentKind::GL, set_insert(s.left, imp->lhs),
                set_insert(s.right, imp->rhs)};
      GLRes r = prove_gl(p);
      if (r.fail) return {nullptr, r.fail};
      return {make_node(s, Rule::ImpR, {r.proof}, imp), nullptr};
    }
    // Saturated: try a GL-box step on each boxed right formula.
    FormulaSet gamma_star = unbox_members(s.left);
    FormulaSet boxed_left = boxed_members(s.left);
    std::vector<std::pair<FormulaPtr, GLFailurePtr>> children;
    for (const auto& boxed : boxed_members(s.right)) {
      Sequent premise{SequentKind::GL,
                      set_insert(set_union(gamma_star, boxed_left), boxed),
                      {boxed->lhs}};
      GLRes r = prove_gl(premise);
      if (r.proof) {
        Sequent conclusion{SequentKind::GL, boxed_left, {boxed}};
        ProofPtr node = make_node(conclusion, Rule::GLBox, {r.proof},
                                  boxed->lhs, gamma_star);
        return {weak_to(node, s), nullptr};
      }
      children.emplace_back(boxed, r.fail);
    }
    auto fail = std::make_shared<GLFailure>();
    fail->saturated = s;
    fail->children = std::move(children);
    return {nullptr, fail};
  }

  SRes prove_s_uncached(const Sequent& s) {
    if (ProofPtr ax = close_by_axiom(s)) return {ax, nullptr};
    if (FormulaPtr imp = pending_imp_left(s)) {
      Sequent p1{SequentKind::S, s.left, set_insert(s.right, imp->lhs)};
      Sequent p2{SequentKind::S, set_insert(s.left, imp->rhs), s.right};
      SRes r1 = prove_s(p1);
      if (r1.fail) return {nullptr, r1.fail};
      SRes r2 = prove_s(p2);
      if (r2.fail) return {nullptr, r2.fail};
      return {make_node(s, Rule::ImpL, {r1.proof, r2.proof}, imp), nullptr};
    }
    if (FormulaPtr imp = pending_imp_right(s)) {
      Sequent p{SequentKind::S, set_insert(s.left, imp->lhs),
                set_insert(s.right, imp->rhs)};
      SRes r = prove_s(p);
      if (r.fail) return {nullptr, r.fail};
      return {make_node(s, Rule::ImpR, {r.proof}, imp), nullptr};
    }
    if (FormulaPtr boxed = pending_box_left(s)) {
      Sequent p{SequentKind::S, set_insert(s.left, boxed->lhs), s.right};
      SRes r = prove_s(p);
      if (r.fail) return {nullptr, r.fail};
      return {make_node(s, Rule::BoxLS, {r.proof}, boxed->lhs), nullptr};
    }
    // Saturated: the only remaining move re-kinds to a GL-sequent.
    Sequent gl{SequentKind::GL, s.left, s.right};
    GLRes r = prove_gl(gl);
    if (r.proof) return {make_node(s, Rule::LiftS, {r.proof}), nullptr};
    auto fail = std::make_shared<SFailure>();
    fail->saturated = s;
    fail->gl = r.fail;
    return {nullptr, fail};
  }

  DRes prove_d_uncached(const Sequent& s) {
    if (ProofPtr ax = close_by_axiom(s)) return {ax, nullptr, nullptr};
    if (FormulaPtr imp = pending_imp_left(s)) {
      Sequent p1{SequentKind::D, s.left, set_insert(s.right, imp->lhs)};
      Sequent p2{SequentKind::D, set_insert(s.left, imp->rhs), s.right};
      DRes r1 = prove_d(p1);
      if (!r1.proof) return r1;
      DRes r2 = prove_d(p2);
      if (!r2.proof) return r2;
      return {make_node(s, Rule::ImpL, {r1.proof, r2.proof}, imp), nullptr,
              nullptr};
    }
    if (FormulaPtr imp = pending_imp_right(s)) {
      Sequent p{SequentKind::D, set_insert(s.left, imp->lhs),
                set_insert(s.right, imp->rhs)};
      DRes r = prove_d(p);
      if (!r.proof) return r;
      return {make_node(s, Rule::ImpR, {r.proof}, imp), nullptr, nullptr};
    }
    if (calc_ == Calculus::Dseq2 && policy_ == CutPolicy::SemiAnalytic) {
      if (FormulaPtr boxed = pending_box_placement(s, boxed_sf_)) {
        // Analytic cut: both placements must close; the cut formula is a
        // boxed member of SF of the end-sequent, hence of this conclusion.
        Sequent pr{SequentKind::D, s.left, set_insert(s.right, boxed)};
        Sequent pl{SequentKind::D, set_insert(s.left, boxed), s.right};
        DRes r1 = prove_d(pr);
        if (!r1.proof) return r1;
        DRes r2 = prove_d(pl);
        if (!r2.proof) return r2;
        return {make_node(s, Rule::Cut, {r1.proof, r2.proof}, boxed), nullptr,
                nullptr};
      }
    }
    FormulaSet boxed_left = boxed_members(s.left);
    FormulaSet boxed_right = boxed_members(s.right);
    FormulaSet psi_star = unbox_members(s.left);
    FormulaSet phi_star = unbox_members(s.right);
    if (calc_ == Calculus::Dseq2) {
      Sequent premise{SequentKind::GL, set_union(psi_star, boxed_left),
                      boxed_right};
      GLRes r = prove_gl(premise);
      if (r.proof) {
        Sequent conclusion{SequentKind::D, boxed_left, boxed_right};
        ProofPtr node = make_node(conclusion, Rule::DBoxGL, {r.proof}, nullptr,
                                  psi_star, phi_star);
        return {weak_to(node, s), nullptr, nullptr};
      }
      DRes fail;
      if (policy_ == CutPolicy::SemiAnalytic) {
        auto d2 = std::make_shared<D2Failure>();
        d2->saturated = s;
        d2->psi_star = psi_star;
        d2->phi_star = phi_star;
        d2->gl = r.fail;
        fail.d2 = d2;
      } else {
        fail.refuted_without_cert = true;
      }
      return fail;
    }
    // Dseq3
    Sequent premise{SequentKind::S, boxed_left, boxed_right};
    SRes r = prove_s(premise);
    if (r.proof) {
      Sequent conclusion{SequentKind::D, boxed_left, boxed_right};
      ProofPtr node = make_node(conclusion, Rule::DBoxS, {r.proof}, nullptr,
                                psi_star, phi_star);
      return {weak_to(node, s), nullptr, nullptr};
    }
    auto d3 = std::make_shared<D3Failure>();
    d3->saturated = s;
    d3->psi_star = psi_star;
    d3->phi_star = phi_star;
    d3->s = r.fail;
    return {nullptr, nullptr, d3};
  }

  Calculus calc_;
  CutPolicy policy_;
  FormulaSet boxed_sf_;
  std::map<std::string, GLRes> gl_memo_;
  std::map<std::string, SRes> s_memo_;
  std::map<std::string, DRes> d_memo_;
};

}  // namespace

Verdict prove(const Sequent& s, Calculus calculus, CutPolicy policy) {
  if (policy == CutPolicy::Unrestricted)
    throw ProverError("the prover searches cut-free or semi-analytic proofs only");
  if (policy == CutPolicy::SemiAnalytic && calculus != Calculus::Dseq2)
    throw ProverError("the semi-analytic policy applies to dseq2 only");
  switch (s.kind) {
    case SequentKind::GL: break;  // admitted by every calculus
    case SequentKind::S:
      if (calculus != Calculus::Sseq && calculus != Calculus::Dseq3)
        throw ProverError("S-sequents belong to sseq and dseq3");
      break;
    case SequentKind::D:
      if (calculus != Calculus::Dseq2 && calculus != Calculus::Dseq3)
        throw ProverError("D-sequents belong to dseq2 and dseq3");
      break;
  }
  Search search(calculus, policy, s);
  Verdict v;
  switch (s.kind) {
    case SequentKind::GL: {
      GLRes r = search.prove_gl(s);
      if (r.proof) {
        v.provable = true;
        v.proof = r.proof;
      } else {
        v.certificate = FailureCertificate{s, r.fail, nullptr, nullptr, nullptr};
      }
      break;
    }
    case SequentKind::S: {
      SRes r = search.prove_s(s);
      if (r.proof) {
        v.provable = true;
        v.proof = r.proof;
      } else {
        v.certificate = FailureCertificate{s, nullptr, r.fail, nullptr, nullptr};
      }
      break;
    }
    case SequentKind::D: {
      DRes r = search.prove_d(s);
      if (r.proof) {
        v.provable = true;
        v.proof = r.proof;
      } else if (r.d2) {
        v.certificate = FailureCertificate{s, nullptr, nullptr, r.d2, nullptr};
      } else if (r.d3) {
        v.certificate = FailureCertificate{s, nullptr, nullptr, nullptr, r.d3};
      }
      break;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Public saturation
// ---------------------------------------------------------------------------

namespace {

void saturate_walk(const Sequent& s, SaturateMode mode,
                   const FormulaSet& boxed_sf, std::vector<Sequent>& open,
                   std::vector<ProofPtr>& closed, bool& all_closed) {
  if (ProofPtr ax = close_by_axiom(s)) {
    closed.push_back(ax);
    return;
  }
  if (FormulaPtr imp = pending_imp_left(s)) {
    Sequent p1{s.kind, s.left, set_insert(s.right, imp->lhs)};
    Sequent p2{s.kind, set_insert(s.left, imp->rhs), s.right};
    saturate_walk(p1, mode, boxed_sf, open, closed, all_closed);
    saturate_walk(p2, mode, boxed_sf, open, closed, all_closed);
    return;
  }
  if (FormulaPtr imp = pending_imp_right(s)) {
    Sequent p{s.kind, set_insert(s.left, imp->lhs),
              set_insert(s.right, imp->rhs)};
    saturate_walk(p, mode, boxed_sf, open, closed, all_closed);
    return;
  }
  if (mode == SaturateMode::ImpBoxLeft) {
    if (FormulaPtr boxed = pending_box_left(s)) {
      Sequent p{s.kind, set_insert(s.left, boxed->lhs), s.right};
      saturate_walk(p, mode, boxed_sf, open, closed, all_closed);
      return;
    }
  }
  if (mode == SaturateMode::ImpAnalyticBox) {
    if (FormulaPtr boxed = pending_box_placement(s, boxed_sf)) {
      Sequent pr{s.kind, s.left, set_insert(s.right, boxed)};
      Sequent pl{s.kind, set_insert(s.left, boxed), s.right};
      saturate_walk(pr, mode, boxed_sf, open, closed, all_closed);
      saturate_walk(pl, mode, boxed_sf, open, closed, all_closed);
      return;
    }
  }
  open.push_back(s);
  all_closed = false;
}

// Rebuilds the closed proof fragment for saturate() when every branch closed.
ProofPtr rebuild_closed(const Sequent& s, SaturateMode mode,
                        const FormulaSet& boxed_sf) {
  if (ProofPtr ax = close_by_axiom(s)) return ax;
  if (FormulaPtr imp = pending_imp_left(s)) {
    Sequent p1{s.kind, s.left, set_insert(s.right, imp->lhs)};
    Sequent p2{s.kind, set_insert(s.left, imp->rhs), s.right};
    return make_node(s, Rule::ImpL,
                     {rebuild_closed(p1, mode, boxed_sf),
                      rebuild_closed(p2, mode, boxed_sf)},
                     imp);
  }
  if (FormulaPtr imp = pending_imp_right(s)) {
    Sequent p{s.kind, set_insert(s.left, imp->lhs),
              set_insert(s.right, imp->rhs)};
    return make_node(s, Rule::ImpR, {rebuild_closed(p, mode, boxed_sf)}, imp);
  }
  if (mode == SaturateMode::ImpBoxLeft) {
    if (FormulaPtr boxed = pending_box_left(s)) {
      Sequent p{s.kind, set_insert(s.left, boxed->lhs), s.right};
      return make_node(s, Rule::BoxLS, {rebuild_closed(p, mode, boxed_sf)},
                       boxed->lhs);
    }
  }
  if (mode == SaturateMode::ImpAnalyticBox) {
    if (FormulaPtr boxed = pending_box_placement(s, boxed_sf)) {
      Sequent pr{s.kind, s.left, set_insert(s.right, boxed)};
      Sequent pl{s.kind, set_insert(s.left, boxed), s.right};
      return make_node(s, Rule::Cut,
                       {rebuild_closed(pr, mode, boxed_sf),
                        rebuild_closed(pl, mode, boxed_sf)},
                       boxed);
    }
  }
  return nullptr;
}

}  // namespace

SaturateResult saturate(const Sequent& s, SaturateMode mode) {
  SaturateResult result;
  FormulaSet boxed_sf =
      subformula_closure(set_union(s.left, s.right)).boxed;
  bool all_closed = true;
  std::vector<ProofPtr> closed;
  saturate_walk(s, mode, boxed_sf, result.open, closed, all_closed);
  if (all_closed) result.closed_proof = rebuild_closed(s, mode, boxed_sf);
  return result;
}

// ---------------------------------------------------------------------------
// Countermodels
// ---------------------------------------------------------------------------

namespace {

void collect_cert_vars(const GLFailurePtr& node, std::set<std::string>& vars) {
  for (const auto& v : variables_of(node->saturated.left)) vars.insert(v);
  for (const auto& v : variables_of(node->saturated.right)) vars.insert(v);
  for (const auto& [f, child] : node->children) collect_cert_vars(child, vars);
}

struct GLModelBuilder {
  std::vector<std::string> worlds;
  std::vector<std::pair<std::string, std::string>> rel;
  std::map<std::string, Valuation> val;
  std::vector<std::string> vocab;

  std::string add(const GLFailurePtr& node) {
    std::string name = "w" + std::to_string(worlds.size());
    worlds.push_back(name);
    Valuation v;
    for (const auto& p : vocab)
      v[p] = set_contains(node->saturated.left, mk_var(p));
    val[name] = v;
    for (const auto& [f, child] : node->children) {
      std::string child_name = add(child);
      rel.emplace_back(name, child_name);
    }
    return name;
  }
};

Valuation world_valuation(const KripkeModel& m, const std::string& w) {
  return m.val[m.index_of(w)];
}

Valuation left_member_valuation(const FormulaSet& left,
                                const std::vector<std::string>& vocab) {
  Valuation v;
  for (const auto& p : vocab) v[p] = set_contains(left, mk_var(p));
  return v;
}

std::vector<std::string> cert_vocabulary(const FailureCertificate& cert) {
  std::set<std::string> vars;
  for (const auto& v : variables_of(cert.end_sequent.left)) vars.insert(v);
  for (const auto& v : variables_of(cert.end_sequent.right)) vars.insert(v);
  return {vars.begin(), vars.end()};
}

}  // namespace

std::pair<KripkeModel, std::string> build_gl_countermodel(
    const GLFailurePtr& cert, std::vector<std::string> vocabulary) {
  if (!cert) throw ProverError("wrong certificate kind: no GL certificate");
  std::set<std::string> vars(vocabulary.begin(), vocabulary.end());
  collect_cert_vars(cert, vars);
  GLModelBuilder b;
  b.vocab.assign(vars.begin(), vars.end());
  std::string root = b.add(cert);
  KripkeModel m = validate_model(b.worlds, b.rel, b.val);
  return {m, root};
}

Countermodel extract_countermodel(const FailureCertificate& cert) {
  std::vector<std::string> vocab = cert_vocabulary(cert);
  Countermodel cm;
  if (cert.gl) {
    auto [model, root] = build_gl_countermodel(cert.gl, vocab);
    cm.model = model;
    cm.designated = root;
  } else if (cert.s) {
    // Strongly constant extension over the GL countermodel; every tail world
    // and the limit copy the designated world's variable values.
    auto [model, root] = build_gl_countermodel(cert.s->gl, vocab);
    Valuation v = world_valuation(model, root);
    cm.tail = build_tail_limit(model, root, {}, v, v);
    cm.model = model;
    cm.designated = "limit";
  } else if (cert.d2) {
    auto [model, root] = build_gl_countermodel(cert.d2->gl, vocab);
    Valuation tail_v = world_valuation(model, root);
    Valuation limit_v = left_member_valuation(cert.d2->saturated.left, vocab);
    cm.tail = build_tail_limit(model, root, {}, tail_v, limit_v);
    cm.model = model;
    cm.designated = "limit";
  } else if (cert.d3) {
    auto [model, root] = build_gl_countermodel(cert.d3->s->gl, vocab);
    Valuation tail_v = world_valuation(model, root);
    Valuation limit_v = left_member_valuation(cert.d3->saturated.left, vocab);
    cm.tail = build_tail_limit(model, root, {}, tail_v, limit_v);
    cm.model = model;
    cm.designated = "limit";
  } else {
    throw ProverError("wrong certificate kind: empty certificate");
  }
  if (!verify_countermodel(cert.end_sequent, cm))
    throw ProverError("internal error: extracted countermodel failed verification");
  return cm;
}

bool verify_countermodel(const Sequent& end, const Countermodel& cm) {
  if (end.kind == SequentKind::GL) {
    for (const auto& f : end.left)
      if (!eval_at(cm.model, cm.designated, f)) return false;
    for (const auto& f : end.right)
      if (eval_at(cm.model, cm.designated, f)) return false;
    return true;
  }
  if (!cm.tail) return false;
  for (const auto& f : end.left)
    if (!eval_tail_limit(*cm.tail, f).at_limit) return false;
  for (const auto& f : end.right)
    if (eval_tail_limit(*cm.tail, f).at_limit) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Abstract S-level decision over a base-logic oracle
// ---------------------------------------------------------------------------

namespace {

bool s_over_oracle_walk(const Sequent& s, const GLOracle& oracle) {
  if (closing_formula(s) || has_bottom_left(s)) return true;
  if (FormulaPtr imp = pending_imp_left(s)) {
    Sequent p1{s.kind, s.left, set_insert(s.right, imp->lhs)};
    Sequent p2{s.kind, set_insert(s.left, imp->rhs), s.right};
    return s_over_oracle_walk(p1, oracle) && s_over_oracle_walk(p2, oracle);
  }
  if (FormulaPtr imp = pending_imp_right(s)) {
    Sequent p{s.kind, set_insert(s.left, imp->lhs),
              set_insert(s.right, imp->rhs)};
    return s_over_oracle_walk(p, oracle);
  }
  if (FormulaPtr boxed = pending_box_left(s)) {
    Sequent p{s.kind, set_insert(s.left, boxed->lhs), s.right};
    return s_over_oracle_walk(p, oracle);
  }
  return oracle(s.left, s.right);
}

}  // namespace

bool prove_s_over_oracle(const FormulaSet& left, const FormulaSet& right,
                         const GLOracle& oracle) {
  Sequent s{SequentKind::S, left, right};
  return s_over_oracle_walk(s, oracle);
}

}  // namespace provd
