#include "provd/transforms.hpp"

#include <algorithm>

#include "provd/prover.hpp"

namespace provd {

namespace {

ProofPtr weak_to(ProofPtr p, const Sequent& target) {
  if (p->seq == target) return p;
  if (!set_subset(p->seq.left, target.left) ||
      !set_subset(p->seq.right, target.right) || p->seq.kind != target.kind)
    throw TransformError("internal: weakening target does not contain the proof");
  return make_node(target, Rule::Weak, {std::move(p)});
}

Sequent with_kind(const Sequent& s, SequentKind k) {
  return Sequent{k, s.left, s.right};
}

// Annotation or deterministic reconstruction of an impl/impr/cut principal.
FormulaPtr node_principal(const ProofNode& n) {
  if (n.principal) return n.principal;
  switch (n.rule) {
    case Rule::ImpL:
      for (const auto& f : n.seq.left)
        if (f->kind == FKind::Implies &&
            set_contains(n.premises[0]->seq.right, f->lhs) &&
            set_contains(n.premises[1]->seq.left, f->rhs))
          return f;
      break;
    case Rule::ImpR:
      for (const auto& f : n.seq.right)
        if (f->kind == FKind::Implies &&
            set_contains(n.premises[0]->seq.left, f->lhs) &&
            set_contains(n.premises[0]->seq.right, f->rhs))
          return f;
      break;
    case Rule::Cut:
      for (const auto& f : n.premises[0]->seq.right)
        if (set_contains(n.premises[1]->seq.left, f)) return f;
      break;
    case Rule::BoxLS:
      for (const auto& f : n.seq.left)
        if (f->kind == FKind::Box &&
            set_contains(n.premises[0]->seq.left, f->lhs))
          return f->lhs;
      break;
    default: break;
  }
  throw TransformError("cannot reconstruct the principal formula of a " +
                       rule_name(n.rule) + " node");
}

}  // namespace

// ---------------------------------------------------------------------------
// GL into D
// ---------------------------------------------------------------------------

ProofPtr embed_gl_into_d(const ProofPtr& p, Calculus target) {
  if (target != Calculus::Dseq2 && target != Calculus::Dseq3)
    throw TransformError("embedding targets dseq2 or dseq3");
  if (p->seq.kind != SequentKind::GL)
    throw TransformError("embedding expects a GL-kind proof");
  if (p->rule == Rule::GLBox) {
    FormulaSet gamma = p->gamma ? *p->gamma : unbox_members(p->seq.left);
    Sequent conclusion = with_kind(p->seq, SequentKind::D);
    if (target == Calculus::Dseq2) {
      Sequent premise{SequentKind::GL, set_union(gamma, p->seq.left),
                      p->seq.right};
      return make_node(conclusion, Rule::DBoxGL, {weak_to(p, premise)}, nullptr,
                       gamma, unbox_members(p->seq.right));
    }
    ProofPtr lifted =
        make_node(with_kind(p->seq, SequentKind::S), Rule::LiftS, {p});
    return make_node(conclusion, Rule::DBoxS, {lifted}, nullptr, gamma,
                     unbox_members(p->seq.right));
  }
  std::vector<ProofPtr> premises;
  premises.reserve(p->premises.size());
  for (const auto& q : p->premises) premises.push_back(embed_gl_into_d(q, target));
  return make_node(with_kind(p->seq, SequentKind::D), p->rule,
                   std::move(premises), p->principal, p->gamma, p->delta);
}

// ---------------------------------------------------------------------------
// D into S
// ---------------------------------------------------------------------------

namespace {

// box-left steps absorbing every member of gamma \ box gamma, top down.
ProofPtr absorb_left_bodies(ProofPtr p, const FormulaSet& bodies) {
  for (const auto& body : bodies) {
    Sequent conclusion{SequentKind::S, set_erase(p->seq.left, body),
                       p->seq.right};
    p = make_node(conclusion, Rule::BoxLS, {std::move(p)}, body);
  }
  return p;
}

}  // namespace

ProofPtr project_d_to_s(const ProofPtr& p) {
  if (p->seq.kind != SequentKind::D)
    throw TransformError("projection expects a D-kind proof");
  switch (p->rule) {
    case Rule::DBoxGL: {
      FormulaSet gamma = p->gamma ? *p->gamma : unbox_members(p->seq.left);
      ProofPtr lifted = make_node(
          with_kind(p->premises[0]->seq, SequentKind::S), Rule::LiftS,
          {p->premises[0]});
      FormulaSet bodies;  // gamma members that are not boxes of gamma members
      for (const auto& g : gamma)
        if (!set_contains(p->seq.left, g)) bodies = set_insert(bodies, g);
      ProofPtr chained = absorb_left_bodies(lifted, bodies);
      return weak_to(chained, with_kind(p->seq, SequentKind::S));
    }
    case Rule::DBoxS:
      return weak_to(p->premises[0], with_kind(p->seq, SequentKind::S));
    case Rule::Init:
    case Rule::InitBot:
      return make_node(with_kind(p->seq, SequentKind::S), p->rule, {});
    case Rule::Weak:
    case Rule::ImpL:
    case Rule::ImpR:
    case Rule::Cut: {
      std::vector<ProofPtr> premises;
      for (const auto& q : p->premises) premises.push_back(project_d_to_s(q));
      return make_node(with_kind(p->seq, SequentKind::S), p->rule,
                       std::move(premises), p->principal, p->gamma, p->delta);
    }
    default:
      throw TransformError("unexpected rule in a D-kind proof: " +
                           rule_name(p->rule));
  }
}

// ---------------------------------------------------------------------------
// Left-implication inversion (proof surgery on GLseq proofs)
// ---------------------------------------------------------------------------

namespace {

// which = 1: (C.left \ imp) => C.right, a     which = 2: (C.left \ imp), b => C.right
Sequent inversion_target(const Sequent& c, const FormulaPtr& imp, int which) {
  FormulaSet left = set_erase(c.left, imp);
  if (which == 1)
    return {SequentKind::GL, left, set_insert(c.right, imp->lhs)};
  return {SequentKind::GL, set_insert(left, imp->rhs), c.right};
}

ProofPtr invert(const ProofPtr& p, const FormulaPtr& imp, int which);

ProofPtr invert_init(const ProofPtr& p, const FormulaPtr& imp, int which) {
  // p proves imp => imp; rebuild the target around an axiom.
  const FormulaPtr a = imp->lhs;
  const FormulaPtr b = imp->rhs;
  Sequent target = inversion_target(p->seq, imp, which);
  if (which == 1) {
    // => imp, a   from   a => a, b  by impr
    Sequent ax{SequentKind::GL, {a}, {a}};
    ProofPtr prem = weak_to(make_node(ax, Rule::Init, {}),
                            Sequent{SequentKind::GL, {a}, make_set({a, b})});
    return make_node(target, Rule::ImpR, {prem}, imp);
  }
  // b => imp   from   a, b => b  by impr
  Sequent ax{SequentKind::GL, {b}, {b}};
  ProofPtr prem = weak_to(make_node(ax, Rule::Init, {}),
                          Sequent{SequentKind::GL, make_set({a, b}), {b}});
  return make_node(target, Rule::ImpR, {prem}, imp);
}

ProofPtr invert_cut_on_imp(const ProofPtr& p, const FormulaPtr& imp, int which) {
  // The cut formula is the inverted implication itself: invert both sides of
  // the second premise and reassemble with an impl step under the cut.
  const ProofPtr& p1 = p->premises[0];
  const ProofPtr& p2 = p->premises[1];
  Sequent target = inversion_target(p->seq, imp, which);
  FormulaSet gamma = target.left;  // includes b when which == 2
  ProofPtr y1 = invert(p2, imp, 1);
  ProofPtr y2 = invert(p2, imp, 2);
  Sequent impl_conclusion{SequentKind::GL, set_insert(gamma, imp), target.right};
  Sequent prem1_seq{SequentKind::GL, gamma, set_insert(target.right, imp->lhs)};
  Sequent prem2_seq{SequentKind::GL, set_insert(gamma, imp->rhs), target.right};
  ProofPtr impl_node =
      make_node(impl_conclusion, Rule::ImpL,
                {weak_to(y1, prem1_seq), weak_to(y2, prem2_seq)}, imp);
  ProofPtr x = invert(p1, imp, which);
  Sequent x_target{SequentKind::GL, gamma, set_insert(target.right, imp)};
  return make_node(target, Rule::Cut, {weak_to(x, x_target), impl_node}, imp);
}

ProofPtr invert(const ProofPtr& p, const FormulaPtr& imp, int which) {
  const Sequent& c = p->seq;
  Sequent target = inversion_target(c, imp, which);
  if (!set_contains(c.left, imp)) return weak_to(p, target);
  switch (p->rule) {
    case Rule::Init:
      // c is imp => imp (otherwise imp would not sit on the left)
      return invert_init(p, imp, which);
    case Rule::Weak:
      return weak_to(invert(p->premises[0], imp, which), target);
    case Rule::ImpL: {
      FormulaPtr principal = node_principal(*p);
      if (same_formula(principal, imp)) {
        const ProofPtr& side = which == 1 ? p->premises[0] : p->premises[1];
        return weak_to(invert(side, imp, which), target);
      }
      // Rebuild the impl step with both premises inverted; when the side
      // formula of a premise happens to be imp itself, the premise is used
      // unchanged (the set re-absorbs it).
      const FormulaPtr g = principal->lhs;
      const FormulaPtr d = principal->rhs;
      Sequent n1_seq{SequentKind::GL, target.left,
                     set_insert(target.right, g)};
      Sequent n2_seq{SequentKind::GL, set_insert(target.left, d),
                     target.right};
      ProofPtr n1 = weak_to(invert(p->premises[0], imp, which), n1_seq);
      ProofPtr n2;
      if (same_formula(d, imp)) {
        n2 = weak_to(p->premises[1], n2_seq);  // imp re-enters as side formula
      } else {
        n2 = weak_to(invert(p->premises[1], imp, which), n2_seq);
      }
      return make_node(target, Rule::ImpL, {n1, n2}, principal);
    }
    case Rule::ImpR: {
      FormulaPtr principal = node_principal(*p);
      const FormulaPtr g = principal->lhs;
      const FormulaPtr d = principal->rhs;
      Sequent prem_seq{SequentKind::GL, set_insert(target.left, g),
                       set_insert(target.right, d)};
      ProofPtr prem;
      if (same_formula(g, imp)) {
        prem = weak_to(p->premises[0], prem_seq);
      } else {
        prem = weak_to(invert(p->premises[0], imp, which), prem_seq);
      }
      return make_node(target, Rule::ImpR, {prem}, principal);
    }
    case Rule::Cut: {
      FormulaPtr cutf = node_principal(*p);
      if (same_formula(cutf, imp)) return invert_cut_on_imp(p, imp, which);
      ProofPtr n1 = invert(p->premises[0], imp, which);
      ProofPtr n2 = invert(p->premises[1], imp, which);
      Sequent nat{SequentKind::GL,
                  set_union(n1->seq.left, set_erase(n2->seq.left, cutf)),
                  set_union(set_erase(n1->seq.right, cutf), n2->seq.right)};
      return weak_to(make_node(nat, Rule::Cut, {n1, n2}, cutf), target);
    }
    case Rule::GLBox:
      // glbox conclusions have all-boxed left sides, so imp cannot be there
      throw TransformError("internal: implication inside a glbox conclusion");
    default:
      throw TransformError("inversion applies to GLseq proofs only");
  }
}

}  // namespace

std::pair<ProofPtr, ProofPtr> invert_impl_left(const ProofPtr& p,
                                               const FormulaPtr& imp) {
  if (p->seq.kind != SequentKind::GL)
    throw TransformError("inversion expects a GLseq proof");
  if (imp->kind != FKind::Implies || !set_contains(p->seq.left, imp))
    throw TransformError("formula not present: " + print_formula(imp) +
                         " is not on the left of the end-sequent");
  return {invert(p, imp, 1), invert(p, imp, 2)};
}

// ---------------------------------------------------------------------------
// Reflection-set extraction
// ---------------------------------------------------------------------------

FormulaSet ref_of(const FormulaSet& sigma) {
  FormulaSet out;
  for (const auto& s : sigma) out.push_back(mk_implies(mk_box(s), s));
  return make_set(std::move(out));
}

namespace {

std::pair<FormulaSet, ProofPtr> extract_ref(const ProofPtr& p) {
  if (p->seq.kind == SequentKind::GL) return {{}, p};
  if (p->seq.kind != SequentKind::S)
    throw TransformError("reflection extraction expects an Sseq proof");
  switch (p->rule) {
    case Rule::LiftS:
      return {{}, p->premises[0]};
    case Rule::Init:
    case Rule::InitBot:
      return {{}, make_node(with_kind(p->seq, SequentKind::GL), p->rule, {})};
    case Rule::Weak: {
      auto [sigma, q] = extract_ref(p->premises[0]);
      Sequent target{SequentKind::GL, set_union(ref_of(sigma), p->seq.left),
                     p->seq.right};
      return {sigma, weak_to(q, target)};
    }
    case Rule::ImpL: {
      auto [s1, q1] = extract_ref(p->premises[0]);
      auto [s2, q2] = extract_ref(p->premises[1]);
      FormulaSet sigma = set_union(s1, s2);
      FormulaSet r = ref_of(sigma);
      Sequent n1{SequentKind::GL, set_union(r, p->premises[0]->seq.left),
                 p->premises[0]->seq.right};
      Sequent n2{SequentKind::GL, set_union(r, p->premises[1]->seq.left),
                 p->premises[1]->seq.right};
      Sequent conclusion{SequentKind::GL, set_union(r, p->seq.left),
                         p->seq.right};
      return {sigma, make_node(conclusion, Rule::ImpL,
                               {weak_to(q1, n1), weak_to(q2, n2)},
                               p->principal)};
    }
    case Rule::ImpR: {
      auto [sigma, q] = extract_ref(p->premises[0]);
      FormulaSet r = ref_of(sigma);
      Sequent n{SequentKind::GL, set_union(r, p->premises[0]->seq.left),
                p->premises[0]->seq.right};
      Sequent conclusion{SequentKind::GL, set_union(r, p->seq.left),
                         p->seq.right};
      return {sigma,
              make_node(conclusion, Rule::ImpR, {weak_to(q, n)}, p->principal)};
    }
    case Rule::BoxLS: {
      auto [s0, q] = extract_ref(p->premises[0]);
      FormulaPtr phi = node_principal(*p);
      FormulaSet sigma = set_insert(s0, phi);
      FormulaSet r = ref_of(sigma);
      FormulaPtr refphi = mk_implies(mk_box(phi), phi);
      // (->L) on box phi -> phi: left premise closes on box phi, right
      // premise is the induction hypothesis.
      FormulaSet gamma = set_union(r, p->seq.left);
      Sequent prem1{SequentKind::GL, gamma,
                    set_insert(p->seq.right, mk_box(phi))};
      Sequent ax{SequentKind::GL, {mk_box(phi)}, {mk_box(phi)}};
      ProofPtr left = weak_to(make_node(ax, Rule::Init, {}), prem1);
      Sequent prem2{SequentKind::GL, set_insert(gamma, phi), p->seq.right};
      ProofPtr right = weak_to(q, prem2);
      Sequent conclusion{SequentKind::GL, gamma, p->seq.right};
      return {sigma,
              make_node(conclusion, Rule::ImpL, {left, right}, refphi)};
    }
    case Rule::Cut:
      throw TransformError("input has cuts: reflection extraction needs a cut-free proof");
    default:
      throw TransformError("unexpected rule in an Sseq proof: " +
                           rule_name(p->rule));
  }
}

}  // namespace

std::pair<RefSet, ProofPtr> extract_ref_set(const ProofPtr& p) {
  if (proof_has_cut(p))
    throw TransformError("input has cuts: reflection extraction needs a cut-free proof");
  auto [sigma, q] = extract_ref(p);
  RefSet rs{sigma, ref_of(sigma)};
  return {rs, q};
}

// ---------------------------------------------------------------------------
// Dseq3 -> Dseq2 (semi-analytic)
// ---------------------------------------------------------------------------

namespace {

struct D3toD2 {
  // Leaf of the cut cascade: invert each reflection instance towards the
  // side its sigma-formula was assigned to, then lift with (=d> box).
  ProofPtr leaf(const ProofPtr& gl_proof, const FormulaSet& sigma,
                const FormulaSet& into_left, const Sequent& dbox_seq) {
    ProofPtr cur = gl_proof;
    for (const auto& s : sigma) {
      FormulaPtr r = mk_implies(mk_box(s), s);
      cur = invert(cur, r, set_contains(into_left, s) ? 2 : 1);
    }
    FormulaSet gamma = unbox_members(dbox_seq.left);  // bodies incl. into_left
    FormulaSet prem_left = set_union(gamma, dbox_seq.left);
    Sequent premise{SequentKind::GL, prem_left, dbox_seq.right};
    ProofPtr w = weak_to(cur, premise);
    return make_node(dbox_seq, Rule::DBoxGL, {w}, nullptr, gamma,
                     unbox_members(dbox_seq.right));
  }

  ProofPtr cascade(const ProofPtr& gl_proof, const FormulaSet& sigma,
                   size_t i, const FormulaSet& into_left,
                   const FormulaSet& into_right, const FormulaSet& box_psi,
                   const FormulaSet& box_phi) {
    Sequent here{SequentKind::D, set_union(box_all(into_left), box_psi),
                 set_union(box_all(into_right), box_phi)};
    if (i == sigma.size()) return leaf(gl_proof, sigma, into_left, here);
    const FormulaPtr& s = sigma[i];
    ProofPtr right_branch = cascade(gl_proof, sigma, i + 1, into_left,
                                    set_insert(into_right, s), box_psi, box_phi);
    ProofPtr left_branch = cascade(gl_proof, sigma, i + 1,
                                   set_insert(into_left, s), into_right,
                                   box_psi, box_phi);
    return make_node(here, Rule::Cut, {right_branch, left_branch}, mk_box(s));
  }

  ProofPtr walk(const ProofPtr& p) {
    if (p->seq.kind != SequentKind::D)
      throw TransformError("unexpected non-D node in a Dseq3 proof body");
    switch (p->rule) {
      case Rule::DBoxS: {
        auto [rs, gl_proof] = extract_ref_set(p->premises[0]);
        // Invert small formulas first: when some sigma equals the reflection
        // instance of another, the later inversion must not delete the copy
        // an earlier one placed on the left.
        FormulaSet sigma = rs.sigma;
        std::stable_sort(sigma.begin(), sigma.end(),
                         [](const FormulaPtr& a, const FormulaPtr& b) {
                           return a->key.size() < b->key.size();
                         });
        ProofPtr d2 = cascade(gl_proof, sigma, 0, {}, {}, p->seq.left,
                              p->seq.right);
        return weak_to(d2, p->seq);
      }
      case Rule::Init:
      case Rule::InitBot:
        return p;
      case Rule::Weak:
      case Rule::ImpL:
      case Rule::ImpR: {
        std::vector<ProofPtr> premises;
        for (const auto& q : p->premises) premises.push_back(walk(q));
        return make_node(p->seq, p->rule, std::move(premises), p->principal,
                         p->gamma, p->delta);
      }
      default:
        throw TransformError("unexpected rule in a cut-free Dseq3 proof: " +
                             rule_name(p->rule));
    }
  }
};

}  // namespace

ProofPtr d3_to_d2(const ProofPtr& p) {
  if (p->seq.kind == SequentKind::GL) return p;  // shared GL fragment
  if (p->seq.kind != SequentKind::D)
    throw TransformError("dseq3 to dseq2 translation expects a D-kind proof");
  if (proof_has_cut(p))
    throw TransformError("input has cuts: the translation needs a cut-free Dseq3 proof");
  D3toD2 tr;
  ProofPtr out = tr.walk(p);
  ProofReport rep = check_proof(out, Calculus::Dseq2, CutPolicy::SemiAnalytic);
  if (!rep.valid)
    throw TransformError("internal: translated Dseq2 proof failed the checker");
  return out;
}

// ---------------------------------------------------------------------------
// Dseq2 -> Dseq3 (cut-free)
// ---------------------------------------------------------------------------

namespace {

ProofPtr strip_weak(ProofPtr p) {
  while (p->rule == Rule::Weak) p = p->premises[0];
  return p;
}

struct D2toD3 {
  int reduced = 0;
  int reproved = 0;

  ProofPtr reprove_d3(const Sequent& s) {
    Verdict v = prove(s, Calculus::Dseq3, CutPolicy::NoneAllowed);
    if (!v.provable)
      throw TransformError(
          "internal: the cut-free Dseq3 search failed on a provable sequent");
    ++reproved;
    return v.proof;
  }

  ProofPtr walk(const ProofPtr& p) {
    if (p->seq.kind != SequentKind::D)
      throw TransformError("unexpected non-D node in a Dseq2 proof body");
    switch (p->rule) {
      case Rule::DBoxGL: {
        // Same move as the D-to-S projection, then (=s> =d> box).
        ProofPtr s_proof = project_d_to_s(p);
        // project_d_to_s of a dbox_gl node ends at box G =s> box D
        return make_node(p->seq, Rule::DBoxS, {s_proof}, nullptr, p->gamma,
                         p->delta);
      }
      case Rule::Init:
      case Rule::InitBot:
        return p;
      case Rule::Weak:
      case Rule::ImpL:
      case Rule::ImpR: {
        std::vector<ProofPtr> premises;
        for (const auto& q : p->premises) premises.push_back(walk(q));
        return make_node(p->seq, p->rule, std::move(premises), p->principal,
                         p->gamma, p->delta);
      }
      case Rule::Cut: {
        ProofPtr a = strip_weak(walk(p->premises[0]));
        ProofPtr b = strip_weak(walk(p->premises[1]));
        FormulaPtr cutf = p->principal;
        if (!cutf) {
          for (const auto& f : p->premises[0]->seq.right)
            if (set_contains(p->premises[1]->seq.left, f)) { cutf = f; break; }
        }
        if (!cutf) throw TransformError("cut node lacks a cut formula");
        if (!set_contains(a->seq.right, cutf)) {
          ++reduced;  // the cut formula was only introduced by weakening
          return weak_to(a, p->seq);
        }
        if (!set_contains(b->seq.left, cutf)) {
          ++reduced;
          return weak_to(b, p->seq);
        }
        if (a->rule == Rule::DBoxS && b->rule == Rule::DBoxS) {
          // Displayed principal reduction: push the cut to the S level,
          // then discharge the S-cut by reproving inside the Dseq3 search.
          Sequent s_target{SequentKind::S,
                           set_union(a->seq.left, set_erase(b->seq.left, cutf)),
                           set_union(set_erase(a->seq.right, cutf),
                                     b->seq.right)};
          ++reduced;
          Verdict v = prove(s_target, Calculus::Sseq, CutPolicy::NoneAllowed);
          if (!v.provable)
            throw TransformError(
                "internal: the cut-free Sseq search failed on a provable sequent");
          ++reproved;
          ProofPtr dbox = make_node(with_kind(s_target, SequentKind::D),
                                    Rule::DBoxS, {v.proof}, nullptr,
                                    unbox_members(s_target.left),
                                    unbox_members(s_target.right));
          return weak_to(dbox, p->seq);
        }
        return reprove_d3(p->seq);
      }
      default:
        throw TransformError("unexpected rule in a Dseq2 proof: " +
                             rule_name(p->rule));
    }
  }
};

}  // namespace

TranslationResult d2_to_d3(const ProofPtr& p) {
  if (p->seq.kind == SequentKind::GL) return {p, 0, 0};  // shared GL fragment
  if (p->seq.kind != SequentKind::D)
    throw TransformError("dseq2 to dseq3 translation expects a D-kind proof");
  ProofReport in = check_proof(p, Calculus::Dseq2, CutPolicy::SemiAnalytic);
  if (!in.valid)
    throw TransformError("invalid input proof for the dseq2 to dseq3 translation");
  D2toD3 tr;
  TranslationResult result;
  result.proof = tr.walk(p);
  result.reduced_cuts = tr.reduced;
  result.reproved_cuts = tr.reproved;
  ProofReport rep = check_proof(result.proof, Calculus::Dseq3, CutPolicy::NoneAllowed);
  if (!rep.valid)
    throw TransformError("internal: translated Dseq3 proof failed the checker");
  return result;
}

// ---------------------------------------------------------------------------
// One-step principal cut reduction
// ---------------------------------------------------------------------------

ProofPtr reduce_d_cut(const ProofPtr& p) {
  if (p->rule != Rule::Cut || p->seq.kind != SequentKind::D ||
      p->premises.size() != 2 || p->premises[0]->rule != Rule::DBoxS ||
      p->premises[1]->rule != Rule::DBoxS)
    throw TransformError(
        "configuration mismatch: expected a D-kind cut over two dbox_s nodes");
  const ProofPtr& a = p->premises[0];
  const ProofPtr& b = p->premises[1];
  FormulaPtr cutf = p->principal;
  if (!cutf) {
    for (const auto& f : a->seq.right)
      if (set_contains(b->seq.left, f)) { cutf = f; break; }
  }
  if (!cutf || !set_contains(a->seq.right, cutf) ||
      !set_contains(b->seq.left, cutf))
    throw TransformError("configuration mismatch: no shared cut formula");
  Sequent s_conclusion{SequentKind::S,
                       set_union(a->seq.left, set_erase(b->seq.left, cutf)),
                       set_union(set_erase(a->seq.right, cutf), b->seq.right)};
  ProofPtr s_cut = make_node(s_conclusion, Rule::Cut,
                             {a->premises[0], b->premises[0]}, cutf);
  ProofPtr dbox = make_node(with_kind(s_conclusion, SequentKind::D),
                            Rule::DBoxS, {s_cut}, nullptr,
                            unbox_members(s_conclusion.left),
                            unbox_members(s_conclusion.right));
  ProofPtr out = p->seq == dbox->seq ? dbox : make_node(p->seq, Rule::Weak, {dbox});
  return out;
}

}  // namespace provd
