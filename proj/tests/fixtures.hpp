// Hand-built proof trees for the worked examples, spelled out over the core
// connectives (| and ~ are abbreviations, so their rules become impl/impr
// steps). Shared by the unit tests and the acceptance suite.

#pragma once

#include "provd/calculi.hpp"

namespace provd::fixtures {

inline Sequent gl(const FormulaSet& l, const FormulaSet& r) {
  return {SequentKind::GL, l, r};
}
inline Sequent sk(const FormulaSet& l, const FormulaSet& r) {
  return {SequentKind::S, l, r};
}
inline Sequent dk(const FormulaSet& l, const FormulaSet& r) {
  return {SequentKind::D, l, r};
}

inline ProofPtr init(const Sequent& s) { return make_node(s, Rule::Init, {}); }

inline ProofPtr weak(ProofPtr p, Sequent target) {
  return make_node(std::move(target), Rule::Weak, {std::move(p)});
}

// Closes  G => D  by init on f (weakening when the sequent is larger).
inline ProofPtr close_with(const FormulaPtr& f, const Sequent& s) {
  Sequent axiom{s.kind, {f}, {f}};
  ProofPtr i = init(axiom);
  return axiom == s ? i : weak(i, s);
}

// The GL-sequent subproof shared by Examples 3.1 and 3.2:
//   x, box x (=>|=s>) box p, box q     where x = box p | box q
inline ProofPtr example_3x_disjunction_part(SequentKind kind) {
  FormulaPtr p = mk_var("p"), q = mk_var("q");
  FormulaPtr x = mk_or(mk_box(p), mk_box(q));
  FormulaPtr np = mk_not(mk_box(p));
  FormulaPtr bx = mk_box(x);
  Sequent want{kind, make_set({x, bx}), make_set({mk_box(p), mk_box(q)})};
  // right premise of impl on x: box q joins the left
  ProofPtr q_side = close_with(
      mk_box(q),
      Sequent{kind, make_set({mk_box(q), x, bx}), make_set({mk_box(p), mk_box(q)})});
  // left premise: ~box p joins the right, then impr on it closes via box p
  ProofPtr p_side = close_with(
      mk_box(p), Sequent{kind, make_set({mk_box(p), x, bx}),
                         make_set({mk_box(p), mk_box(q), mk_bottom()})});
  ProofPtr impr_np =
      make_node(Sequent{kind, make_set({x, bx}),
                        make_set({mk_box(p), mk_box(q), np})},
                Rule::ImpR, {p_side}, np);
  return make_node(want, Rule::ImpL, {impr_np, q_side}, x);
}

// Wraps  box x =d> box p, box q  (however derived) into the displayed
// conclusion  =d> box(box p | box q) -> box p | box q.
inline ProofPtr example_3x_wrap(ProofPtr dstep) {
  FormulaPtr p = mk_var("p"), q = mk_var("q");
  FormulaPtr x = mk_or(mk_box(p), mk_box(q));
  FormulaPtr np = mk_not(mk_box(p));
  FormulaPtr bx = mk_box(x);
  ProofPtr prem1 = weak(std::move(dstep),
                        dk(make_set({np, bx}), make_set({mk_box(p), mk_box(q)})));
  ProofPtr prem2 = make_node(
      dk(make_set({mk_bottom(), np, bx}), make_set({mk_box(q)})), Rule::Weak,
      {make_node(dk({mk_bottom()}, {}), Rule::InitBot, {})});
  ProofPtr impl_np = make_node(dk(make_set({np, bx}), make_set({mk_box(q)})),
                               Rule::ImpL, {prem1, prem2}, np);
  ProofPtr impr_x = make_node(dk(make_set({bx}), make_set({x})), Rule::ImpR,
                              {impl_np}, x);
  return make_node(dk({}, {mk_implies(bx, x)}), Rule::ImpR, {impr_x},
                   mk_implies(bx, x));
}

// Example 3.1: cut-free Dseq2 proof of  =d> box(box p | box q) -> box p | box q
inline ProofPtr example_31() {
  FormulaPtr p = mk_var("p"), q = mk_var("q");
  FormulaPtr x = mk_or(mk_box(p), mk_box(q));
  ProofPtr glpart = example_3x_disjunction_part(SequentKind::GL);
  ProofPtr dbox = make_node(
      dk(make_set({mk_box(x)}), make_set({mk_box(p), mk_box(q)})), Rule::DBoxGL,
      {glpart}, nullptr, FormulaSet{make_set({x})}, FormulaSet{make_set({p, q})});
  return example_3x_wrap(dbox);
}

// Example 3.2: cut-free Dseq3 proof of the same sequent.
inline ProofPtr example_32() {
  FormulaPtr p = mk_var("p"), q = mk_var("q");
  FormulaPtr x = mk_or(mk_box(p), mk_box(q));
  FormulaPtr bx = mk_box(x);
  ProofPtr spart = example_3x_disjunction_part(SequentKind::S);
  ProofPtr boxl = make_node(
      sk(make_set({bx}), make_set({mk_box(p), mk_box(q)})), Rule::BoxLS,
      {spart}, x);
  ProofPtr dbox = make_node(
      dk(make_set({bx}), make_set({mk_box(p), mk_box(q)})), Rule::DBoxS,
      {boxl}, nullptr, FormulaSet{make_set({x})}, FormulaSet{make_set({p, q})});
  return example_3x_wrap(dbox);
}

// Example 3.3: cut-free Dseq2 proof of  =d> ~box bot
inline ProofPtr example_33() {
  FormulaPtr bot = mk_bottom();
  FormulaPtr bb = mk_box(bot);
  ProofPtr ib = make_node(gl({bot}, {}), Rule::InitBot, {});
  ProofPtr w = weak(ib, gl(make_set({bot, bb}), {}));
  ProofPtr dbox = make_node(dk({bb}, {}), Rule::DBoxGL, {w}, nullptr,
                            FormulaSet{make_set({bot})}, FormulaSet{{}});
  ProofPtr w2 = weak(dbox, dk({bb}, {bot}));
  return make_node(dk({}, {mk_not(bb)}), Rule::ImpR, {w2}, mk_not(bb));
}

// The semi-analytic Dseq2 proof of  box box box p =d> box p  with the cut
// on box box p, as displayed in the cut-elimination failure theorem.
inline ProofPtr theorem_48_tree() {
  FormulaPtr p = mk_var("p");
  FormulaPtr b1 = mk_box(p), b2 = mk_box(b1), b3 = mk_box(b2);
  ProofPtr left = make_node(
      dk({b3}, {b2}), Rule::DBoxGL,
      {weak(init(gl({b2}, {b2})), gl(make_set({b2, b3}), {b2}))}, nullptr,
      FormulaSet{make_set({b2})}, FormulaSet{make_set({b1})});
  ProofPtr right = make_node(
      dk({b2}, {b1}), Rule::DBoxGL,
      {weak(init(gl({b1}, {b1})), gl(make_set({b1, b2}), {b1}))}, nullptr,
      FormulaSet{make_set({b1})}, FormulaSet{make_set({p})});
  return make_node(dk({b3}, {b1}), Rule::Cut, {left, right}, b2);
}

}  // namespace provd::fixtures
