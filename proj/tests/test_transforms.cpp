#include "doctest.h"
#include "fixtures.hpp"
#include "provd/prover.hpp"
#include "provd/transforms.hpp"

using namespace provd;

namespace {

ProofPtr prove_or_die(const std::string& text, Calculus c,
                      CutPolicy p = CutPolicy::NoneAllowed) {
  Verdict v = prove(parse_sequent(text), c, p);
  REQUIRE(v.provable);
  return v.proof;
}

}  // namespace

TEST_CASE("embed_gl_into_d wraps glbox-ended proofs and re-kinds the rest") {
  ProofPtr loeb = prove_or_die("=> box(box p -> p) -> box p", Calculus::GLseq);
  for (Calculus target : {Calculus::Dseq2, Calculus::Dseq3}) {
    ProofPtr d = embed_gl_into_d(loeb, target);
    CHECK(d->seq == parse_sequent("=d> box(box p -> p) -> box p"));
    CHECK(check_proof(d, target, CutPolicy::NoneAllowed).valid);
  }

  // Init p => p turns into the D-kind initial sequent directly.
  ProofPtr init = make_node(parse_sequent("p => p"), Rule::Init, {});
  ProofPtr d3 = embed_gl_into_d(init, Calculus::Dseq3);
  CHECK(d3->rule == Rule::Init);
  CHECK(d3->seq == parse_sequent("p =d> p"));

  // A proof ending in glbox gets the two-node wrapper.
  ProofPtr boxed = prove_or_die("box p => box p, box q", Calculus::GLseq);
  ProofPtr k = prove_or_die("=> box(p -> q) -> box p -> box q", Calculus::GLseq);
  ProofPtr kd = embed_gl_into_d(k, Calculus::Dseq2);
  CHECK(check_proof(kd, Calculus::Dseq2, CutPolicy::NoneAllowed).valid);
  (void)boxed;
}

TEST_CASE("project_d_to_s on the worked examples") {
  ProofPtr s1 = project_d_to_s(fixtures::example_31());
  CHECK(s1->seq ==
        parse_sequent("=s> box(box p | box q) -> box p | box q"));
  CHECK(check_proof(s1, Calculus::Sseq, CutPolicy::NoneAllowed).valid);

  ProofPtr s2 = project_d_to_s(fixtures::example_32());
  CHECK(s2->seq == s1->seq);
  CHECK(check_proof(s2, Calculus::Sseq, CutPolicy::NoneAllowed).valid);

  // The cut survives as an S-kind cut.
  ProofPtr s3 = project_d_to_s(fixtures::theorem_48_tree());
  CHECK(s3->seq == parse_sequent("box box box p =s> box p"));
  ProofReport rep = check_proof(s3, Calculus::Sseq, CutPolicy::Unrestricted);
  CHECK(rep.valid);
  REQUIRE(rep.cut_inventory.size() == 1);
  CHECK(rep.cut_inventory[0].kind == SequentKind::S);
}

TEST_CASE("invert_impl_left") {
  // (p -> q), p => q inverts to p => q, p and q, p => q
  ProofPtr base = prove_or_die("p -> q, p => q", Calculus::GLseq);
  auto [l, r] = invert_impl_left(base, parse_formula("p -> q"));
  CHECK(l->seq == parse_sequent("p => q, p"));
  CHECK(r->seq == parse_sequent("q, p => q"));
  CHECK(check_proof(l, Calculus::GLseq, CutPolicy::NoneAllowed).valid);
  CHECK(check_proof(r, Calculus::GLseq, CutPolicy::NoneAllowed).valid);

  // a dummy r -> r on the left is removed by inversion
  ProofPtr loeb = prove_or_die("=> box(box p -> p) -> box p", Calculus::GLseq);
  ProofPtr padded =
      make_node(parse_sequent("r -> r => box(box p -> p) -> box p"),
                Rule::Weak, {loeb});
  auto [l2, r2] = invert_impl_left(padded, parse_formula("r -> r"));
  CHECK(l2->seq == parse_sequent("=> box(box p -> p) -> box p, r"));
  CHECK(r2->seq == parse_sequent("r => box(box p -> p) -> box p"));
  CHECK(check_proof(l2, Calculus::GLseq, CutPolicy::NoneAllowed).valid);
  CHECK(check_proof(r2, Calculus::GLseq, CutPolicy::NoneAllowed).valid);

  CHECK_THROWS_AS(invert_impl_left(loeb, parse_formula("p -> q")),
                  TransformError);
}

TEST_CASE("extract_ref_set") {
  // box p =s> p uses one box-left step on p
  ProofPtr sp = prove_or_die("box p =s> p", Calculus::Sseq);
  auto [rs, gl] = extract_ref_set(sp);
  REQUIRE(rs.sigma.size() == 1);
  CHECK(same_formula(rs.sigma[0], mk_var("p")));
  CHECK(gl->seq == parse_sequent("box p -> p, box p => p"));
  CHECK(check_proof(gl, Calculus::GLseq, CutPolicy::NoneAllowed).valid);

  // Example 3.2's S-subtree: sigma = { box p | box q }
  ProofPtr e32 = fixtures::example_32();
  // descend to the dbox_s node
  ProofPtr node = e32;
  while (node->rule != Rule::DBoxS) node = node->premises[0];
  auto [rs2, gl2] = extract_ref_set(node->premises[0]);
  REQUIRE(rs2.sigma.size() == 1);
  CHECK(same_formula(rs2.sigma[0], parse_formula("box p | box q")));
  CHECK(check_proof(gl2, Calculus::GLseq, CutPolicy::NoneAllowed).valid);

  // no box-left steps: sigma is empty, the proof is re-kinded
  ProofPtr taut = prove_or_die("=s> p -> p", Calculus::Sseq);
  auto [rs3, gl3] = extract_ref_set(taut);
  CHECK(rs3.sigma.empty());
  CHECK(gl3->seq == parse_sequent("=> p -> p"));
  CHECK(check_proof(gl3, Calculus::GLseq, CutPolicy::NoneAllowed).valid);

  ProofPtr cut = fixtures::theorem_48_tree();
  CHECK_THROWS_AS(extract_ref_set(project_d_to_s(cut)), TransformError);
}

TEST_CASE("d3_to_d2 yields semi-analytic Dseq2 proofs") {
  for (ProofPtr input :
       {fixtures::example_32(),
        prove_or_die("box box box p =d> box p", Calculus::Dseq3)}) {
    ProofPtr out = d3_to_d2(input);
    CHECK(out->seq == input->seq);
    ProofReport rep = check_proof(out, Calculus::Dseq2, CutPolicy::SemiAnalytic);
    for (const auto& e : rep.errors) CAPTURE(e);
    CHECK(rep.valid);
    CHECK(rep.subformula_ok);
    for (const auto& c : rep.cut_inventory) {
      CHECK(c.boxed);
      CHECK(c.analytic);
    }
  }

  // a D-kind proof with no dbox_s nodes passes through unchanged
  ProofPtr lk_only = prove_or_die("p =d> p", Calculus::Dseq3);
  ProofPtr out = d3_to_d2(lk_only);
  CHECK(out->seq == lk_only->seq);
  CHECK(check_proof(out, Calculus::Dseq2, CutPolicy::NoneAllowed).valid);
}

TEST_CASE("d2_to_d3 yields cut-free Dseq3 proofs") {
  // Example 3.1 becomes an Example 3.2-shaped tree
  TranslationResult t1 = d2_to_d3(fixtures::example_31());
  CHECK(t1.proof->seq == fixtures::example_31()->seq);
  CHECK(check_proof(t1.proof, Calculus::Dseq3, CutPolicy::NoneAllowed).valid);
  CHECK_FALSE(proof_has_cut(t1.proof));
  CHECK(t1.reproved_cuts == 0);

  // the semi-analytic tree for box box box p =d> box p
  TranslationResult t2 = d2_to_d3(fixtures::theorem_48_tree());
  CHECK(t2.proof->seq == parse_sequent("box box box p =d> box p"));
  CHECK(check_proof(t2.proof, Calculus::Dseq3, CutPolicy::NoneAllowed).valid);
  CHECK_FALSE(proof_has_cut(t2.proof));
  CHECK(t2.reduced_cuts + t2.reproved_cuts > 0);

  // round trip on provability: translate back
  ProofPtr back = d3_to_d2(t2.proof);
  CHECK(back->seq == t2.proof->seq);
  CHECK(check_proof(back, Calculus::Dseq2, CutPolicy::SemiAnalytic).valid);
}

TEST_CASE("reduce_d_cut performs the displayed principal reduction") {
  // Build the configuration from the cut-elimination failure example by
  // first converting both cut premises to dbox_s form.
  ProofPtr a = d2_to_d3(prove_or_die("box box box p =d> box box p",
                                     Calculus::Dseq2))
                   .proof;
  ProofPtr b =
      d2_to_d3(prove_or_die("box box p =d> box p", Calculus::Dseq2)).proof;
  REQUIRE(a->rule == Rule::DBoxS);
  REQUIRE(b->rule == Rule::DBoxS);
  ProofPtr cut = make_node(parse_sequent("box box box p =d> box p"), Rule::Cut,
                           {a, b}, parse_formula("box box p"));
  ProofPtr reduced = reduce_d_cut(cut);
  CHECK(reduced->seq == cut->seq);
  ProofReport rep = check_proof(reduced, Calculus::Dseq3, CutPolicy::Unrestricted);
  for (const auto& e : rep.errors) CAPTURE(e);
  CHECK(rep.valid);
  REQUIRE(rep.cut_inventory.size() == 1);
  CHECK(rep.cut_inventory[0].kind == SequentKind::S);
  CHECK(same_formula(rep.cut_inventory[0].cut_formula,
                     parse_formula("box box p")));

  // mismatching root
  CHECK_THROWS_AS(reduce_d_cut(a), TransformError);
}

TEST_CASE("translations preserve end-sequents on searched proofs") {
  for (const std::string& text :
       {"=d> ~ box bot", "=d> box(box p | box q) -> box p | box q",
        "box p, box q =d> box(p & q)"}) {
    ProofPtr d3 = prove_or_die(text, Calculus::Dseq3);
    ProofPtr d2 = d3_to_d2(d3);
    CHECK(d2->seq == d3->seq);
    TranslationResult back = d2_to_d3(d2);
    CHECK(back.proof->seq == d3->seq);
  }
}
