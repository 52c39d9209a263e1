// Syntactic proof transformations between the calculi: GL-proof embedding
// into the D calculi, projection of D-proofs to S-proofs, left-implication
// inversion, reflection-set extraction, and the two D-calculus translations.

#pragma once

#include "provd/calculi.hpp"

namespace provd {

class TransformError : public std::runtime_error {
public:
  explicit TransformError(const std::string& msg) : std::runtime_error(msg) {}
};

// GL-proof of G => D  into a proof of  G =d> D  in the chosen D calculus.
// A proof ending in the GL-box rule gets the displayed two-node wrapper;
// anything else is re-kinded recursively.
ProofPtr embed_gl_into_d(const ProofPtr& p, Calculus target);

// Dseq2/Dseq3 proof of  G =d> D  into an Sseq proof of  G =s> D.
// (=d> box) boundaries become lift + box-left chains; (=s> =d> box)
// boundaries are dropped; cuts become S-kind cuts.
ProofPtr project_d_to_s(const ProofPtr& p);

// Inversion of a left implication in a GLseq proof: from a proof of
// (a->b), G => D, proofs of  G => D, a  and  b, G => D.
std::pair<ProofPtr, ProofPtr> invert_impl_left(const ProofPtr& p,
                                               const FormulaPtr& imp);

struct RefSet {
  FormulaSet sigma;
  FormulaSet ref;  // { box s -> s | s in sigma }
};

FormulaSet ref_of(const FormulaSet& sigma);

// From a cut-free Sseq proof of  G =s> D, the set of box-left principals and
// a GLseq proof of  ref(Sigma), G => D.
std::pair<RefSet, ProofPtr> extract_ref_set(const ProofPtr& p);

// Cut-free Dseq3 proof into a semi-analytic Dseq2 proof of the same
// end-sequent (reflection extraction, 2^n inversions, binary cut cascade).
ProofPtr d3_to_d2(const ProofPtr& p);

struct TranslationResult {
  ProofPtr proof;
  int reduced_cuts = 0;   // cuts discharged by the displayed principal reduction
  int reproved_cuts = 0;  // cuts discharged by re-running the cut-free search
};

// Dseq2 proof (cut-free or semi-analytic) into a cut-free Dseq3 proof.
TranslationResult d2_to_d3(const ProofPtr& p);

// One step of the displayed principal cut reduction: a D-kind cut over two
// (=s> =d> box) premises becomes an S-kind cut under a single such step.
ProofPtr reduce_d_cut(const ProofPtr& p);

}  // namespace provd
