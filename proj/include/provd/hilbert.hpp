// Hilbert systems for GL, S, and D: the classic axiomatizations, the two
// systems read off the sequent calculi, and their parametric counterparts
// over the linear provability logic. Proof objects are numbered formula
// lists justified by axiom-scheme instances, modus ponens, or (in the GL
// system only) necessitation.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "provd/calculi.hpp"

namespace provd {

enum class HSystem { GLH, SH, DH, DH2, DH3, D2_GLin, D3_GLin };

std::string hsystem_name(HSystem s);
std::optional<HSystem> hsystem_from_name(const std::string& name);

class HilbertError : public std::runtime_error {
public:
  explicit HilbertError(const std::string& msg) : std::runtime_error(msg) {}
};

struct HilbertProof;

struct HJust {
  enum class Kind { Axiom, MP, Nec } kind = Kind::Axiom;
  // Axiom
  std::string scheme;
  std::vector<FormulaPtr> gamma;  // witness lists; order fixes the canonical
  std::vector<FormulaPtr> delta;  // conjunction/disjunction shape
  std::shared_ptr<HilbertProof> subproof;  // optional explicit side proof
  // MP: lines[imp] = lines[from] -> this;  Nec: this = box lines[from]
  int from = -1;
  int imp = -1;
};

struct HLine {
  FormulaPtr formula;  // may be absent in files for mp/nec lines
  HJust just;
};

struct HilbertProof {
  HSystem system = HSystem::GLH;
  std::vector<HLine> lines;
};

// Right-nested over the list order; empty conjunction is top, empty
// disjunction is bot.
FormulaPtr big_and(const std::vector<FormulaPtr>& fs);
FormulaPtr big_or(const std::vector<FormulaPtr>& fs);

// Propositional tautology over variable and boxed-subformula atoms.
bool is_tautology(const FormulaPtr& f);

struct HilbertOptions {
  bool require_subproofs = false;  // prover-backed schemes must carry proofs
  int gllin_bound = 0;             // 0 = default bound per side condition
};

// Scheme id when `f` instantiates an axiom of `system` (given witnesses for
// the shaped schemes), none otherwise. Declared witnesses that do not fit
// the formula raise HilbertError.
std::optional<std::string> recognize_axiom(
    const FormulaPtr& f, HSystem system,
    const std::vector<FormulaPtr>& gamma = {},
    const std::vector<FormulaPtr>& delta = {},
    const HilbertOptions& opts = {});

struct HilbertReport {
  bool valid = false;
  int first_bad_line = -1;
  std::string message;
  FormulaPtr final_formula;
};

HilbertReport check_hilbert_proof(const HilbertProof& p,
                                  const HilbertOptions& opts = {});

// Sequent proof into the matching Hilbert system: a GL-kind end-sequent
// yields a GL proof, an S-kind one an S proof, and D-kind end-sequents map
// through the system matching the proof's calculus. The result proves
// /\ left -> \/ right (just \/ right when the left side is empty) and is
// self-checked before it is returned.
HilbertProof seq_proof_to_hilbert(const ProofPtr& p, Calculus calculus);

// DH proof of  box \/ box Delta -> \/ box Delta  by the recursive collapse
// construction over the two-disjunct axiom.
HilbertProof derive_collapse_lemma(const std::vector<FormulaPtr>& delta);

enum class D2DDirection { DH2_to_DH, DH_to_DH2 };

HilbertProof translate_hilbert_d2_d(const HilbertProof& p, D2DDirection dir);

std::string hilbert_to_json(const HilbertProof& p);
HilbertProof hilbert_from_json(const std::string& text);

}  // namespace provd
