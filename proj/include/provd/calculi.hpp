// Rule schemata of the four sequent calculi and an independent proof checker
// with cut-policy enforcement. The checker validates inference steps from the
// set equations alone; it shares no rule-application code with the prover.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "provd/formula.hpp"

namespace provd {

enum class Calculus { GLseq, Sseq, Dseq2, Dseq3 };

std::string calculus_name(Calculus c);
std::optional<Calculus> calculus_from_name(const std::string& name);

// The five modal rules keep the paper's roles:
//   GLBox   box G => box a           from  G, box G, box a => a
//   LiftS   G =s> D                  from  G => D
//   BoxLS   box a, G =s> D           from  a, G =s> D
//   DBoxGL  box G =d> box D          from  G, box G => box D
//   DBoxS   box G =d> box D          from  box G =s> box D
enum class Rule {
  Init, InitBot, Weak, ImpL, ImpR, Cut, GLBox, LiftS, BoxLS, DBoxGL, DBoxS
};

std::string rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);

enum class CutPolicy { NoneAllowed, SemiAnalytic, Unrestricted };

struct ProofNode;
using ProofPtr = std::shared_ptr<const ProofNode>;

struct ProofNode {
  Sequent seq;
  Rule rule = Rule::Init;
  std::vector<ProofPtr> premises;
  // Annotations: the principal or cut formula, and for modal rules the
  // designated instantiation. Reconstructed deterministically when absent.
  FormulaPtr principal;
  std::optional<FormulaSet> gamma;
  std::optional<FormulaSet> delta;
};

ProofPtr make_node(Sequent seq, Rule rule, std::vector<ProofPtr> premises,
                   FormulaPtr principal = nullptr,
                   std::optional<FormulaSet> gamma = std::nullopt,
                   std::optional<FormulaSet> delta = std::nullopt);

struct InferenceViolation {
  enum class Kind { RuleNotInCalculus, ArrowMismatch, SchemaMismatch };
  Kind kind;
  std::string detail;
};

// Validates exactly one inference step of `calculus` (the node's rule, arrow
// kinds, and set-level side conditions). Premise subtrees are not visited.
std::optional<InferenceViolation> check_inference(const ProofNode& node,
                                                  Calculus calculus);

struct CutRecord {
  SequentKind kind;
  FormulaPtr cut_formula;
  bool boxed = false;
  bool analytic = false;  // boxed and inside SF of the cut's conclusion
  Sequent conclusion;
};

struct ProofReport {
  bool valid = false;
  bool subformula_ok = false;  // every formula lies in SF of the end-sequent
  std::vector<CutRecord> cut_inventory;
  std::vector<std::string> errors;
};

ProofReport check_proof(const ProofPtr& proof, Calculus calculus,
                        CutPolicy policy);

bool proof_has_cut(const ProofPtr& proof);

// ---------------------------------------------------------------------------
// Proof file (JSON): {"calculus": str, "root": node} with
// node = {"seq": str, "rule": str, "ann": {...}, "premises": [node]}.
// ---------------------------------------------------------------------------

std::string proof_to_json(Calculus calculus, const ProofPtr& proof);
std::pair<Calculus, ProofPtr> proof_from_json(const std::string& text);

// Indented text rendering, deterministic.
std::string proof_to_text(const ProofPtr& proof);

}  // namespace provd
