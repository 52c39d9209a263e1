// Backward cut-free / semi-analytic proof search for the four calculi.
// Success yields a checkable proof tree; failure yields a certificate of
// saturated sequents from which a countermodel is read off and verified.

#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "provd/calculi.hpp"
#include "provd/kripke.hpp"

namespace provd {

struct GLFailure;
using GLFailurePtr = std::shared_ptr<const GLFailure>;

// Tree of saturated unprovable GL-sequents; one child per boxed right
// formula, produced by the failed backward GL-box steps.
struct GLFailure {
  Sequent saturated;
  std::vector<std::pair<FormulaPtr, GLFailurePtr>> children;
};

struct SFailure {
  Sequent saturated;  // imp- and box-left-saturated S-sequent
  GLFailurePtr gl;    // failed GL search on the same sets
};
using SFailurePtr = std::shared_ptr<const SFailure>;

struct D2Failure {
  Sequent saturated;  // imp-saturated, every boxed SF formula placed
  FormulaSet psi_star, phi_star;
  GLFailurePtr gl;  // failed GL search on  psi*, box psi* => box phi*
};
using D2FailurePtr = std::shared_ptr<const D2Failure>;

struct D3Failure {
  Sequent saturated;  // imp-saturated D-sequent
  FormulaSet psi_star, phi_star;
  SFailurePtr s;  // failed S search on  box psi* =s> box phi*
};
using D3FailurePtr = std::shared_ptr<const D3Failure>;

struct FailureCertificate {
  Sequent end_sequent;
  GLFailurePtr gl;
  SFailurePtr s;
  D2FailurePtr d2;
  D3FailurePtr d3;
};

struct Verdict {
  bool provable = false;
  ProofPtr proof;  // set when provable
  // Set when unprovable, except for (dseq2, NoneAllowed): cut-free Dseq2 is
  // incomplete for D, so a countermodel claim would be unsound there.
  std::optional<FailureCertificate> certificate;
};

class ProverError : public std::runtime_error {
public:
  explicit ProverError(const std::string& msg) : std::runtime_error(msg) {}
};

// Decides `s` in `calculus`. The sequent kind must be one the calculus
// admits (GL-sequents are admitted everywhere, S-sequents in Sseq/Dseq3,
// D-sequents in Dseq2/Dseq3). SemiAnalytic is Dseq2-only.
Verdict prove(const Sequent& s, Calculus calculus,
              CutPolicy policy = CutPolicy::NoneAllowed);

enum class SaturateMode { Imp, ImpBoxLeft, ImpAnalyticBox };

struct SaturateResult {
  std::vector<Sequent> open;  // saturated, not closed by init/init_bot
  ProofPtr closed_proof;      // set when every branch closes
};

SaturateResult saturate(const Sequent& s, SaturateMode mode);

struct Countermodel {
  KripkeModel model;
  std::string designated;                // world falsifying a GL end-sequent
  std::optional<TailLimitModel> tail;    // S/D end-sequents refute at the limit
};

std::pair<KripkeModel, std::string> build_gl_countermodel(
    const GLFailurePtr& cert, std::vector<std::string> vocabulary = {});

Countermodel extract_countermodel(const FailureCertificate& cert);

// Left formulas true and right formulas false at the designated world
// (the limit for S/D kinds).
bool verify_countermodel(const Sequent& end, const Countermodel& cm);

// S-level decision relative to a validity oracle for the base logic: decides
// whether /\left -> \/right belongs to S(L), where oracle(G, D) decides
// membership of /\G -> \/D in L. Used by the parametric Hilbert systems.
using GLOracle = std::function<bool(const FormulaSet&, const FormulaSet&)>;
bool prove_s_over_oracle(const FormulaSet& left, const FormulaSet& right,
                         const GLOracle& oracle);

}  // namespace provd
