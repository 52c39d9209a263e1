#include "provd/fuzz.hpp"

#include "provd/prover.hpp"

namespace provd {

FormulaPtr random_formula(FuzzRng& rng, int size, int vars) {
  static const char* names[] = {"p", "q", "r", "s", "t"};
  if (vars < 1) vars = 1;
  if (vars > 5) vars = 5;
  if (size <= 0) {
    int v = rng.below(vars + 1);
    return v == vars ? mk_bottom() : mk_var(names[v]);
  }
  int pick = rng.below(6);
  if (pick < 2) return mk_box(random_formula(rng, size - 1, vars));
  if (pick < 4) {
    int ls = rng.below(size);
    return mk_implies(random_formula(rng, ls, vars),
                      random_formula(rng, size - 1 - ls, vars));
  }
  if (pick == 4) return mk_not(random_formula(rng, size - 1, vars));
  int ls = rng.below(size);
  return rng.below(2) == 0
             ? mk_or(random_formula(rng, ls, vars),
                     random_formula(rng, size - 1 - ls, vars))
             : mk_and(random_formula(rng, ls, vars),
                      random_formula(rng, size - 1 - ls, vars));
}

namespace {

struct CaseRunner {
  FuzzCase& rec;
  FuzzReport& report;

  void problem(const std::string& msg) {
    rec.problems.push_back(msg);
  }

  // Runs one prover configuration and audits its output end to end.
  bool audited(const Sequent& s, Calculus c, CutPolicy pol, bool expect_cert) {
    Verdict v = prove(s, c, pol);
    if (v.provable) {
      ProofReport rep = check_proof(v.proof, c, pol);
      ++report.proofs_checked;
      if (!rep.valid) problem("emitted proof rejected by the checker");
      if (!rep.subformula_ok) problem("emitted proof breaks the subformula property");
      if (!(v.proof->seq == s)) problem("emitted proof ends at the wrong sequent");
      return true;
    }
    if (expect_cert) {
      if (!v.certificate) {
        problem("missing failure certificate");
        return false;
      }
      Countermodel cm = extract_countermodel(*v.certificate);
      ++report.countermodels_verified;
      if (!verify_countermodel(s, cm)) problem("countermodel fails to refute");
    } else if (v.certificate) {
      problem("unexpected certificate from cut-free dseq2");
    }
    return false;
  }
};

}  // namespace

FuzzReport fuzz_round(const FuzzParams& params) {
  FuzzReport report;
  report.params = params;
  FuzzRng rng{params.seed};
  for (int i = 0; i < params.iterations; ++i) {
    FuzzCase rec;
    FormulaPtr f = random_formula(rng, 1 + rng.below(params.size), params.vars);
    rec.formula = print_formula(f);
    FormulaSet left;
    if (rng.below(4) == 0) {
      FormulaPtr g = random_formula(rng, params.size / 2, params.vars);
      left = make_set({g});
      rec.left = print_formula(g);
    }
    FormulaSet right{f};
    Sequent gl{SequentKind::GL, left, right};
    Sequent sq{SequentKind::S, left, right};
    Sequent dq{SequentKind::D, left, right};

    CaseRunner run{rec, report};
    rec.gl = run.audited(gl, Calculus::GLseq, CutPolicy::NoneAllowed, true);
    rec.s = run.audited(sq, Calculus::Sseq, CutPolicy::NoneAllowed, true);
    rec.d2_none = run.audited(dq, Calculus::Dseq2, CutPolicy::NoneAllowed, false);
    rec.d2_semi = run.audited(dq, Calculus::Dseq2, CutPolicy::SemiAnalytic, true);
    rec.d3 = run.audited(dq, Calculus::Dseq3, CutPolicy::NoneAllowed, true);

    if (rec.d2_semi != rec.d3)
      rec.problems.push_back("dseq2 (semi) disagrees with dseq3 (cut-free)");
    if (rec.d2_none && !rec.d3)
      rec.problems.push_back("cut-free dseq2 proves beyond dseq3");
    if (rec.gl && !rec.d3) rec.problems.push_back("GL theorem lost in D");
    if (rec.d3 && !rec.s) rec.problems.push_back("D theorem lost in S");
    // GL-kind verdicts across all four calculi
    bool via_s = prove(gl, Calculus::Sseq).provable;
    bool via_d2 = prove(gl, Calculus::Dseq2).provable;
    bool via_d3 = prove(gl, Calculus::Dseq3).provable;
    if (via_s != rec.gl || via_d2 != rec.gl || via_d3 != rec.gl)
      rec.problems.push_back("GL-sequent verdicts differ across calculi");

    if (rec.gl) ++report.gl_provable;
    if (rec.s) ++report.s_provable;
    if (rec.d3) ++report.d_provable;
    if (!rec.problems.empty()) ++report.anomalies;
    report.cases.push_back(std::move(rec));
  }
  return report;
}

std::string fuzz_report_text(const FuzzReport& report) {
  std::string out = "fuzz seed=" + std::to_string(report.params.seed) +
                    " iters=" + std::to_string(report.params.iterations) +
                    " size=" + std::to_string(report.params.size) +
                    " vars=" + std::to_string(report.params.vars) + "\n";
  for (size_t i = 0; i < report.cases.size(); ++i) {
    const FuzzCase& c = report.cases[i];
    out += "case " + std::to_string(i) + ": ";
    if (!c.left.empty()) out += "[" + c.left + "] ";
    out += c.formula;
    out += " | GL=" + std::string(c.gl ? "t" : "f") +
           " S=" + std::string(c.s ? "t" : "f") +
           " D2cf=" + std::string(c.d2_none ? "t" : "f") +
           " D2semi=" + std::string(c.d2_semi ? "t" : "f") +
           " D3=" + std::string(c.d3 ? "t" : "f");
    if (c.problems.empty()) {
      out += " ok\n";
    } else {
      out += " ANOMALY";
      for (const auto& p : c.problems) out += " {" + p + "}";
      out += "\n";
    }
  }
  out += "summary: cases=" + std::to_string(report.cases.size()) +
         " anomalies=" + std::to_string(report.anomalies) +
         " gl_provable=" + std::to_string(report.gl_provable) +
         " s_provable=" + std::to_string(report.s_provable) +
         " d_provable=" + std::to_string(report.d_provable) +
         " proofs_checked=" + std::to_string(report.proofs_checked) +
         " countermodels_verified=" +
         std::to_string(report.countermodels_verified) + "\n";
  return out;
}

}  // namespace provd
