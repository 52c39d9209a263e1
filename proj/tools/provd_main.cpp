// provd — decision procedures, proof checking, countermodels, and Kripke
// model checking for the provability logics GL, S, and D.
//
// Exit codes: 0 provable / valid / check passed, 1 unprovable / invalid /
// check failed, 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "provd/fuzz.hpp"
#include "provd/glin.hpp"
#include "provd/hilbert.hpp"
#include "provd/prover.hpp"
#include "provd/transforms.hpp"

namespace {

using namespace provd;

bool color_enabled() {
  const char* c = std::getenv("PROVD_COLOR");
  return c && *c && std::string(c) != "0";
}

std::string tinted(const std::string& text, const char* code) {
  if (!color_enabled()) return text;
  return std::string("\033[") + code + "m" + text + "\033[0m";
}

std::string green(const std::string& t) { return tinted(t, "32"); }
std::string red(const std::string& t) { return tinted(t, "31"); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

int run_prove(const std::string& calculus_name_arg, const std::string& cuts,
              const std::string& sequent_text, const std::string& emit_proof,
              const std::string& emit_countermodel) {
  auto calc = calculus_from_name(calculus_name_arg);
  if (!calc) {
    std::cerr << "unknown calculus: " << calculus_name_arg << "\n";
    return 2;
  }
  CutPolicy policy =
      cuts == "semi" ? CutPolicy::SemiAnalytic : CutPolicy::NoneAllowed;
  Sequent s = parse_sequent(sequent_text);
  Verdict v = prove(s, *calc, policy);
  if (v.provable) {
    std::cout << green("provable") << " " << print_sequent(s) << "\n";
    std::cout << proof_to_text(v.proof);
    if (!emit_proof.empty())
      spit(emit_proof, proof_to_json(*calc, v.proof) + "\n");
    return 0;
  }
  std::cout << red("unprovable") << " " << print_sequent(s) << "\n";
  if (v.certificate) {
    Countermodel cm = extract_countermodel(*v.certificate);
    std::string json = cm.tail ? model_to_json(*cm.tail) : model_to_json(cm.model);
    std::cout << "countermodel falsifies the sequent at "
              << (cm.tail ? std::string("the limit") : cm.designated) << "\n";
    if (!emit_countermodel.empty()) spit(emit_countermodel, json + "\n");
  } else {
    std::cout << "note: cut-free dseq2 is incomplete for the logic D, so no "
                 "countermodel is claimed here; rerun with --cuts semi\n";
  }
  return 1;
}

int run_check_proof(const std::string& path, const std::string& cuts) {
  auto [calc, proof] = proof_from_json(slurp(path));
  CutPolicy policy = cuts == "semi"  ? CutPolicy::SemiAnalytic
                     : cuts == "any" ? CutPolicy::Unrestricted
                                     : CutPolicy::NoneAllowed;
  ProofReport rep = check_proof(proof, calc, policy);
  std::cout << (rep.valid ? green("valid") : red("invalid")) << " "
            << calculus_name(calc) << " proof of " << print_sequent(proof->seq)
            << "\n";
  std::cout << "subformula_ok: " << (rep.subformula_ok ? "yes" : "no") << "\n";
  for (const auto& c : rep.cut_inventory)
    std::cout << "cut [" << arrow_token(c.kind) << "] on "
              << (c.cut_formula ? print_formula(c.cut_formula) : "?")
              << (c.analytic ? " (analytic)" : " (not analytic)") << "\n";
  for (const auto& e : rep.errors) std::cout << "error: " << e << "\n";
  return rep.valid ? 0 : 1;
}

int run_model_check(const std::string& model_path, const std::string& world,
                    const std::string& formula_text, bool eventually) {
  ModelFile mf = model_from_json(slurp(model_path));
  FormulaPtr f = parse_formula(formula_text);
  bool truth = false;
  if (eventually) {
    if (!mf.tail) {
      std::cerr << "--eventually needs a model with a tail\n";
      return 2;
    }
    truth = eval_tail_limit(*mf.tail, f).eventually_always;
  } else if (mf.tail) {
    truth = eval_tail_world(*mf.tail, world, f);
  } else {
    truth = eval_at(mf.base, world, f);
  }
  std::cout << (truth ? green("true") : red("false")) << "\n";
  return truth ? 0 : 1;
}

int run_translate(const std::string& from, const std::string& to,
                  const std::string& path, const std::string& out) {
  std::string text = slurp(path);
  auto seq_from = calculus_from_name(from);
  auto seq_to = calculus_from_name(to);
  if (seq_from && seq_to) {
    auto [calc, proof] = proof_from_json(text);
    if (calc != *seq_from) {
      std::cerr << "proof file declares " << calculus_name(calc) << ", not "
                << from << "\n";
      return 2;
    }
    ProofPtr result;
    if (*seq_from == Calculus::GLseq &&
        (*seq_to == Calculus::Dseq2 || *seq_to == Calculus::Dseq3)) {
      result = embed_gl_into_d(proof, *seq_to);
    } else if ((*seq_from == Calculus::Dseq2 || *seq_from == Calculus::Dseq3) &&
               *seq_to == Calculus::Sseq) {
      result = project_d_to_s(proof);
    } else if (*seq_from == Calculus::Dseq3 && *seq_to == Calculus::Dseq2) {
      result = d3_to_d2(proof);
    } else if (*seq_from == Calculus::Dseq2 && *seq_to == Calculus::Dseq3) {
      TranslationResult tr = d2_to_d3(proof);
      std::cout << "cuts reduced syntactically: " << tr.reduced_cuts
                << ", discharged by reproving: " << tr.reproved_cuts << "\n";
      result = tr.proof;
    } else {
      std::cerr << "unsupported translation " << from << " -> " << to << "\n";
      return 2;
    }
    spit(out, proof_to_json(*seq_to, result) + "\n");
    std::cout << "wrote " << out << "\n";
    return 0;
  }
  if ((from == "dh2" && to == "dh") || (from == "dh" && to == "dh2")) {
    HilbertProof p = hilbert_from_json(text);
    D2DDirection dir =
        from == "dh2" ? D2DDirection::DH2_to_DH : D2DDirection::DH_to_DH2;
    HilbertProof result = translate_hilbert_d2_d(p, dir);
    spit(out, hilbert_to_json(result) + "\n");
    std::cout << "wrote " << out << "\n";
    return 0;
  }
  std::cerr << "unsupported translation " << from << " -> " << to << "\n";
  return 2;
}

int run_hilbert_check(const std::string& system, const std::string& path,
                      bool require_subproofs, int gllin_bound) {
  HilbertProof p = hilbert_from_json(slurp(path));
  auto want = hsystem_from_name(system);
  if (!want) {
    std::cerr << "unknown system: " << system << "\n";
    return 2;
  }
  if (p.system != *want) {
    std::cerr << "proof file declares " << hsystem_name(p.system) << ", not "
              << system << "\n";
    return 2;
  }
  HilbertOptions opts;
  opts.require_subproofs = require_subproofs;
  opts.gllin_bound = gllin_bound;
  HilbertReport rep = check_hilbert_proof(p, opts);
  if (rep.valid) {
    std::cout << green("valid") << " " << hsystem_name(p.system) << " proof of "
              << print_formula(rep.final_formula) << "\n";
    return 0;
  }
  std::cout << red("invalid") << ": " << rep.message << "\n";
  return 1;
}

int run_gllin_valid(const std::string& formula_text, int bound) {
  FormulaPtr f = parse_formula(formula_text);
  GLLinVerdict v = gllin_valid(f, bound);
  if (v.valid) {
    std::cout << green("valid-at-bound") << " " << v.bound << "\n";
    return 0;
  }
  std::cout << red("invalid") << " at world n" << v.witness_world
            << " of a size-" << v.witness->size << " frame\n";
  std::cout << model_to_json(nat_frame_to_kripke(*v.witness)) << "\n";
  return 1;
}

int run_omega_refute(const std::string& formula_text, int prefix_max,
                     int bound) {
  FormulaPtr f = parse_formula(formula_text);
  OmegaConfig cfg;
  cfg.prefix_len_max = prefix_max;
  cfg.base_size_max = bound;
  OmegaResult r = omega_refute_search(f, cfg);
  if (r.refuted) {
    std::cout << red("refuted") << " at the limit\n";
    std::cout << model_to_json(*r.model) << "\n";
    return 1;
  }
  std::cout << green("no-counterexample-found")
            << " (refutation search only; not a validity proof)\n";
  return 0;
}

int run_fuzz(uint64_t seed, int iters, int size, int vars) {
  FuzzParams params;
  params.seed = seed;
  params.iterations = iters;
  params.size = size;
  params.vars = vars;
  FuzzReport report = fuzz_round(params);
  std::cout << fuzz_report_text(report);
  if (report.anomalies == 0) {
    std::cout << green("PASS") << "\n";
    return 0;
  }
  std::cout << red("FAIL") << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "decision procedures and proof tools for the provability logics GL, S, "
      "and D"};
  app.require_subcommand(1);

  std::string calculus, cuts = "none", sequent, emit_proof, emit_countermodel;
  CLI::App* prove_cmd = app.add_subcommand("prove", "decide a sequent");
  prove_cmd->add_option("--calculus", calculus, "glseq | sseq | dseq2 | dseq3")
      ->required();
  prove_cmd->add_option("--cuts", cuts, "none | semi (dseq2 only)");
  prove_cmd->add_option("--emit-proof", emit_proof, "write the proof as JSON");
  prove_cmd->add_option("--emit-countermodel", emit_countermodel,
                        "write the countermodel as JSON");
  prove_cmd->add_option("sequent", sequent, "sequent text")->required();

  std::string cp_file, cp_cuts = "none";
  CLI::App* check_cmd = app.add_subcommand("check-proof", "check a proof file");
  check_cmd->add_option("--file", cp_file)->required();
  check_cmd->add_option("--cuts", cp_cuts, "none | semi | any");

  std::string mc_model, mc_world, mc_formula;
  bool mc_eventually = false;
  CLI::App* mc_cmd =
      app.add_subcommand("model-check", "evaluate a formula in a model");
  mc_cmd->add_option("--model", mc_model)->required();
  mc_cmd->add_option("--world", mc_world)->required();
  mc_cmd->add_option("--formula", mc_formula)->required();
  mc_cmd->add_flag("--eventually", mc_eventually,
                   "eventually-always truth in the tail");

  std::string tr_from, tr_to, tr_file, tr_out;
  CLI::App* tr_cmd =
      app.add_subcommand("translate", "translate proofs between systems");
  tr_cmd->add_option("--from", tr_from)->required();
  tr_cmd->add_option("--to", tr_to)->required();
  tr_cmd->add_option("--file", tr_file)->required();
  tr_cmd->add_option("--out", tr_out)->required();

  std::string hc_system, hc_file;
  bool hc_subproofs = false;
  int hc_bound = 0;
  CLI::App* hc_cmd =
      app.add_subcommand("hilbert-check", "check a Hilbert proof file");
  hc_cmd->add_option("--system", hc_system,
                     "glh | sh | dh | dh2 | dh3 | d2-gllin | d3-gllin")
      ->required();
  hc_cmd->add_option("--file", hc_file)->required();
  hc_cmd->add_flag("--require-subproofs", hc_subproofs,
                   "prover-backed axioms must carry explicit subproofs");
  hc_cmd->add_option("--gllin-bound", hc_bound,
                     "bound for linear-logic side conditions");

  std::string gl_formula;
  int gl_bound = 0;
  CLI::App* gl_cmd = app.add_subcommand("gllin", "linear provability logic");
  CLI::App* gl_valid =
      gl_cmd->add_subcommand("valid", "validity over nat-frames");
  gl_valid->add_option("--formula", gl_formula)->required();
  gl_valid->add_option("--bound", gl_bound,
                       "largest frame size (default |SF|+1)");

  std::string om_formula;
  int om_prefix = 2, om_bound = 0;
  CLI::App* om_cmd = app.add_subcommand("omega", "omega-plus frame search");
  CLI::App* om_refute =
      om_cmd->add_subcommand("refute", "search for a limit counterexample");
  om_refute->add_option("--formula", om_formula)->required();
  om_refute->add_option("--prefix-max", om_prefix,
                        "longest explicit tail prefix");
  om_refute->add_option("--bound", om_bound, "largest base size (default 2)");

  uint64_t fz_seed = 1;
  int fz_iters = 100, fz_size = 10, fz_vars = 3;
  CLI::App* fz_cmd = app.add_subcommand("fuzz", "cross-validation harness");
  fz_cmd->add_option("--seed", fz_seed);
  fz_cmd->add_option("--iters", fz_iters);
  fz_cmd->add_option("--size", fz_size);
  fz_cmd->add_option("--vars", fz_vars);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (prove_cmd->parsed())
      return run_prove(calculus, cuts, sequent, emit_proof, emit_countermodel);
    if (check_cmd->parsed()) return run_check_proof(cp_file, cp_cuts);
    if (mc_cmd->parsed())
      return run_model_check(mc_model, mc_world, mc_formula, mc_eventually);
    if (tr_cmd->parsed()) return run_translate(tr_from, tr_to, tr_file, tr_out);
    if (hc_cmd->parsed())
      return run_hilbert_check(hc_system, hc_file, hc_subproofs, hc_bound);
    if (gl_cmd->parsed() && gl_valid->parsed())
      return run_gllin_valid(gl_formula, gl_bound);
    if (om_cmd->parsed() && om_refute->parsed())
      return run_omega_refute(om_formula, om_prefix, om_bound);
    if (fz_cmd->parsed()) return run_fuzz(fz_seed, fz_iters, fz_size, fz_vars);
    std::cerr << "missing subcommand\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
