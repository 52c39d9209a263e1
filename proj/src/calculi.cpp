#include "provd/calculi.hpp"

#include <algorithm>

#include "json.hpp"

namespace provd {

std::string calculus_name(Calculus c) {
  switch (c) {
    case Calculus::GLseq: return "glseq";
    case Calculus::Sseq: return "sseq";
    case Calculus::Dseq2: return "dseq2";
    case Calculus::Dseq3: return "dseq3";
  }
  return "?";
}

std::optional<Calculus> calculus_from_name(const std::string& name) {
  if (name == "glseq") return Calculus::GLseq;
  if (name == "sseq") return Calculus::Sseq;
  if (name == "dseq2") return Calculus::Dseq2;
  if (name == "dseq3") return Calculus::Dseq3;
  return std::nullopt;
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Init: return "init";
    case Rule::InitBot: return "init_bot";
    case Rule::Weak: return "weak";
    case Rule::ImpL: return "impl";
    case Rule::ImpR: return "impr";
    case Rule::Cut: return "cut";
    case Rule::GLBox: return "glbox";
    case Rule::LiftS: return "lift_s";
    case Rule::BoxLS: return "boxl_s";
    case Rule::DBoxGL: return "dbox_gl";
    case Rule::DBoxS: return "dbox_s";
  }
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
  static const std::pair<const char*, Rule> table[] = {
      {"init", Rule::Init},     {"init_bot", Rule::InitBot},
      {"weak", Rule::Weak},     {"impl", Rule::ImpL},
      {"impr", Rule::ImpR},     {"cut", Rule::Cut},
      {"glbox", Rule::GLBox},   {"lift_s", Rule::LiftS},
      {"boxl_s", Rule::BoxLS},  {"dbox_gl", Rule::DBoxGL},
      {"dbox_s", Rule::DBoxS}};
  for (const auto& [n, r] : table)
    if (name == n) return r;
  return std::nullopt;
}

ProofPtr make_node(Sequent seq, Rule rule, std::vector<ProofPtr> premises,
                   FormulaPtr principal, std::optional<FormulaSet> gamma,
                   std::optional<FormulaSet> delta) {
  auto n = std::make_shared<ProofNode>();
  n->seq = std::move(seq);
  n->rule = rule;
  n->premises = std::move(premises);
  n->principal = std::move(principal);
  n->gamma = std::move(gamma);
  n->delta = std::move(delta);
  return n;
}

namespace {

bool kind_in_calculus(SequentKind k, Calculus c) {
  switch (c) {
    case Calculus::GLseq: return k == SequentKind::GL;
    case Calculus::Sseq: return k == SequentKind::GL || k == SequentKind::S;
    case Calculus::Dseq2: return k == SequentKind::GL || k == SequentKind::D;
    case Calculus::Dseq3: return true;
  }
  return false;
}

bool rule_in_calculus(Rule r, SequentKind conclusion_kind, Calculus c) {
  if (!kind_in_calculus(conclusion_kind, c)) return false;
  switch (r) {
    case Rule::Init:
    case Rule::InitBot:
    case Rule::Weak:
    case Rule::ImpL:
    case Rule::ImpR:
    case Rule::Cut:
      return true;  // LK rules exist for every kind the calculus admits
    case Rule::GLBox:
      return conclusion_kind == SequentKind::GL;
    case Rule::LiftS:
    case Rule::BoxLS:
      return conclusion_kind == SequentKind::S &&
             (c == Calculus::Sseq || c == Calculus::Dseq3);
    case Rule::DBoxGL:
      return conclusion_kind == SequentKind::D && c == Calculus::Dseq2;
    case Rule::DBoxS:
      return conclusion_kind == SequentKind::D && c == Calculus::Dseq3;
  }
  return false;
}

using V = InferenceViolation;

std::optional<V> violation(V::Kind k, const std::string& d) {
  return V{k, d};
}

bool all_boxed(const FormulaSet& s) {
  return std::all_of(s.begin(), s.end(), is_boxed);
}

std::optional<V> wrong_arity(const ProofNode& n, size_t want) {
  if (n.premises.size() != want)
    return violation(V::Kind::SchemaMismatch,
                     rule_name(n.rule) + " expects " + std::to_string(want) +
                         " premises, got " + std::to_string(n.premises.size()));
  return std::nullopt;
}

// One-of-two-candidate equality used where the schema lets the shared set
// either absorb or drop the principal formula.
bool eq_either(const FormulaSet& got, const FormulaSet& a, const FormulaSet& b) {
  return set_equal(got, a) || set_equal(got, b);
}

std::optional<V> check_impl(const ProofNode& n) {
  if (auto v = wrong_arity(n, 2)) return v;
  const Sequent& c = n.seq;
  const Sequent& p1 = n.premises[0]->seq;
  const Sequent& p2 = n.premises[1]->seq;
  if (p1.kind != c.kind || p2.kind != c.kind)
    return violation(V::Kind::ArrowMismatch, "impl premises must match the conclusion arrow");
  auto try_principal = [&](const FormulaPtr& imp) {
    if (imp->kind != FKind::Implies) return false;
    const FormulaPtr& a = imp->lhs;
    const FormulaPtr& b = imp->rhs;
    if (!set_contains(c.left, imp)) return false;
    if (!set_equal(c.left, set_insert(p1.left, imp))) return false;
    if (!set_equal(p1.right, set_insert(c.right, a))) return false;
    if (!set_equal(p2.left, set_insert(p1.left, b))) return false;
    if (!set_equal(p2.right, c.right)) return false;
    return true;
  };
  if (n.principal) {
    if (try_principal(n.principal)) return std::nullopt;
    return violation(V::Kind::SchemaMismatch,
                     "impl does not fit principal " + print_formula(n.principal));
  }
  for (const auto& f : c.left)
    if (try_principal(f)) return std::nullopt;
  return violation(V::Kind::SchemaMismatch, "no left implication fits impl");
}

std::optional<V> check_impr(const ProofNode& n) {
  if (auto v = wrong_arity(n, 1)) return v;
  const Sequent& c = n.seq;
  const Sequent& p = n.premises[0]->seq;
  if (p.kind != c.kind)
    return violation(V::Kind::ArrowMismatch, "impr premise must match the conclusion arrow");
  auto try_principal = [&](const FormulaPtr& imp) {
    if (imp->kind != FKind::Implies) return false;
    const FormulaPtr& a = imp->lhs;
    const FormulaPtr& b = imp->rhs;
    if (!set_contains(c.right, imp)) return false;
    if (!set_equal(p.left, set_insert(c.left, a))) return false;
    FormulaSet keep = set_insert(c.right, b);
    FormulaSet drop = set_insert(set_erase(c.right, imp), b);
    return eq_either(p.right, keep, drop);
  };
  if (n.principal) {
    if (try_principal(n.principal)) return std::nullopt;
    return violation(V::Kind::SchemaMismatch,
                     "impr does not fit principal " + print_formula(n.principal));
  }
  for (const auto& f : c.right)
    if (try_principal(f)) return std::nullopt;
  return violation(V::Kind::SchemaMismatch, "no right implication fits impr");
}

std::optional<V> check_cut(const ProofNode& n) {
  if (auto v = wrong_arity(n, 2)) return v;
  const Sequent& c = n.seq;
  const Sequent& p1 = n.premises[0]->seq;
  const Sequent& p2 = n.premises[1]->seq;
  if (p1.kind != c.kind || p2.kind != c.kind)
    return violation(V::Kind::ArrowMismatch, "cut premises must match the conclusion arrow");
  auto try_formula = [&](const FormulaPtr& x) {
    if (!set_contains(p1.right, x) || !set_contains(p2.left, x)) return false;
    FormulaSet l_drop = set_union(p1.left, set_erase(p2.left, x));
    FormulaSet l_keep = set_union(p1.left, p2.left);
    FormulaSet r_drop = set_union(set_erase(p1.right, x), p2.right);
    FormulaSet r_keep = set_union(p1.right, p2.right);
    return eq_either(c.left, l_drop, l_keep) && eq_either(c.right, r_drop, r_keep);
  };
  if (n.principal) {
    if (try_formula(n.principal)) return std::nullopt;
    return violation(V::Kind::SchemaMismatch,
                     "cut does not fit cut formula " + print_formula(n.principal));
  }
  for (const auto& f : p1.right)
    if (try_formula(f)) return std::nullopt;
  return violation(V::Kind::SchemaMismatch, "no formula fits cut");
}

std::optional<V> check_glbox(const ProofNode& n) {
  if (auto v = wrong_arity(n, 1)) return v;
  const Sequent& c = n.seq;
  const Sequent& p = n.premises[0]->seq;
  if (c.kind != SequentKind::GL || p.kind != SequentKind::GL)
    return violation(V::Kind::ArrowMismatch, "glbox works on GL-sequents");
  if (!all_boxed(c.left) || c.right.size() != 1 || !is_boxed(c.right[0]))
    return violation(V::Kind::SchemaMismatch,
                     "glbox conclusion must be box G => box a");
  FormulaSet gamma = n.gamma ? make_set(*n.gamma) : unbox_members(c.left);
  FormulaPtr phi = n.principal ? n.principal : c.right[0]->lhs;
  if (!set_equal(box_all(gamma), c.left) ||
      !same_formula(mk_box(phi), c.right[0]))
    return violation(V::Kind::SchemaMismatch, "glbox annotation mismatch");
  FormulaSet want_left = set_insert(set_union(gamma, c.left), c.right[0]);
  if (!set_equal(p.left, want_left) || p.right.size() != 1 ||
      !same_formula(p.right[0], phi))
    return violation(V::Kind::SchemaMismatch,
                     "glbox premise must be G, box G, box a => a");
  return std::nullopt;
}

std::optional<V> check_lift_s(const ProofNode& n) {
  if (auto v = wrong_arity(n, 1)) return v;
  const Sequent& c = n.seq;
  const Sequent& p = n.premises[0]->seq;
  if (c.kind != SequentKind::S || p.kind != SequentKind::GL)
    return violation(V::Kind::ArrowMismatch, "lift_s turns => into =s>");
  if (!set_equal(p.left, c.left) || !set_equal(p.right, c.right))
    return violation(V::Kind::SchemaMismatch, "lift_s must keep both sides");
  return std::nullopt;
}

std::optional<V> check_boxl_s(const ProofNode& n) {
  if (auto v = wrong_arity(n, 1)) return v;
  const Sequent& c = n.seq;
  const Sequent& p = n.premises[0]->seq;
  if (c.kind != SequentKind::S || p.kind != SequentKind::S)
    return violation(V::Kind::ArrowMismatch, "boxl_s works on S-sequents");
  auto try_principal = [&](const FormulaPtr& phi) {
    FormulaPtr box_phi = mk_box(phi);
    if (!set_contains(c.left, box_phi)) return false;
    if (!set_equal(p.right, c.right)) return false;
    FormulaSet keep = set_insert(c.left, phi);
    FormulaSet drop = set_insert(set_erase(c.left, box_phi), phi);
    return eq_either(p.left, keep, drop);
  };
  if (n.principal) {
    if (try_principal(n.principal)) return std::nullopt;
    return violation(V::Kind::SchemaMismatch,
                     "boxl_s does not fit principal " + print_formula(n.principal));
  }
  for (const auto& f : c.left)
    if (f->kind == FKind::Box && try_principal(f->lhs)) return std::nullopt;
  return violation(V::Kind::SchemaMismatch, "no boxed left formula fits boxl_s");
}

std::optional<V> check_dbox_gl(const ProofNode& n) {
  if (auto v = wrong_arity(n, 1)) return v;
  const Sequent& c = n.seq;
  const Sequent& p = n.premises[0]->seq;
  if (c.kind != SequentKind::D || p.kind != SequentKind::GL)
    return violation(V::Kind::ArrowMismatch, "dbox_gl concludes a D-sequent from a GL-sequent");
  if (!all_boxed(c.left) || !all_boxed(c.right))
    return violation(V::Kind::SchemaMismatch,
                     "dbox_gl conclusion must be box G =d> box D");
  FormulaSet gamma = n.gamma ? make_set(*n.gamma) : unbox_members(c.left);
  if (!set_equal(box_all(gamma), c.left))
    return violation(V::Kind::SchemaMismatch, "dbox_gl annotation mismatch");
  if (!set_equal(p.left, set_union(gamma, c.left)) ||
      !set_equal(p.right, c.right))
    return violation(V::Kind::SchemaMismatch,
                     "dbox_gl premise must be G, box G => box D");
  return std::nullopt;
}

std::optional<V> check_dbox_s(const ProofNode& n) {
  if (auto v = wrong_arity(n, 1)) return v;
  const Sequent& c = n.seq;
  const Sequent& p = n.premises[0]->seq;
  if (c.kind != SequentKind::D || p.kind != SequentKind::S)
    return violation(V::Kind::ArrowMismatch, "dbox_s concludes a D-sequent from an S-sequent");
  if (!all_boxed(c.left) || !all_boxed(c.right))
    return violation(V::Kind::SchemaMismatch,
                     "dbox_s conclusion must be box G =d> box D");
  if (!set_equal(p.left, c.left) || !set_equal(p.right, c.right))
    return violation(V::Kind::SchemaMismatch, "dbox_s must keep both sides");
  return std::nullopt;
}

}  // namespace

std::optional<InferenceViolation> check_inference(const ProofNode& node,
                                                  Calculus calculus) {
  if (!rule_in_calculus(node.rule, node.seq.kind, calculus))
    return violation(V::Kind::RuleNotInCalculus,
                     rule_name(node.rule) + " on a " +
                         arrow_token(node.seq.kind) + " sequent is not part of " +
                         calculus_name(calculus));
  switch (node.rule) {
    case Rule::Init: {
      if (auto v = wrong_arity(node, 0)) return v;
      if (node.seq.left.size() != 1 || node.seq.right.size() != 1 ||
          !same_formula(node.seq.left[0], node.seq.right[0]))
        return violation(V::Kind::SchemaMismatch, "init must be a => a");
      return std::nullopt;
    }
    case Rule::InitBot: {
      if (auto v = wrong_arity(node, 0)) return v;
      if (node.seq.left.size() != 1 ||
          node.seq.left[0]->kind != FKind::Bottom || !node.seq.right.empty())
        return violation(V::Kind::SchemaMismatch, "init_bot must be bot =>");
      return std::nullopt;
    }
    case Rule::Weak: {
      if (auto v = wrong_arity(node, 1)) return v;
      const Sequent& p = node.premises[0]->seq;
      if (p.kind != node.seq.kind)
        return violation(V::Kind::ArrowMismatch, "weakening keeps the arrow");
      if (!set_subset(p.left, node.seq.left) ||
          !set_subset(p.right, node.seq.right))
        return violation(V::Kind::SchemaMismatch,
                         "weakening premise must be contained in the conclusion");
      return std::nullopt;
    }
    case Rule::ImpL: return check_impl(node);
    case Rule::ImpR: return check_impr(node);
    case Rule::Cut: return check_cut(node);
    case Rule::GLBox: return check_glbox(node);
    case Rule::LiftS: return check_lift_s(node);
    case Rule::BoxLS: return check_boxl_s(node);
    case Rule::DBoxGL: return check_dbox_gl(node);
    case Rule::DBoxS: return check_dbox_s(node);
  }
  return violation(V::Kind::SchemaMismatch, "unknown rule");
}

namespace {

void walk_proof(const ProofPtr& node, Calculus calculus,
                const SubformulaClosure& root_sf, ProofReport& report) {
  if (auto v = check_inference(*node, calculus)) {
    report.valid = false;
    report.errors.push_back("at '" + print_sequent(node->seq) + "': " + v->detail);
  }
  for (const auto& f : node->seq.left)
    if (!set_contains(root_sf.formulas, f)) report.subformula_ok = false;
  for (const auto& f : node->seq.right)
    if (!set_contains(root_sf.formulas, f)) report.subformula_ok = false;
  if (node->rule == Rule::Cut) {
    CutRecord rec;
    rec.kind = node->seq.kind;
    rec.conclusion = node->seq;
    FormulaPtr cutf = node->principal;
    if (!cutf && !node->premises.empty()) {
      // Deterministic reconstruction: first premise-1 right formula that
      // also sits on premise-2's left.
      for (const auto& f : node->premises[0]->seq.right)
        if (set_contains(node->premises[1]->seq.left, f)) { cutf = f; break; }
    }
    rec.cut_formula = cutf;
    if (cutf) {
      rec.boxed = is_boxed(cutf);
      SubformulaClosure sf =
          subformula_closure(set_union(node->seq.left, node->seq.right));
      rec.analytic = rec.boxed && set_contains(sf.formulas, cutf);
    }
    report.cut_inventory.push_back(rec);
  }
  for (const auto& p : node->premises) walk_proof(p, calculus, root_sf, report);
}

}  // namespace

ProofReport check_proof(const ProofPtr& proof, Calculus calculus,
                        CutPolicy policy) {
  ProofReport report;
  report.valid = true;
  report.subformula_ok = true;
  if (!proof) {
    report.valid = false;
    report.errors.push_back("empty proof");
    return report;
  }
  SubformulaClosure root_sf =
      subformula_closure(set_union(proof->seq.left, proof->seq.right));
  walk_proof(proof, calculus, root_sf, report);
  for (const auto& rec : report.cut_inventory) {
    switch (policy) {
      case CutPolicy::NoneAllowed:
        report.valid = false;
        report.errors.push_back("cut not allowed under the cut-free policy");
        break;
      case CutPolicy::SemiAnalytic:
        if (rec.kind != SequentKind::D || !rec.analytic) {
          report.valid = false;
          report.errors.push_back(
              "cut is not a semi-analytic D-cut on a boxed subformula");
        }
        break;
      case CutPolicy::Unrestricted: break;
    }
  }
  if (policy == CutPolicy::NoneAllowed && !report.subformula_ok)
    report.valid = false;
  return report;
}

bool proof_has_cut(const ProofPtr& proof) {
  if (!proof) return false;
  if (proof->rule == Rule::Cut) return true;
  for (const auto& p : proof->premises)
    if (proof_has_cut(p)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

using nlohmann::json;

namespace {

json node_to_json(const ProofPtr& node) {
  json j;
  j["seq"] = print_sequent(node->seq);
  j["rule"] = rule_name(node->rule);
  json ann = json::object();
  if (node->principal) ann["principal"] = print_formula(node->principal);
  if (node->gamma) {
    json g = json::array();
    for (const auto& f : *node->gamma) g.push_back(print_formula(f));
    ann["gamma"] = g;
  }
  if (node->delta) {
    json d = json::array();
    for (const auto& f : *node->delta) d.push_back(print_formula(f));
    ann["delta"] = d;
  }
  if (!ann.empty()) j["ann"] = ann;
  json prem = json::array();
  for (const auto& p : node->premises) prem.push_back(node_to_json(p));
  j["premises"] = prem;
  return j;
}

ProofPtr node_from_json(const json& j) {
  Sequent seq = parse_sequent(j.at("seq").get<std::string>());
  auto rule = rule_from_name(j.at("rule").get<std::string>());
  if (!rule) throw std::runtime_error("unknown rule name in proof file");
  std::vector<ProofPtr> premises;
  if (j.contains("premises"))
    for (const auto& p : j["premises"]) premises.push_back(node_from_json(p));
  FormulaPtr principal;
  std::optional<FormulaSet> gamma, delta;
  if (j.contains("ann")) {
    const json& ann = j["ann"];
    if (ann.contains("principal"))
      principal = parse_formula(ann["principal"].get<std::string>());
    if (ann.contains("gamma")) {
      FormulaSet g;
      for (const auto& s : ann["gamma"])
        g.push_back(parse_formula(s.get<std::string>()));
      gamma = make_set(std::move(g));
    }
    if (ann.contains("delta")) {
      FormulaSet d;
      for (const auto& s : ann["delta"])
        d.push_back(parse_formula(s.get<std::string>()));
      delta = make_set(std::move(d));
    }
  }
  return make_node(std::move(seq), *rule, std::move(premises),
                   std::move(principal), std::move(gamma), std::move(delta));
}

void render(const ProofPtr& node, int depth, std::string& out) {
  out.append(static_cast<size_t>(depth) * 2, ' ');
  out += "[" + rule_name(node->rule) + "] " + print_sequent(node->seq) + "\n";
  for (const auto& p : node->premises) render(p, depth + 1, out);
}

}  // namespace

std::string proof_to_json(Calculus calculus, const ProofPtr& proof) {
  json j;
  j["calculus"] = calculus_name(calculus);
  j["root"] = node_to_json(proof);
  return j.dump(2);
}

std::pair<Calculus, ProofPtr> proof_from_json(const std::string& text) {
  json j = json::parse(text);
  auto calc = calculus_from_name(j.at("calculus").get<std::string>());
  if (!calc) throw std::runtime_error("unknown calculus name in proof file");
  return {*calc, node_from_json(j.at("root"))};
}

std::string proof_to_text(const ProofPtr& proof) {
  std::string out;
  render(proof, 0, out);
  return out;
}

}  // namespace provd
