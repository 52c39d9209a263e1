#include "doctest.h"
#include "provd/kripke.hpp"

#include <functional>

using namespace provd;

namespace {

// Independent brute-force evaluator used as the oracle for eval_at.
bool brute_eval(const KripkeModel& m, int w, const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Var: return m.val[w].at(f->name);
    case FKind::Bottom: return false;
    case FKind::Implies:
      return !brute_eval(m, w, f->lhs) || brute_eval(m, w, f->rhs);
    case FKind::Box:
      for (int v : m.succ[w])
        if (!brute_eval(m, v, f->lhs)) return false;
      return true;
  }
  return false;
}

KripkeModel chain3_p_false() {
  return validate_model({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}},
                        {{"a", {{"p", false}}},
                         {"b", {{"p", false}}},
                         {"c", {{"p", false}}}});
}

}  // namespace

TEST_CASE("validate_model closes transitively and rejects cycles") {
  KripkeModel m = validate_model({"x", "y"}, {{"x", "y"}},
                                 {{"x", {{"p", true}}}, {"y", {{"p", false}}}});
  CHECK(m.succ[m.index_of("x")].size() == 1);

  KripkeModel c = validate_model({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}},
                                 {{"a", {}}, {"b", {}}, {"c", {}}});
  CHECK(c.succ[c.index_of("a")].size() == 2);  // (a,c) added

  CHECK_THROWS_AS(validate_model({"a", "b"}, {{"a", "b"}, {"b", "a"}}, {}),
                  ModelError);
}

TEST_CASE("eval_at matches the model from the two-world witness") {
  KripkeModel m = validate_model({"x", "y"}, {{"x", "y"}},
                                 {{"x", {{"p", true}}}, {"y", {{"p", false}}}});
  FormulaPtr p = mk_var("p");
  CHECK_FALSE(eval_at(m, "x", mk_box(p)));
  CHECK(eval_at(m, "x", mk_box(mk_box(p))));
  CHECK(eval_at(m, "x", mk_box(mk_box(mk_box(p)))));

  // isolated world: box bot holds vacuously
  KripkeModel iso = validate_model({"w"}, {}, {{"w", {}}});
  CHECK(eval_at(iso, "w", mk_box(mk_bottom())));

  CHECK_THROWS_AS(eval_at(iso, "nope", p), ModelError);
}

TEST_CASE("Loeb instance holds on a 3-chain with p false everywhere") {
  KripkeModel m = chain3_p_false();
  FormulaPtr p = mk_var("p");
  FormulaPtr loeb = mk_implies(mk_box(mk_implies(mk_box(p), p)), mk_box(p));
  CHECK(eval_at(m, "a", loeb));
  for (const auto& w : m.worlds)
    CHECK(eval_at(m, w, loeb) == brute_eval(m, m.index_of(w), loeb));
}

TEST_CASE("build_tail_limit constancy flags") {
  KripkeModel base = validate_model({"w"}, {}, {{"w", {{"p", true}}}});
  TailLimitModel strong =
      build_tail_limit(base, "w", {}, {{"p", true}}, {{"p", true}});
  CHECK(strong.constant_tail);
  CHECK(strong.strongly_constant);

  TailLimitModel constant_only =
      build_tail_limit(base, "w", {}, {{"p", true}}, {{"p", false}});
  CHECK(constant_only.constant_tail);
  CHECK_FALSE(constant_only.strongly_constant);

  TailLimitModel varying = build_tail_limit(base, "w", {{{"p", false}}},
                                            {{"p", true}}, {{"p", true}});
  CHECK_FALSE(varying.constant_tail);

  CHECK_THROWS_AS(build_tail_limit(base, "v", {}, {}, {}), ModelError);
}

TEST_CASE("limit evaluation on the constant single-world model") {
  KripkeModel base = validate_model({"w"}, {}, {{"w", {{"p", true}}}});
  TailLimitModel tm =
      build_tail_limit(base, "w", {}, {{"p", true}}, {{"p", false}});
  FormulaPtr p = mk_var("p");
  CHECK(eval_tail_limit(tm, mk_box(p)).at_limit);
  CHECK_FALSE(eval_tail_limit(tm, p).at_limit);
  CHECK_FALSE(eval_tail_limit(tm, mk_implies(mk_box(p), p)).at_limit);

  // box q -> q is eventually always true in any tail
  FormulaPtr q = mk_var("q");
  KripkeModel base2 = validate_model({"w"}, {}, {{"w", {{"q", false}}}});
  TailLimitModel tm2 = build_tail_limit(base2, "w", {{{"q", true}}},
                                        {{"q", false}}, {{"q", true}});
  CHECK(eval_tail_limit(tm2, mk_implies(mk_box(q), q)).eventually_always);
}

TEST_CASE("~box bot holds at every limit") {
  FormulaPtr not_box_bot = mk_not(mk_box(mk_bottom()));
  KripkeModel base = chain3_p_false();
  for (const auto& w : base.worlds) {
    TailLimitModel tm =
        build_tail_limit(base, w, {{{"p", true}}}, {{"p", false}}, {{"p", true}});
    CHECK(eval_tail_limit(tm, not_box_bot).at_limit);
  }
}

TEST_CASE("persistence: base world truth is unchanged by the extension") {
  KripkeModel base = validate_model(
      {"x", "y"}, {{"x", "y"}},
      {{"x", {{"p", true}, {"q", false}}}, {"y", {{"p", false}, {"q", true}}}});
  TailLimitModel tm = build_tail_limit(base, "x", {{{"p", false}, {"q", false}}},
                                       {{"p", true}, {"q", true}},
                                       {{"p", false}, {"q", false}});
  FormulaPtr fs[] = {
      mk_var("p"), mk_box(mk_var("p")), mk_implies(mk_box(mk_var("q")), mk_var("p")),
      mk_box(mk_implies(mk_var("p"), mk_var("q")))};
  for (const auto& f : fs)
    for (const auto& w : base.worlds)
      CHECK(eval_tail_world(tm, w, f) == eval_at(base, w, f));
}

TEST_CASE("stabilization: extra tail rows never flip stabilized truth") {
  KripkeModel base = validate_model({"x", "y"}, {{"x", "y"}},
                                    {{"x", {{"p", true}, {"q", true}}},
                                     {"y", {{"p", false}, {"q", true}}}});
  std::vector<Valuation> prefix = {{{"p", false}, {"q", true}},
                                   {{"p", true}, {"q", false}}};
  TailLimitModel tm = build_tail_limit(base, "x", prefix,
                                       {{"p", true}, {"q", true}},
                                       {{"p", false}, {"q", true}});
  FormulaPtr f = mk_implies(mk_box(mk_implies(mk_var("p"), mk_var("q"))),
                            mk_box(mk_var("q")));
  LimitVerdict v = eval_tail_limit(tm, f);
  CHECK(v.stabilization_index <= static_cast<int>(prefix.size()) + 3 + 1);

  // Evaluating with the tail unrolled further must agree after stabilization:
  // extend the explicit prefix by copies of the constant valuation.
  std::vector<Valuation> longer = prefix;
  for (int i = 0; i < v.stabilization_index + 5; ++i)
    longer.push_back(tm.constant);
  TailLimitModel tm2 =
      build_tail_limit(base, "x", longer, tm.constant, tm.limit);
  LimitVerdict v2 = eval_tail_limit(tm2, f);
  CHECK(v.at_limit == v2.at_limit);
  CHECK(v.eventually_always == v2.eventually_always);
  for (size_t k = v.stabilization_index; k <= longer.size(); ++k) {
    if (k < 1) continue;
    CHECK(eval_tail_world(tm2, "t" + std::to_string(k), f) ==
          eval_tail_world(tm2, "t#", f));
  }
}

TEST_CASE("model JSON round trip") {
  KripkeModel base = validate_model({"x", "y"}, {{"x", "y"}},
                                    {{"x", {{"p", true}}}, {"y", {{"p", false}}}});
  TailLimitModel tm =
      build_tail_limit(base, "x", {{{"p", false}}}, {{"p", true}}, {{"p", false}});
  ModelFile mf = model_from_json(model_to_json(tm));
  REQUIRE(mf.tail.has_value());
  CHECK(mf.tail->attach == "x");
  CHECK(mf.tail->prefix.size() == 1);
  CHECK(model_to_json(*mf.tail) == model_to_json(tm));

  ModelFile plain = model_from_json(model_to_json(base));
  CHECK_FALSE(plain.tail.has_value());
  CHECK(eval_at(plain.base, "x", mk_box(mk_var("p"))) == false);
}
