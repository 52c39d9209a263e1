#include "doctest.h"
#include "provd/formula.hpp"

#include <cstdint>
#include <functional>

using namespace provd;

TEST_CASE("parsing desugars to the core connectives") {
  FormulaPtr f = parse_formula("box(box p -> p) -> box p");
  FormulaPtr p = mk_var("p");
  FormulaPtr want = mk_implies(mk_box(mk_implies(mk_box(p), p)), mk_box(p));
  CHECK(same_formula(f, want));

  CHECK(same_formula(parse_formula("~ box bot"),
                     mk_implies(mk_box(mk_bottom()), mk_bottom())));

  // -> is right-associative.
  FormulaPtr q = mk_var("q"), r = mk_var("r");
  CHECK(same_formula(parse_formula("p -> q -> r"),
                     mk_implies(p, mk_implies(q, r))));

  CHECK(same_formula(parse_formula("p | q"), mk_or(p, q)));
  CHECK(same_formula(parse_formula("p & q"), mk_and(p, q)));
  CHECK(same_formula(parse_formula("p <-> q"), mk_iff(p, q)));
  CHECK(same_formula(parse_formula("top"), mk_top()));
  // & binds tighter than |, | tighter than ->.
  CHECK(same_formula(parse_formula("p & q | r -> s"),
                     mk_implies(mk_or(mk_and(p, q), r), mk_var("s"))));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_formula("p -> "), ParseError);
  CHECK_THROWS_AS(parse_formula("(p -> q"), ParseError);
  CHECK_THROWS_AS(parse_formula("p @ q"), ParseError);
  CHECK_THROWS_AS(parse_formula("p <-> q <-> r"), ParseError);
  CHECK_THROWS_AS(parse_formula("P"), ParseError);
  CHECK_THROWS_AS(parse_sequent("p, q"), ParseError);  // missing arrow
}

TEST_CASE("printing is minimal and round-trips") {
  FormulaPtr p = mk_var("p"), q = mk_var("q");
  CHECK(print_formula(mk_implies(mk_box(p), p)) == "box p -> p");
  CHECK(print_formula(mk_box(mk_implies(p, q))) == "box(p -> q)");
  CHECK(print_formula(mk_bottom()) == "bot");
  CHECK(print_formula(mk_or(mk_box(p), mk_box(q))) == "box p | box q");
  CHECK(print_formula(mk_not(mk_box(mk_bottom()))) == "~box bot");
  CHECK(print_formula(mk_top()) == "top");
  CHECK(print_formula(mk_implies(p, mk_implies(q, p))) == "p -> q -> p");
  CHECK(print_formula(mk_implies(mk_implies(p, q), p)) == "(p -> q) -> p");
}

namespace {

// Small deterministic generator for the round-trip property.
struct Rng {
  uint64_t state;
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
};

FormulaPtr random_formula(Rng& rng, int budget) {
  if (budget <= 0) {
    switch (rng.below(4)) {
      case 0: return mk_bottom();
      case 1: return mk_var("p");
      case 2: return mk_var("q");
      default: return mk_var("r");
    }
  }
  switch (rng.below(7)) {
    case 0: return mk_box(random_formula(rng, budget - 1));
    case 1: return mk_not(random_formula(rng, budget - 1));
    case 2: return mk_or(random_formula(rng, budget / 2),
                         random_formula(rng, budget / 2));
    case 3: return mk_and(random_formula(rng, budget / 2),
                          random_formula(rng, budget / 2));
    case 4: return mk_iff(random_formula(rng, budget / 3),
                          random_formula(rng, budget / 3));
    default:
      return mk_implies(random_formula(rng, budget / 2),
                        random_formula(rng, budget / 2));
  }
}

}  // namespace

TEST_CASE("round trip: parse(print(f)) == f over random formulas") {
  Rng rng{20240 };
  for (int i = 0; i < 2000; ++i) {
    FormulaPtr f = random_formula(rng, 1 + i % 12);
    std::string text = print_formula(f);
    CAPTURE(text);
    FormulaPtr g = parse_formula(text);
    CHECK(same_formula(f, g));
  }
}

TEST_CASE("sequent parsing selects the kind and collapses duplicates") {
  Sequent d = parse_sequent("box box box p =d> box p");
  CHECK(d.kind == SequentKind::D);
  CHECK(d.left.size() == 1);
  CHECK(same_formula(d.left[0], mk_box(mk_box(mk_box(mk_var("p"))))));

  Sequent s = parse_sequent("=s> box p -> p");
  CHECK(s.kind == SequentKind::S);
  CHECK(s.left.empty());
  CHECK(s.right.size() == 1);

  Sequent gl = parse_sequent("p, p => p");
  CHECK(gl.kind == SequentKind::GL);
  CHECK(gl.left.size() == 1);
  CHECK(gl.right.size() == 1);

  CHECK(parse_sequent(print_sequent(d)) == d);
  CHECK(parse_sequent("=>") == Sequent{SequentKind::GL, {}, {}});
}

TEST_CASE("subformula closure") {
  FormulaPtr p = mk_var("p");
  FormulaPtr b3 = mk_box(mk_box(mk_box(p)));
  SubformulaClosure c = subformula_closure(make_set({b3, mk_box(p)}));
  CHECK(c.formulas.size() == 4);
  CHECK(c.boxed.size() == 3);

  CHECK(subformula_closure({}).formulas.empty());

  // box((box p -> bot) -> box q) -> ((box p -> bot) -> box q)
  FormulaPtr inner = mk_implies(mk_implies(mk_box(p), mk_bottom()),
                                mk_box(mk_var("q")));
  FormulaPtr f = mk_implies(mk_box(inner), inner);
  SubformulaClosure c2 = subformula_closure(make_set({f}));
  CHECK(c2.formulas.size() == 9);
  CHECK(set_contains(c2.formulas, mk_bottom()));
  CHECK(set_contains(c2.formulas, mk_box(p)));
  CHECK(set_contains(c2.formulas, mk_box(mk_var("q"))));

  // closure size never exceeds the constructor count
  Rng rng{7};
  for (int i = 0; i < 200; ++i) {
    FormulaPtr g = random_formula(rng, 1 + i % 10);
    std::function<int(const FormulaPtr&)> count = [&](const FormulaPtr& h) -> int {
      switch (h->kind) {
        case FKind::Implies: return 1 + count(h->lhs) + count(h->rhs);
        case FKind::Box: return 1 + count(h->lhs);
        default: return 1;
      }
    };
    CHECK(static_cast<int>(subformula_closure({g}).formulas.size()) <= count(g));
  }
}
