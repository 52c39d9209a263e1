// Formula and sequent syntax for the provability logics GL, S, and D:
// core connectives (bot, ->, box) over propositional variables, with the
// usual abbreviations desugared at parse time.

#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace provd {

enum class FKind : unsigned char { Var, Bottom, Implies, Box };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula node. `key` is a canonical core encoding used for
// equality, hashing and the total order that keeps every set and every
// emitted artifact deterministic.
class Formula {
public:
  FKind kind;
  std::string name;  // Var only
  FormulaPtr lhs;    // Implies: antecedent; Box: body
  FormulaPtr rhs;    // Implies: consequent
  std::string key;

  Formula(FKind k, std::string n, FormulaPtr l, FormulaPtr r);
};

FormulaPtr mk_var(const std::string& name);
FormulaPtr mk_bottom();
FormulaPtr mk_implies(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr mk_box(FormulaPtr body);

// Abbreviations, desugared eagerly:
//   ~a := a -> bot          a | b := (a -> bot) -> b
//   a & b := (a -> (b -> bot)) -> bot
//   a <-> b := (a -> b) & (b -> a)      top := bot -> bot
FormulaPtr mk_not(FormulaPtr a);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_top();

inline bool same_formula(const FormulaPtr& a, const FormulaPtr& b) {
  return a.get() == b.get() || a->key == b->key;
}
inline bool formula_less(const FormulaPtr& a, const FormulaPtr& b) {
  return a->key < b->key;
}
bool is_boxed(const FormulaPtr& f);

// A finite set of formulas: sorted by key, duplicate-free.
using FormulaSet = std::vector<FormulaPtr>;

FormulaSet make_set(std::vector<FormulaPtr> items);
bool set_contains(const FormulaSet& s, const FormulaPtr& f);
FormulaSet set_insert(const FormulaSet& s, const FormulaPtr& f);
FormulaSet set_erase(const FormulaSet& s, const FormulaPtr& f);
FormulaSet set_union(const FormulaSet& a, const FormulaSet& b);
bool set_subset(const FormulaSet& a, const FormulaSet& b);
bool set_equal(const FormulaSet& a, const FormulaSet& b);
FormulaSet boxed_members(const FormulaSet& s);          // members of Box shape
FormulaSet unbox_members(const FormulaSet& s);          // bodies of the boxed members
FormulaSet box_all(const FormulaSet& s);                // { box a | a in s }

// Variables occurring in a formula / set, sorted.
std::vector<std::string> variables_of(const FormulaPtr& f);
std::vector<std::string> variables_of(const FormulaSet& s);

struct SubformulaClosure {
  FormulaSet formulas;
  FormulaSet boxed;
};
SubformulaClosure subformula_closure(const FormulaSet& fs);

// ---------------------------------------------------------------------------
// Sequents: three kinds, two finite formula sets.
// ---------------------------------------------------------------------------

enum class SequentKind : unsigned char { GL, S, D };

struct Sequent {
  SequentKind kind = SequentKind::GL;
  FormulaSet left;
  FormulaSet right;
};

bool operator==(const Sequent& a, const Sequent& b);
std::string arrow_token(SequentKind k);  // "=>", "=s>", "=d>"

// ---------------------------------------------------------------------------
// Parsing and printing
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error {
public:
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

FormulaPtr parse_formula(std::string_view text);
Sequent parse_sequent(std::string_view text);

// Minimal-parenthesization text. Abbreviation patterns are re-sugared so
// that parse_formula(print_formula(f)) == f and distinct formulas never
// share a printed form.
std::string print_formula(const FormulaPtr& f);
std::string print_set(const FormulaSet& s);  // comma-separated
std::string print_sequent(const Sequent& s);

}  // namespace provd
