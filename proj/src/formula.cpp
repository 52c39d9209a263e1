#include "provd/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace provd {

Formula::Formula(FKind k, std::string n, FormulaPtr l, FormulaPtr r)
    : kind(k), name(std::move(n)), lhs(std::move(l)), rhs(std::move(r)) {
  switch (kind) {
    case FKind::Var: key = name; break;
    case FKind::Bottom: key = "#"; break;
    case FKind::Implies: key = "(" + lhs->key + ">" + rhs->key + ")"; break;
    case FKind::Box: key = "[" + lhs->key + "]"; break;
  }
}

FormulaPtr mk_var(const std::string& name) {
  return std::make_shared<Formula>(FKind::Var, name, nullptr, nullptr);
}
FormulaPtr mk_bottom() {
  static const FormulaPtr bot =
      std::make_shared<Formula>(FKind::Bottom, "", nullptr, nullptr);
  return bot;
}
FormulaPtr mk_implies(FormulaPtr lhs, FormulaPtr rhs) {
  return std::make_shared<Formula>(FKind::Implies, "", std::move(lhs),
                                   std::move(rhs));
}
FormulaPtr mk_box(FormulaPtr body) {
  return std::make_shared<Formula>(FKind::Box, "", std::move(body), nullptr);
}
FormulaPtr mk_not(FormulaPtr a) { return mk_implies(std::move(a), mk_bottom()); }
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) {
  return mk_implies(mk_not(std::move(a)), std::move(b));
}
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) {
  return mk_not(mk_implies(std::move(a), mk_not(std::move(b))));
}
FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b) {
  return mk_and(mk_implies(a, b), mk_implies(b, a));
}
FormulaPtr mk_top() { return mk_implies(mk_bottom(), mk_bottom()); }

bool is_boxed(const FormulaPtr& f) { return f->kind == FKind::Box; }

FormulaSet make_set(std::vector<FormulaPtr> items) {
  std::sort(items.begin(), items.end(), formula_less);
  items.erase(std::unique(items.begin(), items.end(),
                          [](const FormulaPtr& a, const FormulaPtr& b) {
                            return same_formula(a, b);
                          }),
              items.end());
  return items;
}

bool set_contains(const FormulaSet& s, const FormulaPtr& f) {
  auto it = std::lower_bound(s.begin(), s.end(), f, formula_less);
  return it != s.end() && same_formula(*it, f);
}

FormulaSet set_insert(const FormulaSet& s, const FormulaPtr& f) {
  auto it = std::lower_bound(s.begin(), s.end(), f, formula_less);
  if (it != s.end() && same_formula(*it, f)) return s;
  FormulaSet out = s;
  out.insert(out.begin() + (it - s.begin()), f);
  return out;
}

FormulaSet set_erase(const FormulaSet& s, const FormulaPtr& f) {
  auto it = std::lower_bound(s.begin(), s.end(), f, formula_less);
  if (it == s.end() || !same_formula(*it, f)) return s;
  FormulaSet out = s;
  out.erase(out.begin() + (it - s.begin()));
  return out;
}

FormulaSet set_union(const FormulaSet& a, const FormulaSet& b) {
  FormulaSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out), formula_less);
  return out;
}

bool set_subset(const FormulaSet& a, const FormulaSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end(), formula_less);
}

bool set_equal(const FormulaSet& a, const FormulaSet& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!same_formula(a[i], b[i])) return false;
  return true;
}

FormulaSet boxed_members(const FormulaSet& s) {
  FormulaSet out;
  for (const auto& f : s)
    if (f->kind == FKind::Box) out.push_back(f);
  return make_set(std::move(out));
}

FormulaSet unbox_members(const FormulaSet& s) {
  FormulaSet out;
  for (const auto& f : s)
    if (f->kind == FKind::Box) out.push_back(f->lhs);
  return make_set(std::move(out));
}

FormulaSet box_all(const FormulaSet& s) {
  FormulaSet out;
  out.reserve(s.size());
  for (const auto& f : s) out.push_back(mk_box(f));
  return make_set(std::move(out));
}

static void collect_vars(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case FKind::Var: out.insert(f->name); break;
    case FKind::Bottom: break;
    case FKind::Implies:
      collect_vars(f->lhs, out);
      collect_vars(f->rhs, out);
      break;
    case FKind::Box: collect_vars(f->lhs, out); break;
  }
}

std::vector<std::string> variables_of(const FormulaPtr& f) {
  std::set<std::string> vars;
  collect_vars(f, vars);
  return {vars.begin(), vars.end()};
}

std::vector<std::string> variables_of(const FormulaSet& s) {
  std::set<std::string> vars;
  for (const auto& f : s) collect_vars(f, vars);
  return {vars.begin(), vars.end()};
}

static void collect_subformulas(const FormulaPtr& f,
                                std::vector<FormulaPtr>& out) {
  out.push_back(f);
  switch (f->kind) {
    case FKind::Implies:
      collect_subformulas(f->lhs, out);
      collect_subformulas(f->rhs, out);
      break;
    case FKind::Box: collect_subformulas(f->lhs, out); break;
    default: break;
  }
}

SubformulaClosure subformula_closure(const FormulaSet& fs) {
  std::vector<FormulaPtr> all;
  for (const auto& f : fs) collect_subformulas(f, all);
  SubformulaClosure c;
  c.formulas = make_set(std::move(all));
  c.boxed = boxed_members(c.formulas);
  return c;
}

bool operator==(const Sequent& a, const Sequent& b) {
  return a.kind == b.kind && set_equal(a.left, b.left) &&
         set_equal(a.right, b.right);
}

std::string arrow_token(SequentKind k) {
  switch (k) {
    case SequentKind::GL: return "=>";
    case SequentKind::S: return "=s>";
    case SequentKind::D: return "=d>";
  }
  return "=>";
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  Ident, Box, Bot, Top, Not, And, Or, Arrow, Iff,
  LParen, RParen, Comma, ArrowGL, ArrowS, ArrowD, End
};

struct Token {
  Tok tok;
  std::string text;
  size_t pos;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : src_(text) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_])))
      ++i_;
    size_t start = i_;
    if (i_ >= src_.size()) {
      cur_ = {Tok::End, "", start};
      return;
    }
    char c = src_[i_];
    if (std::islower(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < src_.size() &&
             (std::islower(static_cast<unsigned char>(src_[j])) ||
              std::isdigit(static_cast<unsigned char>(src_[j])) ||
              src_[j] == '_'))
        ++j;
      std::string word(src_.substr(i_, j - i_));
      i_ = j;
      if (word == "box") cur_ = {Tok::Box, word, start};
      else if (word == "bot") cur_ = {Tok::Bot, word, start};
      else if (word == "top") cur_ = {Tok::Top, word, start};
      else cur_ = {Tok::Ident, word, start};
      return;
    }
    switch (c) {
      case '~': ++i_; cur_ = {Tok::Not, "~", start}; return;
      case '&': ++i_; cur_ = {Tok::And, "&", start}; return;
      case '|': ++i_; cur_ = {Tok::Or, "|", start}; return;
      case '(': ++i_; cur_ = {Tok::LParen, "(", start}; return;
      case ')': ++i_; cur_ = {Tok::RParen, ")", start}; return;
      case ',': ++i_; cur_ = {Tok::Comma, ",", start}; return;
      case '-':
        if (i_ + 1 < src_.size() && src_[i_ + 1] == '>') {
          i_ += 2;
          cur_ = {Tok::Arrow, "->", start};
          return;
        }
        throw ParseError("expected '->'", start);
      case '<':
        if (src_.substr(i_, 3) == "<->") {
          i_ += 3;
          cur_ = {Tok::Iff, "<->", start};
          return;
        }
        throw ParseError("expected '<->'", start);
      case '=':
        if (src_.substr(i_, 3) == "=s>") {
          i_ += 3;
          cur_ = {Tok::ArrowS, "=s>", start};
          return;
        }
        if (src_.substr(i_, 3) == "=d>") {
          i_ += 3;
          cur_ = {Tok::ArrowD, "=d>", start};
          return;
        }
        if (src_.substr(i_, 2) == "=>") {
          i_ += 2;
          cur_ = {Tok::ArrowGL, "=>", start};
          return;
        }
        throw ParseError("expected '=>', '=s>' or '=d>'", start);
      default:
        throw ParseError(std::string("unknown token '") + c + "'", start);
    }
  }

  std::string_view src_;
  size_t i_ = 0;
  Token cur_;
};

// Grammar, loosest first:
//   formula := imp [ "<->" imp ]          (non-associative)
//   imp     := or [ "->" imp ]            (right-associative)
//   or      := and { "|" and }            (left-associative)
//   and     := unary { "&" unary }        (left-associative)
//   unary   := ("box" | "~") unary | primary
//   primary := ident | "bot" | "top" | "(" formula ")"
class Parser {
public:
  explicit Parser(std::string_view text) : lex_(text) {}

  FormulaPtr formula() {
    FormulaPtr a = imp();
    if (lex_.peek().tok == Tok::Iff) {
      lex_.take();
      FormulaPtr b = imp();
      if (lex_.peek().tok == Tok::Iff)
        throw ParseError("'<->' is non-associative", lex_.peek().pos);
      return mk_iff(a, b);
    }
    return a;
  }

  FormulaPtr whole_formula() {
    FormulaPtr f = formula();
    expect_end();
    return f;
  }

  Sequent sequent() {
    Sequent s;
    s.left = list_until_arrow(&s.kind);
    s.right = list_until_end();
    return s;
  }

private:
  FormulaPtr imp() {
    FormulaPtr a = disj();
    if (lex_.peek().tok == Tok::Arrow) {
      lex_.take();
      return mk_implies(a, imp());
    }
    return a;
  }

  FormulaPtr disj() {
    FormulaPtr a = conj();
    while (lex_.peek().tok == Tok::Or) {
      lex_.take();
      a = mk_or(a, conj());
    }
    return a;
  }

  FormulaPtr conj() {
    FormulaPtr a = unary();
    while (lex_.peek().tok == Tok::And) {
      lex_.take();
      a = mk_and(a, unary());
    }
    return a;
  }

  FormulaPtr unary() {
    const Token& t = lex_.peek();
    if (t.tok == Tok::Box) {
      lex_.take();
      return mk_box(unary());
    }
    if (t.tok == Tok::Not) {
      lex_.take();
      return mk_not(unary());
    }
    return primary();
  }

  FormulaPtr primary() {
    Token t = lex_.take();
    switch (t.tok) {
      case Tok::Ident: return mk_var(t.text);
      case Tok::Bot: return mk_bottom();
      case Tok::Top: return mk_top();
      case Tok::LParen: {
        FormulaPtr f = formula();
        Token close = lex_.take();
        if (close.tok != Tok::RParen)
          throw ParseError("unbalanced parentheses", close.pos);
        return f;
      }
      default: throw ParseError("expected a formula", t.pos);
    }
  }

  FormulaSet list_until_arrow(SequentKind* kind) {
    std::vector<FormulaPtr> items;
    for (;;) {
      Tok t = lex_.peek().tok;
      if (t == Tok::ArrowGL || t == Tok::ArrowS || t == Tok::ArrowD) {
        *kind = t == Tok::ArrowGL ? SequentKind::GL
                : t == Tok::ArrowS ? SequentKind::S
                                   : SequentKind::D;
        lex_.take();
        return make_set(std::move(items));
      }
      if (t == Tok::End)
        throw ParseError("missing sequent arrow", lex_.peek().pos);
      if (!items.empty()) {
        Token c = lex_.take();
        if (c.tok != Tok::Comma)
          throw ParseError("expected ',' or a sequent arrow", c.pos);
      }
      items.push_back(formula());
    }
  }

  FormulaSet list_until_end() {
    std::vector<FormulaPtr> items;
    if (lex_.peek().tok == Tok::End) return {};
    items.push_back(formula());
    while (lex_.peek().tok == Tok::Comma) {
      lex_.take();
      items.push_back(formula());
    }
    expect_end();
    return make_set(std::move(items));
  }

  void expect_end() {
    if (lex_.peek().tok != Tok::End)
      throw ParseError("trailing input", lex_.peek().pos);
  }

  Lexer lex_;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  return Parser(text).whole_formula();
}

Sequent parse_sequent(std::string_view text) { return Parser(text).sequent(); }

// ---------------------------------------------------------------------------
// Printer. Re-sugaring priority: top, <->, &, ~, |, then core ->.
// Binding strength: prefix > & > | > -> > <->.
// ---------------------------------------------------------------------------

namespace {

enum Level { LvIff = 1, LvImp = 2, LvOr = 3, LvAnd = 4, LvPrefix = 5, LvAtom = 6 };

bool is_bottom(const FormulaPtr& f) { return f->kind == FKind::Bottom; }

bool match_not(const FormulaPtr& f, FormulaPtr& a) {
  if (f->kind == FKind::Implies && is_bottom(f->rhs)) {
    a = f->lhs;
    return true;
  }
  return false;
}

bool match_top(const FormulaPtr& f) {
  return f->kind == FKind::Implies && is_bottom(f->lhs) && is_bottom(f->rhs);
}

bool match_or(const FormulaPtr& f, FormulaPtr& a, FormulaPtr& b) {
  if (f->kind == FKind::Implies && f->lhs->kind == FKind::Implies &&
      is_bottom(f->lhs->rhs)) {
    a = f->lhs->lhs;
    b = f->rhs;
    return true;
  }
  return false;
}

bool match_and(const FormulaPtr& f, FormulaPtr& a, FormulaPtr& b) {
  // (a -> (b -> bot)) -> bot
  if (f->kind == FKind::Implies && is_bottom(f->rhs) &&
      f->lhs->kind == FKind::Implies && f->lhs->rhs->kind == FKind::Implies &&
      is_bottom(f->lhs->rhs->rhs)) {
    a = f->lhs->lhs;
    b = f->lhs->rhs->lhs;
    return true;
  }
  return false;
}

bool match_iff(const FormulaPtr& f, FormulaPtr& a, FormulaPtr& b) {
  FormulaPtr x, y;
  if (!match_and(f, x, y)) return false;
  if (x->kind != FKind::Implies || y->kind != FKind::Implies) return false;
  if (!same_formula(x->lhs, y->rhs) || !same_formula(x->rhs, y->lhs))
    return false;
  a = x->lhs;
  b = x->rhs;
  return true;
}

int display_level(const FormulaPtr& f) {
  FormulaPtr a, b;
  if (f->kind == FKind::Var || f->kind == FKind::Bottom) return LvAtom;
  if (f->kind == FKind::Box) return LvPrefix;
  if (match_top(f)) return LvAtom;
  if (match_iff(f, a, b)) return LvIff;
  if (match_and(f, a, b)) return LvAnd;
  if (match_not(f, a)) return LvPrefix;
  if (match_or(f, a, b)) return LvOr;
  return LvImp;
}

std::string print_at(const FormulaPtr& f, int min_level);

std::string print_raw(const FormulaPtr& f) {
  FormulaPtr a, b;
  switch (f->kind) {
    case FKind::Var: return f->name;
    case FKind::Bottom: return "bot";
    case FKind::Box: {
      std::string inner = print_at(f->lhs, LvPrefix);
      return inner.front() == '(' ? "box" + inner : "box " + inner;
    }
    case FKind::Implies: break;
  }
  if (match_top(f)) return "top";
  if (match_iff(f, a, b))
    return print_at(a, LvImp) + " <-> " + print_at(b, LvImp);
  if (match_and(f, a, b)) return print_at(a, LvAnd) + " & " + print_at(b, LvPrefix);
  if (match_not(f, a)) return "~" + print_at(a, LvPrefix);
  if (match_or(f, a, b)) return print_at(a, LvOr) + " | " + print_at(b, LvAnd);
  return print_at(f->lhs, LvOr) + " -> " + print_at(f->rhs, LvImp);
}

std::string print_at(const FormulaPtr& f, int min_level) {
  std::string s = print_raw(f);
  if (display_level(f) < min_level) return "(" + s + ")";
  return s;
}

}  // namespace

std::string print_formula(const FormulaPtr& f) { return print_at(f, LvIff); }

std::string print_set(const FormulaSet& s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += print_formula(s[i]);
  }
  return out;
}

std::string print_sequent(const Sequent& s) {
  std::string out = print_set(s.left);
  if (!s.left.empty()) out += " ";
  out += arrow_token(s.kind);
  if (!s.right.empty()) out += " " + print_set(s.right);
  return out;
}

}  // namespace provd
