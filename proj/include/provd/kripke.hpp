// Finite GL-models, finitely presented tail-limit extensions, and truth
// evaluation at base worlds, tail worlds, and the limit world.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "provd/formula.hpp"

namespace provd {

using Valuation = std::map<std::string, bool>;

class ModelError : public std::runtime_error {
public:
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

// A finite Kripke model whose accessibility relation is transitive and
// irreflexive (hence converse well-founded). `succ[i]` holds the indices of
// the worlds accessible from world i, after transitive closure.
struct KripkeModel {
  std::vector<std::string> worlds;
  std::vector<std::vector<int>> succ;
  std::vector<Valuation> val;

  int index_of(const std::string& world) const;  // -1 if unknown
};

// Closes `rel` transitively and rejects the result unless it is irreflexive.
// The relation itself is never repaired: a cycle reports the offending world.
KripkeModel validate_model(const std::vector<std::string>& worlds,
                           const std::vector<std::pair<std::string, std::string>>& rel,
                           const std::map<std::string, Valuation>& val);

bool eval_at(const KripkeModel& m, const std::string& world, const FormulaPtr& f);

// Tail-limit extension with an eventually-constant tail valuation: explicit
// valuations for t1..tk, then `constant` for every later tail world, and
// `limit` at the limit world.
struct TailLimitModel {
  KripkeModel base;
  std::string attach;  // t0, a base world
  std::vector<Valuation> prefix;
  Valuation constant;
  Valuation limit;
  bool constant_tail = false;   // all tail worlds (t0 included) agree
  bool strongly_constant = false;  // constant and the limit agrees too
};

TailLimitModel build_tail_limit(KripkeModel base, const std::string& attach,
                                std::vector<Valuation> prefix,
                                Valuation constant, Valuation limit);

struct LimitVerdict {
  bool at_limit = false;
  bool eventually_always = false;
  int stabilization_index = 0;
};

LimitVerdict eval_tail_limit(const TailLimitModel& tm, const FormulaPtr& f);

// Evaluation at a named world: a base id, "t<k>" for 1 <= k <= prefix length,
// "t#" for the stabilized tail region, or "limit". Base names win on clashes.
bool eval_tail_world(const TailLimitModel& tm, const std::string& world,
                     const FormulaPtr& f);

// ---------------------------------------------------------------------------
// JSON model file:
//   {"worlds":[str], "rel":[[str,str]], "val":{world:{var:bool}},
//    "tail":{"attach":str, "prefix":[{var:bool}], "constant":{var:bool},
//            "limit":{var:bool}}}
// "tail" is optional; without it the file is a plain GL-model.
// ---------------------------------------------------------------------------

struct ModelFile {
  KripkeModel base;
  std::optional<TailLimitModel> tail;
};

ModelFile model_from_json(const std::string& text);
std::string model_to_json(const KripkeModel& m);
std::string model_to_json(const TailLimitModel& tm);

}  // namespace provd
