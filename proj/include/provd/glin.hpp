// The linear instantiation: validity over finite strict linear orders
// (nat-frames), and refutation search over their limit extension, the
// omega-plus frame.

#pragma once

#include <optional>

#include "provd/kripke.hpp"

namespace provd {

// Worlds 0..size with w above w' iff w > w'; world `size` sees every other
// world.
struct NatFrameModel {
  int size = 0;
  std::vector<Valuation> val;  // indexed by world
};

KripkeModel nat_frame_to_kripke(const NatFrameModel& m);

struct GLLinVerdict {
  bool valid = false;  // valid-at-bound; the bound is reported next to it
  int bound = 0;
  std::optional<NatFrameModel> witness;
  int witness_world = -1;
};

// Exhaustive check of every nat-frame model of size <= bound over vars(f),
// every world; the first counterexample in enumeration order is returned.
// bound <= 0 selects the default |SF(f)| + 1.
GLLinVerdict gllin_valid(const FormulaPtr& f, int bound = 0);

struct OmegaConfig {
  int base_size_max = 0;    // 0 = default |SF(f)| + 1
  int prefix_len_max = 2;
};

struct OmegaResult {
  bool refuted = false;
  std::optional<TailLimitModel> model;  // first falsifying omega-model
};

// Enumerates models on the omega-plus frame (a nat-frame base attached at
// its top world, with eventually-constant tail valuations) and evaluates f
// at the limit. A refutation semi-procedure, not a decision procedure.
OmegaResult omega_refute_search(const FormulaPtr& f, const OmegaConfig& cfg = {});

}  // namespace provd
