// Seeded cross-validation harness tying the prover, the checker, and the
// semantics together: every emitted proof is re-checked, every countermodel
// re-evaluated, and the cross-calculus relationships asserted.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "provd/formula.hpp"

namespace provd {

// splitmix64; fixed here so reports are byte-identical across platforms.
struct FuzzRng {
  uint64_t state = 0;
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
};

// Random formula with at most `size` connectives; box drawn with weight 1/3
// to keep modal depth meaningful at small sizes.
FormulaPtr random_formula(FuzzRng& rng, int size, int vars);

struct FuzzParams {
  uint64_t seed = 1;
  int iterations = 100;
  int size = 10;
  int vars = 3;
};

struct FuzzCase {
  std::string formula;
  std::string left;  // optional extra left-side formula, may be empty
  bool gl = false, s = false, d2_none = false, d2_semi = false, d3 = false;
  std::vector<std::string> problems;
};

struct FuzzReport {
  FuzzParams params;
  std::vector<FuzzCase> cases;
  int anomalies = 0;
  int gl_provable = 0, s_provable = 0, d_provable = 0;
  int proofs_checked = 0, countermodels_verified = 0;
};

FuzzReport fuzz_round(const FuzzParams& params);

std::string fuzz_report_text(const FuzzReport& report);

}  // namespace provd
