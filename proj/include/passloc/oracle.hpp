#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "passloc/passage.hpp"
#include "passloc/walks.hpp"

namespace passloc {

// P(hit 0 before b | start at level y) for the level chain, solved exactly.
mpq_class level_chain_hitting(const WalkSpec& spec, int y, int b);

struct DpOptions {
  double tail_cap = 1e-12;  // stop once the unabsorbed mass is below this
  long max_steps = 200000;
  bool exact = false;       // rational arithmetic (small horizons only)
};

struct DpResult {
  Pmf pmf;                 // over k (rescaled) or raw X for standard walks
  double unabsorbed = 0;
  double absorbed_upper = 0;
  long steps = 0;
  // Filled in exact mode, aligned with pmf.values.
  std::vector<mpq_class> exact;
  mpq_class unabsorbed_exact;
  mpq_class absorbed_upper_exact;
};

// Forward recursion on the lattice. b = 0 means no upper barrier. Honeycomb walks
// run on native moves; the result is indexed like the embedded diagonal PMF.
DpResult dp_pmf(const WalkSpec& spec, int y, long b, const DpOptions& opt = {});

struct McOptions {
  long samples = 1000000;
  long step_cap = 1000000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
};

struct McResult {
  Pmf pmf;  // empirical, normalized by the number of trajectories
  long samples = 0;
  long absorbed = 0;
  long censored = 0;
  long absorbed_upper = 0;
  long long steps = 0;
  std::uint64_t seed = 0;
  double seconds = 0;
};

// Trajectory i draws from mt19937_64 seeded with seed_seq{seed lo, seed hi, i lo, i hi}.
McResult mc_sample(const WalkSpec& spec, int y, long b, const McOptions& opt = {});

struct Comparison {
  double tv = 0;
  double sup = 0;
  double chi2 = 0;
  int chi2_dof = 0;
  double chi2_pvalue = 1;
};

// Chi-square uses the sample count of whichever side is empirical; bins with
// expected count below 5 are pooled.
Comparison compare_dists(const Pmf& p, const Pmf& q);

}  // namespace passloc
