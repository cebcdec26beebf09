#pragma once

#include <vector>

#include "passloc/passage.hpp"
#include "passloc/real.hpp"

namespace passloc {

// Two-sided sequence on [offset, offset + size). An exact end means the
// sequence is zero beyond it; an open end means values there are unknown.
struct Seq {
  long offset = 0;
  std::vector<Real> values;
  bool lo_exact = true;
  bool hi_exact = true;
  Real abs_err = 0;       // per-entry noise; differences scale it by 2^n
  double zero_tol = 1e-25;  // relative to the largest entry

  long end() const { return offset + static_cast<long>(values.size()); }
};

// Uses the high-precision values when present. Open ends are trimmed below
// trunc_rel times the peak.
Seq seq_from_pmf(const Pmf& p, double trunc_rel = 0);

// Forward differences a(k+1) - a(k), zero-extended across exact ends only.
Seq iterated_diff(const Seq& s, int n);

// Entries with |v| <= max(zero_tol * peak, abs_err) are skipped.
int sign_changes(const Seq& s);

struct BellLevel {
  int n;
  int changes;
  bool ok;
};

struct BellReport {
  std::vector<BellLevel> levels;
  bool ok = true;
};

BellReport check_bell(const Seq& s, int n_max);

enum class Side { right, left };

struct CmLevel {
  int n;
  double worst;  // most negative (-1)^n Delta^n b relative to the peak
  bool ok;
};

struct CmReport {
  std::vector<CmLevel> levels;
  bool ok = true;
};

// Complete monotonicity of b(m) = a(m) (right) or a(-m) (left), m >= 0.
CmReport check_cm_amcm(const Seq& s, Side side, int n_max, double tol);

Seq convolve(const Seq& a, const Seq& b);

}  // namespace passloc
