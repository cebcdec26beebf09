#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "passloc/interlace.hpp"
#include "passloc/laurent.hpp"
#include "passloc/real.hpp"
#include "passloc/walks.hpp"

namespace passloc {

struct StripChain {
  enum class Direction { lower, upper_mirror };
  Direction direction = Direction::lower;
  int first = 0;  // index of polys[0]
  std::vector<LaurentPoly> polys;
  std::vector<PForm> forms;  // empty when built without certification

  // Out-of-range indices give the boundary values (G_{b+1} = 0 for the mirror chain).
  LaurentPoly at(int j) const;
  const PForm& form(int j) const;
  int last() const { return first + static_cast<int>(polys.size()) - 1; }
};

// Diagonal level factors: U_j = p_{j,1} w + p_{j,2}, D_j = p_{j,3}/w + p_{j,4}.
LaurentPoly level_up(const WalkSpec& s, int j);
LaurentPoly level_down(const WalkSpec& s, int j);

// G_0 .. G_{y_max}
StripChain strip_lower(const WalkSpec& spec, int y_max, bool certify = true);
// mirror chain G~_j for j = j_min .. b (G~_b = 1, G~_{b+1} = 0); j_min defaults to y + 1
StripChain strip_upper(const WalkSpec& spec, int y, int b, bool certify = true, int j_min = -1);

// Standard walk chains g_0 .. g_{y_max} and the mirror g~_j.
StripChain strip_lower_standard(const WalkSpec& spec, int y_max, bool certify = true);
StripChain strip_upper_standard(const WalkSpec& spec, int y, int b, bool certify = true, int j_min = -1);

struct TwoPoint {
  mpq_class p3, p4;  // p3 w^-1 + p4
};

struct PassageGF {
  Lattice kind = Lattice::diagonal;
  int y = 1;
  int b = 2;
  LaurentPoly numerator;    // F = numerator / denominator, gcd-reduced
  LaurentPoly denominator;
  LaurentPoly pf_poly;      // G (F = two_point_product / G * H)
  LaurentPoly two_point_product;
  std::vector<TwoPoint> two_point_factors;  // non-degenerate factors only
  LaurentPoly q_num, q_den;                 // H, unreduced
  bool certified = false;
  std::optional<PForm> pf_part;
  std::optional<QForm> q_part;
  mpq_class value_at_one;
  // Chain degree bounds were checked along the way when certified.
  int chain_bound = 0;
};

// Diagonal (or embedded honeycomb) passage generating function, finite b.
PassageGF passage_gf(const WalkSpec& spec, int y, int b, bool certify = true);
// Standard walk, raw horizontal displacement.
PassageGF passage_gf_standard(const WalkSpec& spec, int y, int b, bool certify = true);
// Dispatches on spec.kind (honeycomb goes through the embedding).
PassageGF passage_gf_any(const WalkSpec& spec, int y, int b, bool certify = true);

struct Pmf {
  long offset = 0;
  std::vector<double> values;
  std::vector<Real> precise;  // same indexing when the producer has extra precision
  double total = std::numeric_limits<double>::quiet_NaN();  // F(1) of the source, when known
  double tail_bound = 0;
  bool lo_exact = false;  // values below the stored range are exactly zero
  bool hi_exact = false;
  double abs_err = 0;     // accuracy estimate per entry
  double noise = 0;       // rounding noise level per entry (used for sign decisions)
  std::optional<long> b;  // nullopt: b = infinity
  double achieved = 0;    // convergence distance of the limit procedure
  double fft_check = std::numeric_limits<double>::quiet_NaN();
  double min_before_clamp = 0;
  long samples = 0;       // > 0 for empirical PMFs
  std::string index = "rescaled";  // or "raw"

  double mass() const;
  double at(long k) const;
  long end() const { return offset + static_cast<long>(values.size()); }
};

struct ExtractOptions {
  double mass_tol = 1e-16;  // truncated tail mass per side
  int fft_log2 = 14;        // 0 disables the cross-check
};

Pmf pmf_extract(const PassageGF& f, const ExtractOptions& opt = {});

struct LimitOptions {
  enum class Method { closure, doubling };
  Method method = Method::closure;
  double tol = 5e-11;      // closure: sup change between grid doublings
  int min_log2 = 12;
  int max_log2 = 24;
  double trunc_rel = 1e-16;  // entries below this fraction of the max are folded into tail_bound
  double tv_tol = 1e-10;     // doubling
  long b_max = 65536;        // doubling
};

// b -> infinity. Closure: the strip above the listed levels is closed by the
// attracting fixed point of the periodic default rows, then inverted by FFT.
Pmf pmf_limit(const WalkSpec& spec, int y, const LimitOptions& opt = {});
// The b, 2b, ... schedule with a total-variation stopping rule.
Pmf pmf_limit_doubling(const WalkSpec& spec, int y, double tv_tol, long b_max);

// Evaluates F_y^{0,b} (b = 0 means infinity) at complex w via the level continued fraction.
std::complex<double> passage_value(const WalkSpec& spec, int y, long b, std::complex<double> w);
// P(tau_0 < infinity) from the closed strip at w = 1.
double limit_hitting_probability(const WalkSpec& spec, int y);

// FFT inversion of a generating function sampled on the unit circle; k in [-n/2, n/2).
std::vector<double> fft_coefficients(const std::function<std::complex<double>(std::complex<double>)>& f, int log2n);

struct DecompositionReport {
  int geometric_count = 0;            // beta roots of the P part
  int reflected_geometric_count = 0;  // alpha roots of the P part
  int reflected_two_point_count = 0;
  AtomicAmcmRep amcm;
  int bound = 0;            // degree bound checked for the counts
  bool bounds_ok = false;
  bool chain_bounds_ok = false;  // counts within the chain recurrence bound
};

DecompositionReport decompose(const PassageGF& f);

// PMF rebuilt from the factor sequences of the decomposition, on [k_min, k_max].
std::vector<Real> reconstruct_from_factors(const PassageGF& f, long k_min, long k_max);

// Reflecting-barrier case analysis with strong-Markov products.
Pmf barrier_pmf(const WalkSpec& spec, int y, const LimitOptions& opt = {});

// Convolution of two PMFs (double precision).
Pmf convolve_pmf(const Pmf& a, const Pmf& b);

}  // namespace passloc
