#pragma once

#include <gmpxx.h>

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "passloc/real.hpp"

namespace passloc {

// Finitely supported two-sided series sum_i coeffs[i] * x^(min_exp + i) over Q.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const mpq_class& c);  // NOLINT: constants convert implicitly
  LaurentPoly(long c) : LaurentPoly(mpq_class(c)) {}
  LaurentPoly(int min_exp, std::vector<mpq_class> coeffs);

  static LaurentPoly monomial(const mpq_class& c, int exp);
  // c_minus * x^-1 + c0 + c_plus * x
  static LaurentPoly three_term(const mpq_class& c_minus, const mpq_class& c0, const mpq_class& c_plus);

  bool is_zero() const { return coeffs_.empty(); }
  int min_exp() const { return min_exp_; }
  int max_exp() const { return min_exp_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  mpq_class coeff(int exp) const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(const mpq_class& s) const;
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly& o) const;
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  // x^k * P
  LaurentPoly shifted(int k) const;

  std::string str(char var = 'w') const;

 private:
  void normalize();
  int min_exp_ = 0;
  std::vector<mpq_class> coeffs_;
};

enum class Op { add, sub, mul, scale };

LaurentPoly combine(Op op, const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly combine(Op op, const LaurentPoly& p, const mpq_class& q);

mpq_class evaluate(const LaurentPoly& p, const mpq_class& x);
std::complex<double> evaluate(const LaurentPoly& p, std::complex<double> x);
Real evaluate(const LaurentPoly& p, const Real& x);
// Complex evaluation that switches to extended precision when Horner cancels.
std::complex<double> evaluate_accurate(const LaurentPoly& p, std::complex<double> x);

struct Degrees {
  int d_minus;
  int d_plus;
};

// d_minus = max(0, -min_exp), d_plus = max(0, max_exp).
Degrees degrees(const LaurentPoly& p);

// Integer polynomial, ascending coefficients.
using ZPoly = std::vector<mpz_class>;

// Isolating interval (lo, hi) for one positive root of a square-free factor of
// the polynomial; the signs refer to that factor.
struct RootEnclosure {
  mpq_class lo;
  mpq_class hi;
  int sign_lo = 0;
  int sign_hi = 0;
  int multiplicity = 1;
  std::shared_ptr<const ZPoly> factor;

  mpq_class width() const { return hi - lo; }
  double approx() const;
};

struct PositiveRoots {
  int count = 0;  // d0, with multiplicity
  std::vector<RootEnclosure> roots;  // ascending
};

mpq_class default_root_width();  // 2^-64

PositiveRoots positive_roots(const LaurentPoly& p, const mpq_class& width = default_root_width(),
                             bool require_simple = false);

// Bisects until hi - lo <= width.
void refine(RootEnclosure& r, const mpq_class& width);

// -1 if a's root < b's root, +1 if greater. Throws EnclosureOverlap when the
// enclosures cannot be separated at width 2^-256.
int compare_roots(RootEnclosure& a, RootEnclosure& b);

// -1 if root < x, +1 if root > x, 0 if the root equals x.
int compare_root(RootEnclosure& a, const mpq_class& x);

// Root value to working precision (bisection then Newton on the factor).
Real root_value(const RootEnclosure& r);

int exact_sign(const ZPoly& p, const mpq_class& x);

}  // namespace passloc
