#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

namespace passloc {

// Runtime-precision binary float used for residues and series coefficients.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

// Working precision in bits. Defaults to 128; PASSLOC_PRECISION_BITS overrides.
// A PrecisionScope on the current thread can raise it temporarily.
unsigned precision_bits();
void set_precision_bits(unsigned bits);

// Raises the working precision on this thread while alive.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

// Applies the configured precision to newly created Real values on this thread.
void use_working_precision();

inline Real to_real(const mpq_class& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

inline mpq_class to_mpq(const Real& x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x.backend().data());
  return q;
}

}  // namespace passloc
