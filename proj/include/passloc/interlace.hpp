#pragma once

#include <string>
#include <variant>
#include <vector>

#include "passloc/laurent.hpp"
#include "passloc/real.hpp"

namespace passloc {

// lambda * prod_k (1/alpha_k - 1/x) * prod_k (beta_k - x)
struct PForm {
  LaurentPoly poly;
  Real lambda;
  std::vector<RootEnclosure> alphas;  // decreasing, in (0,1)
  std::vector<RootEnclosure> betas;   // increasing, in (1,inf)

  int A() const { return static_cast<int>(alphas.size()); }
  int B() const { return static_cast<int>(betas.size()); }
};

struct Rejection {
  std::string clause;
};

std::variant<PForm, Rejection> p_membership(const LaurentPoly& p);

// p_membership that throws PMembershipFailure with the failing clause.
PForm certify_p(const LaurentPoly& p, const std::string& context = "");

// F << G
bool interlaces(const PForm& f, const PForm& g);

// H = G - (a x + b + c/x) F
PForm step_diagonal(const PForm& f, const PForm& g, const mpq_class& a, const mpq_class& b, const mpq_class& c);

// H = (a - b x - c/x) G - d F
PForm step_standard(const PForm& f, const PForm& g, const mpq_class& a, const mpq_class& b, const mpq_class& c,
                    const mpq_class& d);

// numerator / denominator with numerator << denominator
struct QForm {
  PForm numerator;
  PForm denominator;
};

// Throws QCertificationFailure when num/den (after gcd reduction) is not in Q.
QForm certify_q(LaurentPoly num, LaurentPoly den, const std::string& context = "");

struct Pole {
  Real residue;  // gamma_k or delta_k
  Real location;
  RootEnclosure enclosure;
};

// W = sum gamma/(x - alpha) - sum delta/(x - beta) + nu/x + mu x + eta + rest
struct PartialFractions {
  std::vector<Pole> gamma_terms;  // poles in (0,1)
  std::vector<Pole> delta_terms;  // poles in (1,inf)
  Real nu = 0;
  Real mu = 0;
  Real eta = 0;
  // Remaining Laurent part (powers other than -1, 0, 1); exact.
  LaurentPoly rest;
  // Error estimate of the residues.
  Real residue_error = 0;
  double lost_bits = 0;  // cancellation in the residue evaluation
  unsigned bits = 0;     // precision the residues were computed at

};

PartialFractions partial_fractions(const LaurentPoly& num, const LaurentPoly& den);
PartialFractions partial_fractions(const LaurentPoly& num, const LaurentPoly& den, const std::vector<RootEnclosure>& poles);

// Max relative error of the partial-fraction sum against num/den on n points of |w| = 1.
double reconstruction_error(const LaurentPoly& num, const LaurentPoly& den, const PartialFractions& pf, int n = 64);

struct ClosureTerm {
  mpq_class a, b, c;
  LaurentPoly num;  // F_k = num / den, a Q function
  LaurentPoly den;
};

// H = 1 / (1 - sum (a_k x + b_k + c_k/x) F_k)
QForm q_closure(const std::vector<ClosureTerm>& terms);

// Coefficients of the Laurent expansion on the annulus containing |w| = 1, for k in [k_min, k_max].
std::vector<Real> annulus_series(const PartialFractions& pf, int k_min, int k_max);
std::vector<Real> annulus_series(const LaurentPoly& num, const LaurentPoly& den, int k_min, int k_max);

struct Atom {
  Real location;
  Real mass;
};

struct AtomicAmcmRep {
  std::vector<Atom> minus_atoms;  // at alpha, mass gamma/alpha
  Real zeta;                      // atom at 0
  std::vector<Atom> plus_atoms;   // at beta, mass delta/beta
  Real eta;                       // atom at infinity
  Real minus_mass() const;
  Real plus_mass() const;
};

AtomicAmcmRep amcm_atoms(const QForm& q);

// Exact limits at 0 and infinity of a rational function with finite limits.
mpq_class value_at_zero(const LaurentPoly& num, const LaurentPoly& den);
mpq_class value_at_infinity(const LaurentPoly& num, const LaurentPoly& den);

}  // namespace passloc
