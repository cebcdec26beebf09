#include "passloc/interlace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "passloc/error.hpp"
#include "poly.hpp"

namespace passloc {

namespace {

using detail::QPoly;

}  // namespace

std::variant<PForm, Rejection> p_membership(const LaurentPoly& p) {
  use_working_precision();
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "p_membership of the zero polynomial");
  mpq_class at1 = evaluate(p, mpq_class(1));
  if (at1 <= 0) return Rejection{"F(1) = " + at1.get_str() + " is not positive"};
  auto [dm, dp] = degrees(p);
  PositiveRoots pr = positive_roots(p);
  for (const auto& r : pr.roots)
    if (r.multiplicity > 1) return Rejection{"multiple positive root near " + std::to_string(r.approx())};
  if (pr.count != dm + dp)
    return Rejection{"d0 = " + std::to_string(pr.count) + " differs from d+ + d- = " + std::to_string(dp + dm)};
  PForm f;
  f.poly = p;
  for (auto r : pr.roots) {
    if (compare_root(r, 1) < 0)
      f.alphas.push_back(std::move(r));
    else
      f.betas.push_back(std::move(r));
  }
  if (f.A() != dm)
    return Rejection{"root split: " + std::to_string(f.A()) + " roots in (0,1) but d- = " + std::to_string(dm)};
  std::reverse(f.alphas.begin(), f.alphas.end());
  Real denom = 1;
  for (const auto& a : f.alphas) denom *= 1 / root_value(a) - 1;
  for (const auto& b : f.betas) denom *= root_value(b) - 1;
  f.lambda = to_real(at1) / denom;
  return f;
}

PForm certify_p(const LaurentPoly& p, const std::string& context) {
  auto r = p_membership(p);
  if (auto* rej = std::get_if<Rejection>(&r))
    throw Error(Errc::PMembershipFailure, (context.empty() ? "" : context + ": ") + rej->clause);
  return std::get<PForm>(std::move(r));
}

bool interlaces(const PForm& f, const PForm& g) {
  int A = f.A(), B = f.B(), A2 = g.A(), B2 = g.B();
  if (!(A <= A2 && A2 <= A + 1 && B <= B2 && B2 <= B + 1)) return false;
  std::vector<RootEnclosure> a = f.alphas, a2 = g.alphas, b = f.betas, b2 = g.betas;
  // 0 < ... < alpha_2 < alpha'_2 < alpha_1 < alpha'_1 < 1
  for (int k = 0; k < A; ++k) {
    if (compare_roots(a[k], a2[k]) >= 0) return false;
    if (k + 1 < A2 && compare_roots(a2[k + 1], a[k]) >= 0) return false;
  }
  // 1 < beta'_1 < beta_1 < beta'_2 < beta_2 < ...
  for (int k = 0; k < B; ++k) {
    if (compare_roots(b2[k], b[k]) >= 0) return false;
    if (k + 1 < B2 && compare_roots(b[k], b2[k + 1]) >= 0) return false;
  }
  return true;
}

namespace {

void check_nonneg(const mpq_class& v, const char* name) {
  if (v < 0) throw Error(Errc::InvalidArgument, std::string(name) + " must be nonnegative");
}

PForm finish_step(const PForm& g, const LaurentPoly& h, int expect_a, int expect_b, const char* where) {
  if (evaluate(h, mpq_class(1)) <= 0) throw Error(Errc::NotPositiveAtOne, "H(1) <= 0");
  PForm out = certify_p(h, where);
  if (!interlaces(g, out)) throw Error(Errc::PMembershipFailure, std::string(where) + ": G << H fails");
  if (out.A() != expect_a || out.B() != expect_b)
    throw Error(Errc::PMembershipFailure, std::string(where) + ": degree formula gives (" + std::to_string(expect_a) + ", " +
                                              std::to_string(expect_b) + "), found (" + std::to_string(out.A()) + ", " +
                                              std::to_string(out.B()) + ")");
  return out;
}

}  // namespace

PForm step_diagonal(const PForm& f, const PForm& g, const mpq_class& a, const mpq_class& b, const mpq_class& c) {
  check_nonneg(a, "a");
  check_nonneg(b, "b");
  check_nonneg(c, "c");
  if (a == 0 && b == 0 && c == 0) throw Error(Errc::AllZeroMultiplier, "a = b = c = 0");
  if (!interlaces(f, g)) throw Error(Errc::NotInterlacing, "step_diagonal requires F << G");
  LaurentPoly h = g.poly - LaurentPoly::three_term(c, b, a) * f.poly;
  int ea = std::max(g.A(), f.A() + (c != 0) - (b == 0 && c == 0));
  int eb = std::max(g.B(), f.B() + (a != 0) - (a == 0 && b == 0));
  return finish_step(g, h, ea, eb, "step_diagonal");
}

PForm step_standard(const PForm& f, const PForm& g, const mpq_class& a, const mpq_class& b, const mpq_class& c,
                    const mpq_class& d) {
  check_nonneg(a, "a");
  check_nonneg(b, "b");
  check_nonneg(c, "c");
  if (d <= 0) throw Error(Errc::InvalidArgument, "d must be positive");
  if (a == 0 && b == 0 && c == 0) throw Error(Errc::AllZeroMultiplier, "a = b = c = 0");
  if (!interlaces(f, g)) throw Error(Errc::NotInterlacing, "step_standard requires F << G");
  LaurentPoly h = LaurentPoly::three_term(-c, a, -b) * g.poly - LaurentPoly(d) * f.poly;
  // The multiplier sits on G, so G's degrees move and F's bound from below.
  int ea = std::max(g.A() + (c != 0) - (a == 0 && c == 0), f.A());
  int eb = std::max(g.B() + (b != 0) - (a == 0 && b == 0), f.B());
  return finish_step(g, h, ea, eb, "step_standard");
}

QForm certify_q(LaurentPoly num, LaurentPoly den, const std::string& context) {
  std::string ctx = context.empty() ? "" : context + ": ";
  if (den.is_zero()) throw Error(Errc::QCertificationFailure, ctx + "zero denominator");
  if (num.is_zero()) throw Error(Errc::QCertificationFailure, ctx + "zero numerator");
  detail::reduce_fraction(num, den);
  if (evaluate(den, mpq_class(1)) < 0) {
    num = -num;
    den = -den;
  }
  auto n = p_membership(num);
  if (auto* rej = std::get_if<Rejection>(&n)) throw Error(Errc::QCertificationFailure, ctx + "numerator: " + rej->clause);
  auto d = p_membership(den);
  if (auto* rej = std::get_if<Rejection>(&d)) throw Error(Errc::QCertificationFailure, ctx + "denominator: " + rej->clause);
  QForm q{std::get<PForm>(std::move(n)), std::get<PForm>(std::move(d))};
  if (!interlaces(q.numerator, q.denominator))
    throw Error(Errc::QCertificationFailure, ctx + "zeros and poles do not interlace");
  return q;
}

namespace {

// Splits num/den = L + R/d with L a Laurent polynomial and R/d proper, d(0) != 0.
struct Split {
  LaurentPoly laurent;
  QPoly r;
  QPoly d;
};

QPoly series_inverse(const QPoly& d, size_t m) {
  // 1/d mod x^m
  QPoly inv(m);
  if (m == 0) return inv;
  inv[0] = 1 / d[0];
  for (size_t k = 1; k < m; ++k) {
    mpq_class s = 0;
    for (size_t j = 1; j <= k && j < d.size(); ++j) s += d[j] * inv[k - j];
    inv[k] = -s / d[0];
  }
  return inv;
}

Split split_rational(const LaurentPoly& num, const LaurentPoly& den) {
  QPoly n = num.coeffs(), d = den.coeffs();
  int e = num.min_exp() - den.min_exp();
  auto [q, r] = detail::divmod(n, d);
  Split s;
  s.d = d;
  s.laurent = LaurentPoly(e, q);
  if (r.empty()) return s;
  if (e >= 0) {
    QPoly xr(static_cast<size_t>(e), mpq_class(0));
    xr.insert(xr.end(), r.begin(), r.end());
    auto [q2, r2] = detail::divmod(xr, d);
    s.laurent = s.laurent + LaurentPoly(0, q2);
    s.r = r2;
  } else {
    size_t m = static_cast<size_t>(-e);
    QPoly u = detail::mul(r, series_inverse(d, m));
    u.resize(std::min(u.size(), m));
    detail::trim(u);
    QPoly rem = detail::sub(r, detail::mul(u, d));
    // rem is divisible by x^m
    QPoly r3;
    for (size_t i = m; i < rem.size(); ++i) r3.push_back(rem[i]);
    for (size_t i = 0; i < std::min(m, rem.size()); ++i)
      if (rem[i] != 0) throw Error(Errc::Numeric, "partial fractions: inexact pole-at-zero split");
    detail::trim(r3);
    s.laurent = s.laurent + LaurentPoly(e, u);
    s.r = r3;
  }
  return s;
}


}  // namespace

PartialFractions partial_fractions(const LaurentPoly& num, const LaurentPoly& den) {
  use_working_precision();
  if (den.is_zero()) throw Error(Errc::InvalidArgument, "zero denominator");
  if (evaluate(den, mpq_class(1)) == 0) throw Error(Errc::PoleOnUnitCircle, "pole at w = 1");
  PositiveRoots pr = positive_roots(den);
  return partial_fractions(num, den, pr.roots);
}

namespace {

// Horner value and the sum of |terms|, whose ratio bounds the digits lost.
std::pair<Real, Real> eval_abs(const QPoly& p, const Real& x) {
  Real acc = 0, mag = 0, ax = abs(x);
  for (size_t i = p.size(); i-- > 0;) {
    acc = acc * x + to_real(p[i]);
    mag = mag * ax + abs(to_real(p[i]));
  }
  return {acc, mag};
}

double lost(const std::pair<Real, Real>& vm) {
  if (vm.second == 0) return 0;
  if (vm.first == 0) return static_cast<double>(precision_bits());
  return std::max(0.0, std::log2((vm.second / abs(vm.first)).convert_to<double>()));
}

PartialFractions pf_once(const Split& s, const std::vector<RootEnclosure>& poles) {
  PartialFractions pf;
  QPoly dd = detail::derivative(s.d);
  Real err = 0;
  Real ulp = pow(Real(2), -static_cast<int>(precision_bits()) + 8);
  double worst = 0;
  for (const auto& p : poles) {
    RootEnclosure e = p;
    Real x = root_value(e);
    if (abs(x - 1) < ulp) throw Error(Errc::PoleOnUnitCircle, "pole at w = 1");
    auto dv = eval_abs(dd, x);
    // root conditioning on its square-free factor
    QPoly f(e.factor->begin(), e.factor->end());
    auto fd = eval_abs(detail::derivative(f), x);
    double root_loss = 0;
    if (fd.first != 0) {
      Real fmag = eval_abs(f, x).second;
      root_loss = std::max(0.0, std::log2((fmag / abs(fd.first * x)).convert_to<double>()));
    }
    Real res = 0;
    double l = lost(dv) + root_loss;
    if (!s.r.empty()) {
      auto rv = eval_abs(s.r, x);
      res = rv.first / dv.first;
      l = std::max(l, lost(rv) + root_loss);
    }
    worst = std::max(worst, l);
    err = std::max(err, Real(abs(res) * ulp * pow(Real(2), l)));
    if (x < 1)
      pf.gamma_terms.push_back({res, x, e});
    else
      pf.delta_terms.push_back({Real(-res), x, e});
  }
  std::sort(pf.gamma_terms.begin(), pf.gamma_terms.end(), [](const Pole& a, const Pole& b) { return a.location > b.location; });
  std::sort(pf.delta_terms.begin(), pf.delta_terms.end(), [](const Pole& a, const Pole& b) { return a.location < b.location; });
  pf.nu = to_real(s.laurent.coeff(-1));
  pf.eta = to_real(s.laurent.coeff(0));
  pf.mu = to_real(s.laurent.coeff(1));
  pf.rest = s.laurent - LaurentPoly(-1, {s.laurent.coeff(-1), s.laurent.coeff(0), s.laurent.coeff(1)});
  pf.residue_error = err;
  pf.lost_bits = worst;
  pf.bits = precision_bits();
  return pf;
}

}  // namespace

PartialFractions partial_fractions(const LaurentPoly& num, const LaurentPoly& den, const std::vector<RootEnclosure>& poles) {
  use_working_precision();
  if (den.is_zero()) throw Error(Errc::InvalidArgument, "zero denominator");
  if (evaluate(den, mpq_class(1)) == 0) throw Error(Errc::PoleOnUnitCircle, "pole at w = 1");
  PartialFractions pf;
  if (num.is_zero()) return pf;
  Split s = split_rational(num, den);
  int ordinary_degree = den.max_exp() - den.min_exp();
  int count = 0;
  for (const auto& p : poles) {
    if (p.multiplicity > 1) throw Error(Errc::MultiplePole, "pole of multiplicity " + std::to_string(p.multiplicity));
    count += p.multiplicity;
  }
  if (count != ordinary_degree)
    throw Error(Errc::InvalidArgument, "denominator has roots off the positive axis; partial fractions need real positive poles");
  pf = pf_once(s, poles);
  // keep about 96 good bits in every residue
  for (int round = 0; round < 4; ++round) {
    unsigned need = static_cast<unsigned>(std::ceil(pf.lost_bits)) + 96;
    if (need <= pf.bits) break;
    PrecisionScope scope((need + 63) / 64 * 64);
    pf = pf_once(s, poles);
  }
  return pf;
}

namespace {

std::complex<double> pf_eval(const PartialFractions& pf, std::complex<double> x) {
  std::complex<double> s = pf.eta.convert_to<double>() + pf.nu.convert_to<double>() / x + pf.mu.convert_to<double>() * x;
  for (const auto& g : pf.gamma_terms) s += g.residue.convert_to<double>() / (x - g.location.convert_to<double>());
  for (const auto& d : pf.delta_terms) s -= d.residue.convert_to<double>() / (x - d.location.convert_to<double>());
  if (!pf.rest.is_zero()) s += evaluate(pf.rest, x);
  return s;
}

}  // namespace

double reconstruction_error(const LaurentPoly& num, const LaurentPoly& den, const PartialFractions& pf, int n) {
  double worst = 0;
  for (int j = 0; j < n; ++j) {
    double t = 2 * std::numbers::pi * (j + 0.37) / n;
    std::complex<double> x = std::polar(1.0, t);
    std::complex<double> f = evaluate_accurate(num, x) / evaluate_accurate(den, x);
    double scale = std::max(std::abs(f), 1e-300);
    worst = std::max(worst, std::abs(f - pf_eval(pf, x)) / scale);
  }
  return worst;
}

QForm q_closure(const std::vector<ClosureTerm>& terms) {
  if (terms.empty()) throw Error(Errc::InvalidArgument, "q_closure needs at least one term");
  mpq_class total = 0, mass = 0;
  for (const auto& t : terms) {
    check_nonneg(t.a, "a");
    check_nonneg(t.b, "b");
    check_nonneg(t.c, "c");
    certify_q(t.num, t.den, "q_closure input");
    total += t.a + t.b + t.c;
    mass += (t.a + t.b + t.c) * evaluate(t.num, mpq_class(1)) / evaluate(t.den, mpq_class(1));
  }
  if (total <= 0) throw Error(Errc::InvalidArgument, "sum of multipliers must be positive");
  if (mass >= 1) throw Error(Errc::MassCondition, "sum (a+b+c) F(1) = " + mass.get_str() + " >= 1");
  LaurentPoly D(1);
  for (const auto& t : terms) D = D * t.den;
  LaurentPoly M = D;
  for (size_t k = 0; k < terms.size(); ++k) {
    LaurentPoly others(1);
    for (size_t j = 0; j < terms.size(); ++j)
      if (j != k) others = others * terms[j].den;
    M = M - LaurentPoly::three_term(terms[k].c, terms[k].b, terms[k].a) * terms[k].num * others;
  }
  return certify_q(D, M, "q_closure");
}

std::vector<Real> annulus_series(const PartialFractions& pf, int k_min, int k_max) {
  PrecisionScope scope(pf.bits);
  if (k_max < k_min) return {};
  std::vector<Real> out(static_cast<size_t>(k_max - k_min + 1), Real(0));
  auto at = [&](int k) -> Real& { return out[static_cast<size_t>(k - k_min)]; };
  for (const auto& g : pf.gamma_terms) {
    if (abs(g.location) >= 1) throw Error(Errc::PoleOnUnitCircle, "inside pole not inside the unit disc");
    // gamma alpha^(m-1) at k = -m
    int hi = std::min(-1, k_max);
    if (hi < k_min) continue;
    Real v = g.residue * pow(g.location, -hi - 1);
    for (int k = hi; k >= k_min; --k) {
      at(k) += v;
      v *= g.location;
    }
  }
  for (const auto& d : pf.delta_terms) {
    if (abs(d.location) <= 1) throw Error(Errc::PoleOnUnitCircle, "outside pole not outside the unit disc");
    int lo = std::max(0, k_min);
    if (lo > k_max) continue;
    Real inv = 1 / d.location;
    Real v = d.residue * pow(inv, lo + 1);
    for (int k = lo; k <= k_max; ++k) {
      at(k) += v;
      v *= inv;
    }
  }
  for (int k = std::max(k_min, -1); k <= std::min(k_max, 1); ++k) at(k) += k == -1 ? pf.nu : (k == 0 ? pf.eta : pf.mu);
  if (!pf.rest.is_zero())
    for (int k = std::max(k_min, pf.rest.min_exp()); k <= std::min(k_max, pf.rest.max_exp()); ++k) at(k) += to_real(pf.rest.coeff(k));
  return out;
}

std::vector<Real> annulus_series(const LaurentPoly& num, const LaurentPoly& den, int k_min, int k_max) {
  return annulus_series(partial_fractions(num, den), k_min, k_max);
}

Real AtomicAmcmRep::minus_mass() const {
  Real s = zeta;
  for (const auto& a : minus_atoms) s += a.mass;
  return s;
}

Real AtomicAmcmRep::plus_mass() const {
  Real s = eta;
  for (const auto& a : plus_atoms) s += a.mass;
  return s;
}

mpq_class value_at_zero(const LaurentPoly& num, const LaurentPoly& den) {
  if (num.is_zero()) return 0;
  int e = num.min_exp() - den.min_exp();
  if (e > 0) return 0;
  if (e < 0) throw Error(Errc::InvalidArgument, "rational function has a pole at 0");
  return num.coeffs().front() / den.coeffs().front();
}

mpq_class value_at_infinity(const LaurentPoly& num, const LaurentPoly& den) {
  if (num.is_zero()) return 0;
  int e = num.max_exp() - den.max_exp();
  if (e < 0) return 0;
  if (e > 0) throw Error(Errc::InvalidArgument, "rational function has a pole at infinity");
  return num.coeffs().back() / den.coeffs().back();
}

AtomicAmcmRep amcm_atoms(const QForm& q) {
  use_working_precision();
  const LaurentPoly& num = q.numerator.poly;
  const LaurentPoly& den = q.denominator.poly;
  PartialFractions pf = partial_fractions(num, den);
  AtomicAmcmRep rep;
  for (const auto& g : pf.gamma_terms) rep.minus_atoms.push_back({g.location, g.residue / g.location});
  for (const auto& d : pf.delta_terms) rep.plus_atoms.push_back({d.location, d.residue / d.location});
  rep.zeta = to_real(value_at_zero(num, den));
  rep.eta = to_real(value_at_infinity(num, den));
  return rep;
}

}  // namespace passloc
