#include <algorithm>
#include <cmath>

#include "passloc/error.hpp"
#include "passloc/laurent.hpp"
#include "poly.hpp"

namespace passloc {
namespace detail {

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw Error(Errc::InvalidArgument, "polynomial division by zero");
  QPoly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  QPoly q(r.size() - b.size() + 1);
  const mpq_class& lead = b.back();
  for (size_t k = q.size(); k-- > 0;) {
    mpq_class c = r[k + b.size() - 1] / lead;
    q[k] = c;
    if (c == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[k + j] -= c * b[j];
  }
  r.resize(b.size() - 1);
  trim(r);
  trim(q);
  return {q, r};
}

QPoly exact_div(const QPoly& a, const QPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw Error(Errc::Numeric, "inexact polynomial division");
  return q;
}

QPoly monic(const QPoly& p) {
  QPoly r = p;
  if (r.empty()) return r;
  mpq_class lead = r.back();
  for (auto& c : r) c /= lead;
  return r;
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = monic(r);
  }
  return monic(a);
}

std::vector<QPoly> square_free_factors(const QPoly& p) {
  std::vector<QPoly> out;
  QPoly a = p;
  trim(a);
  if (degree(a) <= 0) return out;
  QPoly d = derivative(a);
  QPoly g = gcd(a, d);
  QPoly b = exact_div(a, g);
  QPoly c = exact_div(d, g);
  QPoly e = sub(c, derivative(b));
  while (degree(b) > 0) {
    QPoly f = gcd(b, e);
    out.push_back(f);
    b = exact_div(b, f);
    c = exact_div(e, f);
    e = sub(c, derivative(b));
  }
  return out;
}

ZPoly to_zpoly(const QPoly& p) {
  mpz_class l = 1;
  for (const auto& c : p)
    if (c != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  ZPoly z;
  z.reserve(p.size());
  mpz_class g = 0;
  for (const auto& c : p) {
    mpz_class v = c.get_num() * (l / c.get_den());
    z.push_back(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  trim(z);
  if (z.empty()) return z;
  if (z.back() < 0) g = -g;
  for (auto& c : z) c /= g;
  return z;
}

QPoly to_qpoly(const LaurentPoly& p) { return p.coeffs(); }

LaurentPoly from_qpoly(const QPoly& p, int min_exp) { return LaurentPoly(min_exp, p); }

namespace {

int sign_variations(const ZPoly& p) {
  int v = 0, last = 0;
  for (const auto& c : p) {
    int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// p(t + u) for integer u.
ZPoly taylor_shift(ZPoly p, const mpz_class& u) {
  if (u == 0) return p;
  size_t n = p.size();
  for (size_t i = 0; i + 1 < n; ++i)
    for (size_t j = n - 1; j > i; --j) p[j - 1] += u * p[j];
  return p;
}

// p(v t)
ZPoly scale_arg(ZPoly p, const mpz_class& v) {
  mpz_class pw = 1;
  for (auto& c : p) {
    c *= pw;
    pw *= v;
  }
  return p;
}

// 2^(e d) p(t / 2^e)
ZPoly scale_arg_pow2(ZPoly p, unsigned long e) {
  size_t d = p.size() - 1;
  for (size_t i = 0; i <= d; ++i) mpz_mul_2exp(p[i].get_mpz_t(), p[i].get_mpz_t(), e * (d - i));
  return p;
}

void remove_content(ZPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// Upper bound on the number of roots in (0,1).
int descartes_01(const ZPoly& r) {
  ZPoly q(r.rbegin(), r.rend());
  return sign_variations(taylor_shift(q, 1));
}

int sign_at_dyadic(const ZPoly& r, const mpz_class& j, unsigned long e) {
  // sign of sum r_i j^i 2^(e (d - i))
  mpz_class acc = 0;
  size_t d = r.size() - 1;
  mpz_class jp = 1;
  for (size_t i = 0; i <= d; ++i) {
    mpz_class t = r[i] * jp;
    mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), e * (d - i));
    acc += t;
    jp *= j;
  }
  return sgn(acc);
}

}  // namespace

std::vector<std::pair<mpq_class, mpq_class>> isolate_positive(const ZPoly& p0) {
  std::vector<std::pair<mpq_class, mpq_class>> out;
  ZPoly p = p0;
  trim(p);
  if (p.size() <= 1) return out;
  if (p[0] == 0) throw Error(Errc::InvalidArgument, "isolate_positive needs p(0) != 0");
  // Cauchy bound 1 + max |a_i / a_d|, rounded up to a power of two.
  mpq_class bound = 0;
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    mpq_class r(abs(p[i]), abs(p.back()));
    if (r > bound) bound = r;
  }
  bound += 1;
  unsigned long e = 0;
  mpq_class M = 1;
  while (M <= bound) {
    M *= 2;
    ++e;
  }
  struct Node {
    ZPoly r;
    mpq_class a, w;
  };
  std::vector<Node> stack;
  {
    ZPoly r = scale_arg(p, mpz_class(1) << e);
    remove_content(r);
    stack.push_back({r, 0, M});
  }
  static const std::pair<long, unsigned long> splits[] = {{1, 1}, {1, 2}, {3, 2}, {3, 3}, {5, 3}, {1, 3}, {7, 3},
                                                          {7, 4}, {9, 4}, {5, 4}, {11, 4}, {3, 4}, {13, 4}};
  while (!stack.empty()) {
    Node n = std::move(stack.back());
    stack.pop_back();
    int v = descartes_01(n.r);
    if (v == 0) continue;
    if (v == 1) {
      out.emplace_back(n.a, n.a + n.w);
      continue;
    }
    mpz_class j;
    unsigned long se = 0;
    bool found = false;
    for (auto [jj, ee] : splits) {
      if (sign_at_dyadic(n.r, jj, ee) != 0) {
        j = jj;
        se = ee;
        found = true;
        break;
      }
    }
    if (!found) throw Error(Errc::Numeric, "root isolation: no split point");
    mpz_class den = mpz_class(1) << se;
    mpq_class s(j, den);
    ZPoly left = scale_arg_pow2(scale_arg(n.r, j), se);
    remove_content(left);
    ZPoly h = scale_arg_pow2(n.r, se);
    ZPoly right = scale_arg(taylor_shift(h, j), den - j);
    remove_content(right);
    stack.push_back({std::move(right), n.a + n.w * s, n.w * (1 - s)});
    stack.push_back({std::move(left), n.a, n.w * s});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

void reduce_fraction(LaurentPoly& num, LaurentPoly& den) {
  if (num.is_zero() || den.is_zero()) return;
  QPoly a = num.coeffs(), b = den.coeffs();
  QPoly g = gcd(a, b);
  if (degree(g) <= 0) return;
  // the cancelled factor carries w^-s, s = its root count in (0,1), as a P-class factor would
  int s = 0;
  for (auto r : positive_roots(LaurentPoly(0, g)).roots)
    if (compare_root(r, 1) < 0) s += r.multiplicity;
  num = LaurentPoly(num.min_exp() + s, exact_div(a, g));
  den = LaurentPoly(den.min_exp() + s, exact_div(b, g));
}

}  // namespace detail

int exact_sign(const ZPoly& p, const mpq_class& x) {
  // sign of sum p_i num^i den^(d-i)
  if (p.empty()) return 0;
  const mpz_class& nu = x.get_num();
  const mpz_class& de = x.get_den();
  mpz_class acc = p.back();
  size_t d = p.size() - 1;
  mpz_class dp = 1;
  for (size_t i = d; i-- > 0;) {
    dp *= de;
    acc = acc * nu + p[i] * dp;
  }
  return sgn(acc);
}

double RootEnclosure::approx() const { return mpq_class((lo + hi) / 2).get_d(); }

mpq_class default_root_width() {
  mpz_class d = mpz_class(1) << 64;
  return mpq_class(1, d);
}

void refine(RootEnclosure& r, const mpq_class& width) {
  while (r.hi - r.lo > width) {
    mpq_class mid = (r.lo + r.hi) / 2;
    int s = exact_sign(*r.factor, mid);
    if (s == 0) {
      mpq_class eps = std::min(mpq_class(width / 4), mpq_class((r.hi - r.lo) / 4));
      r.lo = mid - eps;
      r.hi = mid + eps;
      r.sign_lo = exact_sign(*r.factor, r.lo);
      r.sign_hi = exact_sign(*r.factor, r.hi);
      return;
    }
    if (s == r.sign_lo)
      r.lo = mid;
    else
      r.hi = mid;
  }
}

PositiveRoots positive_roots(const LaurentPoly& p, const mpq_class& width, bool require_simple) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "positive_roots of the zero polynomial");
  if (width <= 0) throw Error(Errc::InvalidArgument, "width must be positive");
  PositiveRoots res;
  auto factors = detail::square_free_factors(detail::to_qpoly(p));
  for (size_t m = 0; m < factors.size(); ++m) {
    if (detail::degree(factors[m]) <= 0) continue;
    auto z = std::make_shared<const ZPoly>(detail::to_zpoly(factors[m]));
    for (auto& [lo, hi] : detail::isolate_positive(*z)) {
      if (require_simple && m > 0)
        throw Error(Errc::MultipleRootUnresolved, "root of multiplicity " + std::to_string(m + 1));
      RootEnclosure r;
      r.lo = lo;
      r.hi = hi;
      r.factor = z;
      r.multiplicity = static_cast<int>(m + 1);
      r.sign_lo = exact_sign(*z, lo);
      r.sign_hi = exact_sign(*z, hi);
      refine(r, width);
      res.count += r.multiplicity;
      res.roots.push_back(std::move(r));
    }
  }
  std::sort(res.roots.begin(), res.roots.end(), [](const RootEnclosure& a, const RootEnclosure& b) { return a.lo + a.hi < b.lo + b.hi; });
  return res;
}

namespace {

mpq_class min_width() {
  mpz_class d = mpz_class(1) << 256;
  return mpq_class(1, d);
}

}  // namespace

int compare_roots(RootEnclosure& a, RootEnclosure& b) {
  const mpq_class floor_w = min_width();
  while (true) {
    if (a.hi <= b.lo) return -1;
    if (b.hi <= a.lo) return 1;
    mpq_class wa = a.width(), wb = b.width();
    if (wa <= floor_w && wb <= floor_w) throw Error(Errc::EnclosureOverlap, "root enclosures overlap at width 2^-256");
    if (wa >= wb)
      refine(a, wa / 2);
    else
      refine(b, wb / 2);
  }
}

int compare_root(RootEnclosure& a, const mpq_class& x) {
  int sx = exact_sign(*a.factor, x);
  if (sx == 0 && a.lo < x && x < a.hi) return 0;
  while (true) {
    if (a.hi <= x) return -1;
    if (x <= a.lo) return 1;
    refine(a, a.width() / 2);
  }
}

Real root_value(const RootEnclosure& r0) {
  use_working_precision();
  RootEnclosure r = r0;
  refine(r, default_root_width());
  const ZPoly& f = *r.factor;
  Real lo = to_real(r.lo), hi = to_real(r.hi);
  Real x = (lo + hi) / 2;
  std::vector<Real> c(f.size());
  for (size_t i = 0; i < f.size(); ++i) c[i] = to_real(mpq_class(f[i]));
  int iters = 2 + static_cast<int>(std::ceil(std::log2(precision_bits() / 32.0)));
  for (int it = 0; it < iters; ++it) {
    Real v = 0, dv = 0;
    for (size_t i = c.size(); i-- > 0;) {
      dv = dv * x + v;
      v = v * x + c[i];
    }
    if (dv == 0) break;
    Real nx = x - v / dv;
    if (nx <= lo || nx >= hi) {
      // Newton left the enclosure: fall back to exact bisection.
      mpz_class d = mpz_class(1) << (precision_bits() + 8);
      refine(r, mpq_class(1, d));
      return to_real((r.lo + r.hi) / 2);
    }
    x = nx;
  }
  return x;
}

}  // namespace passloc
