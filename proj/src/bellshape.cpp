#include "passloc/bellshape.hpp"

#include <algorithm>
#include <cmath>

#include "passloc/error.hpp"

namespace passloc {

Seq seq_from_pmf(const Pmf& p, double trunc_rel) {
  use_working_precision();
  Seq s;
  s.offset = p.offset;
  if (p.precise.size() == p.values.size() && !p.precise.empty()) {
    s.values = p.precise;
    for (auto& v : s.values)
      if (v < 0) v = 0;
  } else {
    s.values.reserve(p.values.size());
    for (double v : p.values) s.values.emplace_back(v);
  }
  s.lo_exact = p.lo_exact;
  s.hi_exact = p.hi_exact;
  s.abs_err = p.noise;
  if (trunc_rel > 0 && !s.values.empty()) {
    Real peak = *std::max_element(s.values.begin(), s.values.end());
    Real cut = peak * trunc_rel;
    size_t i0 = 0, i1 = s.values.size();
    if (!s.lo_exact)
      while (i0 < i1 && s.values[i0] <= cut) ++i0;
    if (!s.hi_exact)
      while (i1 > i0 && s.values[i1 - 1] <= cut) --i1;
    s.values = std::vector<Real>(s.values.begin() + static_cast<long>(i0), s.values.begin() + static_cast<long>(i1));
    s.offset += static_cast<long>(i0);
  }
  return s;
}

namespace {

Seq diff_once(const Seq& s) {
  Seq d;
  d.lo_exact = s.lo_exact;
  d.hi_exact = s.hi_exact;
  d.abs_err = s.abs_err * 2;
  d.zero_tol = s.zero_tol;
  long lo = s.lo_exact ? s.offset - 1 : s.offset;
  long hi = s.hi_exact ? s.end() - 1 : s.end() - 2;
  d.offset = lo;
  auto at = [&](long k) -> Real { return k >= s.offset && k < s.end() ? s.values[static_cast<size_t>(k - s.offset)] : Real(0); };
  for (long k = lo; k <= hi; ++k) d.values.push_back(at(k + 1) - at(k));
  return d;
}

Real peak_abs(const Seq& s) {
  Real m = 0;
  for (const auto& v : s.values) m = std::max(m, Real(abs(v)));
  return m;
}

}  // namespace

Seq iterated_diff(const Seq& s, int n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "difference order must be nonnegative");
  use_working_precision();
  Seq d = s;
  for (int i = 0; i < n; ++i) d = diff_once(d);
  return d;
}

int sign_changes(const Seq& s) {
  Real thr = std::max(Real(peak_abs(s) * s.zero_tol), s.abs_err);
  int changes = 0, last = 0;
  for (const auto& v : s.values) {
    if (abs(v) <= thr) continue;
    int sg = v > 0 ? 1 : -1;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

BellReport check_bell(const Seq& s, int n_max) {
  use_working_precision();
  if (s.values.empty() || peak_abs(s) == 0) throw Error(Errc::InvalidArgument, "bell check of an all-zero sequence");
  for (const auto& v : s.values)
    if (v < -s.abs_err) throw Error(Errc::NegativeInput, "sequence has a negative entry");
  BellReport r;
  Seq d = s;
  for (int n = 1; n <= n_max; ++n) {
    d = diff_once(d);
    int c = sign_changes(d);
    r.levels.push_back({n, c, c == n});
    r.ok = r.ok && c == n;
  }
  return r;
}

CmReport check_cm_amcm(const Seq& s, Side side, int n_max, double tol) {
  use_working_precision();
  Seq b;
  b.abs_err = s.abs_err;
  b.zero_tol = s.zero_tol;
  b.lo_exact = false;
  if (side == Side::right) {
    for (long k = std::max(0L, s.offset); k < s.end(); ++k) b.values.push_back(s.values[static_cast<size_t>(k - s.offset)]);
    b.hi_exact = s.hi_exact;
  } else {
    for (long k = std::min(0L, s.end() - 1); k >= s.offset; --k) b.values.push_back(s.values[static_cast<size_t>(k - s.offset)]);
    b.hi_exact = s.lo_exact;
  }
  CmReport r;
  if (b.values.empty()) return r;
  Real peak = peak_abs(b);
  std::vector<Real> cur = b.values;
  Real err = b.abs_err;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      std::vector<Real> nx;
      size_t len = b.hi_exact ? cur.size() : cur.size() - 1;
      for (size_t m = 0; m < len; ++m) nx.push_back((m + 1 < cur.size() ? cur[m + 1] : Real(0)) - cur[m]);
      cur.swap(nx);
      err *= 2;
    }
    Real worst = 0;
    for (const auto& v : cur) {
      Real x = (n % 2 == 0) ? v : Real(-v);
      worst = std::min(worst, x);
    }
    bool ok = worst >= -(err + peak * tol);
    double rel = peak > 0 ? Real(worst / peak).convert_to<double>() : 0.0;
    r.levels.push_back({n, rel, ok});
    r.ok = r.ok && ok;
    if (cur.empty()) break;
  }
  return r;
}

Seq convolve(const Seq& a, const Seq& b) {
  use_working_precision();
  Seq c;
  c.lo_exact = a.lo_exact && b.lo_exact;
  c.hi_exact = a.hi_exact && b.hi_exact;
  c.zero_tol = std::max(a.zero_tol, b.zero_tol);
  if (a.values.empty() || b.values.empty()) return c;
  c.offset = a.offset + b.offset;
  c.values.assign(a.values.size() + b.values.size() - 1, Real(0));
  Real sa = 0, sb = 0;
  for (const auto& v : a.values) sa += abs(v);
  for (const auto& v : b.values) sb += abs(v);
  for (size_t i = 0; i < a.values.size(); ++i)
    for (size_t j = 0; j < b.values.size(); ++j) c.values[i + j] += a.values[i] * b.values[j];
  c.abs_err = a.abs_err * sb + b.abs_err * sa;
  return c;
}

}  // namespace passloc
