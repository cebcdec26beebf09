#include <cstdio>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "passloc/error.hpp"
#include "passloc/passage.hpp"

namespace passloc {

namespace {

using cd = std::complex<double>;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

template <class T>
struct FftwBuf {
  T* p = nullptr;
  explicit FftwBuf(size_t n) : p(static_cast<T*>(fftw_malloc(sizeof(T) * n))) {
    if (!p) throw Error(Errc::Numeric, "FFT buffer allocation failed");
  }
  ~FftwBuf() { fftw_free(p); }
  FftwBuf(const FftwBuf&) = delete;
  FftwBuf& operator=(const FftwBuf&) = delete;
};

// half[j] = F(exp(2 pi i j / n)), j = 0 .. n/2. Returns c_k at out[k mod n].
std::vector<double> invert_half(const std::vector<cd>& half, size_t n) {
  size_t m = n / 2 + 1;
  FftwBuf<fftw_complex> in(m);
  std::vector<double> out(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), in.p, out.data(), FFTW_ESTIMATE);
  }
  double inv = 1.0 / static_cast<double>(n);
  for (size_t j = 0; j < m; ++j) {
    in.p[j][0] = half[j].real() * inv;
    in.p[j][1] = -half[j].imag() * inv;
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

cd unit(size_t j, size_t n) {
  double t = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
  return {std::cos(t), std::sin(t)};
}

struct LevelC {
  double p[4];
};

LevelC level_of(const WalkSpec& s, int j) {
  const ProbRow& r = s.row(j);
  return {{r[1].get_d(), r[2].get_d(), r[3].get_d(), r[4].get_d()}};
}

// phi = D / (S - U phi'), as the Mobius matrix [[0, D], [-U, S]].
struct Mob {
  cd a, b, c, d;
};

Mob level_mobius(Lattice kind, const LevelC& l, cd w) {
  if (kind == Lattice::standard) return {0.0, l.p[3], -l.p[1], 1.0 - l.p[0] * w - l.p[2] / w};
  return {0.0, l.p[2] / w + l.p[3], -(l.p[0] * w + l.p[1]), 1.0};
}

Mob compose(const Mob& x, const Mob& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

cd mob_apply(const Mob& m, cd z) { return (m.a * z + m.b) / (m.c * z + m.d); }

cd attracting_fixed_point(const Mob& m) {
  cd B = m.d - m.a;
  if (m.c == cd(0)) {
    if (B == cd(0)) return 0.0;
    return m.b / B;
  }
  cd s = std::sqrt(B * B + 4.0 * m.b * m.c);
  if (std::real(std::conj(B) * s) < 0) s = -s;
  cd q = -(B + s) / 2.0;
  // roots of c z^2 + B z - b: z1 = q / c, z2 = -b / q
  cd z1 = q / m.c;
  cd z2 = q == cd(0) ? z1 : -m.b / q;
  return std::abs(m.c * z1 + m.d) >= std::abs(m.c * z2 + m.d) ? z1 : z2;
}

// Level data for the continued fraction of a walk with b = infinity.
struct Closed {
  Lattice kind;
  int top;  // levels 1 .. top are listed individually
  std::vector<LevelC> levels;
  LevelC tail0, tail1;  // rows at top + 1 and top + 2
  bool period2;
};

WalkSpec as_lattice_walk(const WalkSpec& spec, int y) {
  if (spec.kind == Lattice::honeycomb) return honeycomb_embed(spec, y).diagonal;
  return spec;
}

Closed make_closed(const WalkSpec& s, int y) {
  if (!s.has_default()) throw Error(Errc::InvalidSpec, "b = infinity needs default rows for unlisted levels");
  Closed c;
  c.kind = s.kind;
  c.top = std::max(y, s.top_listed_level());
  if (!s.reflecting_levels.empty()) c.top = std::max(c.top, *s.reflecting_levels.rbegin());
  for (int j = 1; j <= c.top; ++j) c.levels.push_back(level_of(s, j));
  c.tail0 = level_of(s, c.top + 1);
  c.tail1 = level_of(s, c.top + 2);
  c.period2 = !(*s.default_even == *s.default_odd);
  return c;
}

cd closed_value(const Closed& c, int y, cd w) {
  Mob t = level_mobius(c.kind, c.tail0, w);
  if (c.period2) t = compose(t, level_mobius(c.kind, c.tail1, w));
  cd phi = attracting_fixed_point(t);
  cd f = 1.0;
  for (int j = c.top; j >= 1; --j) {
    phi = mob_apply(level_mobius(c.kind, c.levels[static_cast<size_t>(j - 1)], w), phi);
    if (j <= y) f *= phi;
  }
  return f;
}

// Support bounds known from the move set alone.
void exact_bounds(const WalkSpec& s, int y, bool& lo, long& lo_k, bool& hi, long& hi_k) {
  bool no_left = true, no_right = true;
  auto scan = [&](const ProbRow& r) {
    if (s.kind == Lattice::standard) {
      if (r[3] != 0) no_left = false;
      if (r[1] != 0) no_right = false;
    } else {
      if (r[2] != 0 || r[3] != 0) no_left = false;
      if (r[1] != 0 || r[4] != 0) no_right = false;
    }
  };
  for (const auto& [lvl, r] : s.rows) scan(r);
  if (s.default_even) scan(*s.default_even);
  if (s.default_odd) scan(*s.default_odd);
  lo = no_left;
  hi = no_right;
  // diagonal: X = tau or -tau, k = (X - y) / 2
  lo_k = 0;
  hi_k = s.kind == Lattice::standard ? 0 : -y;
}

}  // namespace

std::vector<double> fft_coefficients(const std::function<cd(cd)>& f, int log2n) {
  if (log2n < 2 || log2n > 28) throw Error(Errc::InvalidArgument, "FFT size out of range");
  size_t n = size_t{1} << log2n;
  std::vector<cd> half(n / 2 + 1);
  for (size_t j = 0; j < half.size(); ++j) half[j] = f(unit(j, n));
  std::vector<double> c = invert_half(half, n);
  std::vector<double> out(n);
  long h = static_cast<long>(n / 2);
  for (long k = -h; k < h; ++k) out[static_cast<size_t>(k + h)] = c[static_cast<size_t>((k + static_cast<long>(n)) % static_cast<long>(n))];
  return out;
}

std::complex<double> passage_value(const WalkSpec& spec0, int y, long b, std::complex<double> w) {
  WalkSpec s = as_lattice_walk(spec0, y);
  if (y < 1) throw Error(Errc::DegenerateQuery, "start level y must be at least 1");
  if (b == 0) return closed_value(make_closed(s, y), y, w);
  if (b <= y) throw Error(Errc::DegenerateQuery, "upper barrier b must exceed y");
  cd phi = 0.0, f = 1.0;
  for (long j = b - 1; j >= 1; --j) {
    phi = mob_apply(level_mobius(s.kind, level_of(s, static_cast<int>(j)), w), phi);
    if (j <= y) f *= phi;
  }
  return f;
}

double limit_hitting_probability(const WalkSpec& spec, int y) { return passage_value(spec, y, 0, 1.0).real(); }

Pmf pmf_limit(const WalkSpec& spec0, int y, const LimitOptions& opt) {
  require_valid(spec0);
  if (y < 1) throw Error(Errc::DegenerateQuery, "start level y must be at least 1");
  if (opt.method == LimitOptions::Method::doubling) return pmf_limit_doubling(spec0, y, opt.tv_tol, opt.b_max);
  if (opt.min_log2 < 4 || opt.max_log2 < opt.min_log2 || opt.max_log2 > 27)
    throw Error(Errc::InvalidArgument, "grid size range out of bounds");
  WalkSpec s = as_lattice_walk(spec0, y);
  Closed c = make_closed(s, y);

  int lg = opt.min_log2;
  size_t n = size_t{1} << lg;
  std::vector<cd> half(n / 2 + 1);
  for (size_t j = 0; j < half.size(); ++j) half[j] = closed_value(c, y, unit(j, n));
  std::vector<double> coef = invert_half(half, n), prev;
  double change = INFINITY;
  while (true) {
    if (!prev.empty()) {
      // compare on |k| < n/8 (a quarter of the previous grid)
      long win = static_cast<long>(n / 8);
      long np = static_cast<long>(n / 2), nn = static_cast<long>(n);
      change = 0;
      for (long k = -win; k < win; ++k) {
        double a = coef[static_cast<size_t>((k + nn) % nn)];
        double b = prev[static_cast<size_t>((k + np) % np)];
        change = std::max(change, std::abs(a - b));
      }
      if (change < opt.tol) break;
    }
    if (lg >= opt.max_log2)
    {
      char msg[96];
      std::snprintf(msg, sizeof msg, "limit PMF did not settle by grid 2^%d (sup change %.3g)", lg, change);
      throw Error(Errc::NoConvergence, msg);
    }
    std::vector<cd> next(n + 1);
    for (size_t j = 0; j <= n; ++j) next[j] = (j % 2 == 0) ? half[j / 2] : closed_value(c, y, unit(j, 2 * n));
    half.swap(next);
    prev.swap(coef);
    n *= 2;
    ++lg;
    coef = invert_half(half, n);
  }

  bool lo_ex, hi_ex;
  long lo_k, hi_k;
  exact_bounds(s, y, lo_ex, lo_k, hi_ex, hi_k);
  long q = static_cast<long>(n / 4), nn = static_cast<long>(n);
  long k0 = -q, k1 = q - 1;
  if (lo_ex) k0 = std::max(k0, lo_k);
  if (hi_ex) k1 = std::min(k1, hi_k);
  Pmf p;
  p.index = s.kind == Lattice::standard ? "raw" : "rescaled";
  p.total = limit_hitting_probability(s, y);
  double peak = 0, lowest = 0;
  std::vector<double> v;
  for (long k = k0; k <= k1; ++k) {
    double x = coef[static_cast<size_t>((k + nn) % nn)];
    v.push_back(x);
    peak = std::max(peak, std::abs(x));
    lowest = std::min(lowest, x);
  }
  size_t i0 = 0, i1 = v.size();
  double cut = opt.trunc_rel * peak;
  while (i0 < i1 && std::abs(v[i0]) <= cut) ++i0;
  while (i1 > i0 && std::abs(v[i1 - 1]) <= cut) --i1;
  p.offset = k0 + static_cast<long>(i0);
  for (size_t i = i0; i < i1; ++i) p.values.push_back(std::max(v[i], 0.0));
  p.min_before_clamp = lowest;
  p.lo_exact = lo_ex && i0 == 0 && k0 == lo_k;
  p.hi_exact = hi_ex && i1 == v.size() && k1 == hi_k;
  p.tail_bound = std::max(0.0, p.total - p.mass());
  p.achieved = change;
  p.abs_err = change;
  p.noise = 32 * std::numeric_limits<double>::epsilon() * peak;
  p.b = std::nullopt;
  return p;
}

Pmf pmf_limit_doubling(const WalkSpec& spec, int y, double tv_tol, long b_max) {
  require_valid(spec);
  int b = y + 1;
  for (int z : spec.reflecting_levels)
    if (z >= y) b = std::max(b, z + 1);
  ExtractOptions eo;
  eo.fft_log2 = 0;
  Pmf prev = pmf_extract(passage_gf_any(spec, y, b, false), eo);
  while (true) {
    long nb = 2L * b;
    if (nb > b_max)
      throw Error(Errc::NoConvergence, "b doubling passed b_max = " + std::to_string(b_max) + " at b = " + std::to_string(b));
    b = static_cast<int>(nb);
    Pmf cur = pmf_extract(passage_gf_any(spec, y, b, false), eo);
    double tv = 0;
    long lo = std::min(prev.offset, cur.offset), hi = std::max(prev.end(), cur.end());
    for (long k = lo; k < hi; ++k) tv += std::abs(prev.at(k) - cur.at(k));
    tv /= 2;
    if (tv < tv_tol) {
      cur.achieved = tv;
      return cur;
    }
    prev = std::move(cur);
  }
}

Pmf convolve_pmf(const Pmf& a, const Pmf& b) {
  Pmf c;
  if (a.values.empty() || b.values.empty()) return c;
  c.offset = a.offset + b.offset;
  size_t n = a.values.size() + b.values.size() - 1;
  if (static_cast<double>(a.values.size()) * static_cast<double>(b.values.size()) < 4e6) {
    c.values.assign(n, 0.0);
    for (size_t i = 0; i < a.values.size(); ++i)
      for (size_t j = 0; j < b.values.size(); ++j) c.values[i + j] += a.values[i] * b.values[j];
  } else {
    size_t m = 1;
    while (m < n) m <<= 1;
    size_t h = m / 2 + 1;
    std::vector<double> x(m, 0.0), y(m, 0.0), out(m);
    std::copy(a.values.begin(), a.values.end(), x.begin());
    std::copy(b.values.begin(), b.values.end(), y.begin());
    FftwBuf<fftw_complex> fx(h), fy(h);
    fftw_plan p1, p2, p3;
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      p1 = fftw_plan_dft_r2c_1d(static_cast<int>(m), x.data(), fx.p, FFTW_ESTIMATE);
      p2 = fftw_plan_dft_r2c_1d(static_cast<int>(m), y.data(), fy.p, FFTW_ESTIMATE);
      p3 = fftw_plan_dft_c2r_1d(static_cast<int>(m), fx.p, out.data(), FFTW_ESTIMATE);
    }
    std::copy(a.values.begin(), a.values.end(), x.begin());
    std::fill(x.begin() + static_cast<long>(a.values.size()), x.end(), 0.0);
    std::copy(b.values.begin(), b.values.end(), y.begin());
    std::fill(y.begin() + static_cast<long>(b.values.size()), y.end(), 0.0);
    fftw_execute(p1);
    fftw_execute(p2);
    double inv = 1.0 / static_cast<double>(m);
    for (size_t j = 0; j < h; ++j) {
      cd z = cd(fx.p[j][0], fx.p[j][1]) * cd(fy.p[j][0], fy.p[j][1]) * inv;
      fx.p[j][0] = z.real();
      fx.p[j][1] = z.imag();
    }
    fftw_execute(p3);
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      fftw_destroy_plan(p1);
      fftw_destroy_plan(p2);
      fftw_destroy_plan(p3);
    }
    c.values.assign(out.begin(), out.begin() + static_cast<long>(n));
    for (double& v : c.values) v = std::max(v, 0.0);
  }
  c.total = a.total * b.total;
  c.tail_bound = std::isnan(c.total) ? a.tail_bound + b.tail_bound : std::max(0.0, c.total - c.mass());
  c.lo_exact = a.lo_exact && b.lo_exact;
  c.hi_exact = a.hi_exact && b.hi_exact;
  c.abs_err = a.abs_err + b.abs_err;
  c.noise = std::max(a.noise, b.noise) + 32 * std::numeric_limits<double>::epsilon();
  c.achieved = std::max(a.achieved, b.achieved);
  c.index = a.index;
  if (a.b && b.b) c.b = *a.b + *b.b;
  return c;
}

}  // namespace passloc
