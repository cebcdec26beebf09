#include <algorithm>
#include <cmath>
#include <string>

#include "passloc/error.hpp"
#include "passloc/oracle.hpp"
#include "passloc/passage.hpp"
#include "poly.hpp"

namespace passloc {

double Pmf::mass() const {
  double s = 0;
  for (double v : values) s += v;
  return s;
}

double Pmf::at(long k) const {
  if (k < offset || k >= end()) return 0;
  return values[static_cast<size_t>(k - offset)];
}

namespace {

void check_query(const WalkSpec& spec, int y, int b) {
  require_valid(spec);
  if (y < 1) throw Error(Errc::DegenerateQuery, "start level y must be at least 1");
  if (b <= y) throw Error(Errc::DegenerateQuery, "upper barrier b must exceed y");
  for (int z : spec.reflecting_levels) {
    bool lower = z >= 1 && z <= y - 2;
    bool upper = z >= y + 1 && z <= b - 2;
    if (lower || upper)
      throw Error(Errc::ReflectingLevelInStrip,
                  "reflecting level " + std::to_string(z) + " lies inside the strip; use barrier_pmf");
  }
}

void finish(PassageGF& g, const WalkSpec& spec, const LaurentPoly& num, const LaurentPoly& den) {
  g.numerator = num;
  g.denominator = den;
  detail::reduce_fraction(g.numerator, g.denominator);
  if (evaluate(g.denominator, mpq_class(1)) < 0) {
    g.numerator = -g.numerator;
    g.denominator = -g.denominator;
  }
  g.value_at_one = evaluate(g.numerator, mpq_class(1)) / evaluate(g.denominator, mpq_class(1));
  mpq_class ruin = level_chain_hitting(spec, g.y, g.b);
  if (g.value_at_one != ruin)
    throw Error(Errc::Numeric, "F(1) = " + g.value_at_one.get_str() + " disagrees with the level chain (" + ruin.get_str() + ")");
}

}  // namespace

PassageGF passage_gf(const WalkSpec& spec, int y, int b, bool certify) {
  if (spec.kind == Lattice::standard) throw Error(Errc::InvalidArgument, "passage_gf needs a diagonal walk");
  if (spec.kind == Lattice::honeycomb) return passage_gf_any(spec, y, b, certify);
  check_query(spec, y, b);
  StripChain lo = strip_lower(spec, y - 1, certify);
  StripChain up = strip_upper(spec, y, b, certify);

  LaurentPoly gl1 = lo.at(y - 1);
  LaurentPoly den = gl1 * up.at(y + 1) - level_up(spec, y) * level_down(spec, y + 1) * up.at(y + 2) * gl1;
  if (y >= 2) den = den - level_down(spec, y) * level_up(spec, y - 1) * lo.at(y - 2) * up.at(y + 1);

  PassageGF g;
  g.kind = Lattice::diagonal;
  g.y = y;
  g.b = b;
  g.two_point_product = LaurentPoly(1);
  for (int k = 1; k <= y; ++k) {
    const ProbRow& r = spec.row(k);
    g.two_point_product = g.two_point_product * level_down(spec, k);
    if (r[3] > 0 && r[4] > 0) g.two_point_factors.push_back({r[3], r[4]});
  }
  g.pf_poly = gl1;
  g.q_num = gl1 * up.at(y + 1);
  g.q_den = den;
  g.chain_bound = (y - 1) / 2;
  finish(g, spec, g.two_point_product * up.at(y + 1), den);
  if (certify) {
    g.pf_part = lo.form(y - 1);
    g.q_part = certify_q(g.q_num, g.q_den, "H");
    g.certified = true;
  }
  return g;
}

PassageGF passage_gf_standard(const WalkSpec& spec, int y, int b, bool certify) {
  if (spec.kind != Lattice::standard) throw Error(Errc::InvalidArgument, "passage_gf_standard needs a standard walk");
  check_query(spec, y, b);
  StripChain lo = strip_lower_standard(spec, y - 1, certify);
  StripChain up = strip_upper_standard(spec, y, b, certify);
  const ProbRow& r = spec.row(y);
  LaurentPoly s = LaurentPoly::three_term(-r[3], 1, -r[1]);
  LaurentPoly gl1 = lo.at(y - 1);
  LaurentPoly den = s * gl1 * up.at(y + 1);
  if (y + 1 < b) den = den - up.at(y + 2) * gl1 * (r[2] * spec.row(y + 1)[4]);
  if (y >= 2) {
    const ProbRow& prev = spec.row(y - 1);
    den = den - lo.at(y - 2) * up.at(y + 1) * (r[4] * prev[2] / prev[4]);
  }
  PassageGF g;
  g.kind = Lattice::standard;
  g.y = y;
  g.b = b;
  g.two_point_product = LaurentPoly(1);
  g.pf_poly = gl1 * mpq_class(1 / r[4]);
  g.q_num = gl1 * up.at(y + 1);
  g.q_den = den;
  g.chain_bound = y - 1;
  finish(g, spec, up.at(y + 1) * r[4], den);
  if (certify) {
    g.pf_part = certify_p(g.pf_poly, "G_y");
    g.q_part = certify_q(g.q_num, g.q_den, "H");
    g.certified = true;
  }
  return g;
}

PassageGF passage_gf_any(const WalkSpec& spec, int y, int b, bool certify) {
  switch (spec.kind) {
    case Lattice::standard:
      return passage_gf_standard(spec, y, b, certify);
    case Lattice::honeycomb: {
      require_valid(spec);
      PassageGF g = passage_gf(honeycomb_embed(spec, y).diagonal, y, b, certify);
      g.kind = Lattice::honeycomb;
      return g;
    }
    case Lattice::diagonal:
      break;
  }
  return passage_gf(spec, y, b, certify);
}

namespace {

// Smallest m >= 0 with c * r^m / (1 - r) <= tol, for 0 < r < 1.
long geometric_cut(double c, double r, double tol) {
  if (c <= 0) return 0;
  double need = std::log(tol * (1 - r) / c) / std::log(r);
  return need <= 0 ? 0 : static_cast<long>(std::ceil(need));
}

}  // namespace

Pmf pmf_extract(const PassageGF& f, const ExtractOptions& opt) {
  use_working_precision();
  PartialFractions pf = partial_fractions(f.numerator, f.denominator);
  long k_lo = 0, k_hi = 0;
  bool any = false;
  auto widen = [&](long lo, long hi) {
    if (!any) {
      k_lo = lo;
      k_hi = hi;
      any = true;
    } else {
      k_lo = std::min(k_lo, lo);
      k_hi = std::max(k_hi, hi);
    }
  };
  if (!pf.rest.is_zero()) widen(pf.rest.min_exp(), pf.rest.max_exp());
  if (pf.nu != 0) widen(-1, -1);
  if (pf.eta != 0) widen(0, 0);
  if (pf.mu != 0) widen(1, 1);
  double side_tol = opt.mass_tol / 2;
  if (!pf.gamma_terms.empty()) {
    long m = 1;
    for (const auto& g : pf.gamma_terms) {
      double a = g.location.convert_to<double>();
      double c = std::abs(g.residue.convert_to<double>());
      m = std::max(m, geometric_cut(c * static_cast<double>(pf.gamma_terms.size()), a, side_tol));
    }
    widen(-m, -1);
  }
  if (!pf.delta_terms.empty()) {
    long m = 0;
    for (const auto& d : pf.delta_terms) {
      double ib = 1 / d.location.convert_to<double>();
      double c = std::abs(d.residue.convert_to<double>()) * ib;
      m = std::max(m, geometric_cut(c * static_cast<double>(pf.delta_terms.size()), ib, side_tol));
    }
    widen(0, m);
  }
  if (!any) throw Error(Errc::Numeric, "empty passage generating function");
  if (k_hi - k_lo > 50'000'000) throw Error(Errc::Numeric, "PMF support too long to tabulate");

  Pmf p;
  p.offset = k_lo;
  p.precise = annulus_series(pf, static_cast<int>(k_lo), static_cast<int>(k_hi));
  double cancel = 0;
  {
    // Clustered poles give residues that cancel across the series; redo the
    // extraction with the bits that cancellation eats.
    Real big = abs(pf.nu) + abs(pf.eta) + abs(pf.mu);
    for (const auto& g : pf.gamma_terms) big += abs(g.residue);
    for (const auto& d : pf.delta_terms) big += abs(d.residue) / d.location;
    for (const auto& c : pf.rest.coeffs()) big += abs(to_real(c));
    Real top = 0;
    for (const auto& v : p.precise) top = std::max(top, Real(abs(v)));
    cancel = top > 0 ? std::max(0.0, std::log2((big / top).convert_to<double>())) : 0.0;
    unsigned need = static_cast<unsigned>(std::ceil(pf.lost_bits + cancel)) + 96;
    if (need > pf.bits) {
      PrecisionScope scope((need + 63) / 64 * 64);
      pf = partial_fractions(f.numerator, f.denominator);
      p.precise = annulus_series(pf, static_cast<int>(k_lo), static_cast<int>(k_hi));
    }
  }
  p.values.resize(p.precise.size());
  Real sum = 0, peak = 0;
  double lowest = 0;
  for (size_t i = 0; i < p.precise.size(); ++i) {
    double v = p.precise[i].convert_to<double>();
    lowest = std::min(lowest, v);
    p.values[i] = std::max(v, 0.0);
    sum += p.precise[i];
    peak = std::max(peak, Real(abs(p.precise[i])));
  }
  p.min_before_clamp = lowest;
  p.total = f.value_at_one.get_d();
  p.tail_bound = std::max(0.0, Real(to_real(f.value_at_one) - sum).convert_to<double>());
  p.lo_exact = pf.gamma_terms.empty();
  p.hi_exact = pf.delta_terms.empty();
  double good = static_cast<double>(pf.bits) - pf.lost_bits - cancel;
  p.noise = std::max(Real(pf.residue_error * 64), Real(peak * pow(Real(2), -good + 16))).convert_to<double>();
  p.abs_err = p.noise;
  p.b = f.b;
  p.index = f.kind == Lattice::standard ? "raw" : "rescaled";

  if (opt.fft_log2 > 0) {
    const LaurentPoly& num = f.numerator;
    const LaurentPoly& den = f.denominator;
    std::vector<double> c =
        fft_coefficients([&](std::complex<double> w) { return evaluate_accurate(num, w) / evaluate_accurate(den, w); }, opt.fft_log2);
    long half = static_cast<long>(c.size() / 2);
    double worst = 0;
    for (long k = -half; k < half; ++k) worst = std::max(worst, std::abs(c[static_cast<size_t>(k + half)] - p.at(k)));
    p.fft_check = worst;
  }
  return p;
}

DecompositionReport decompose(const PassageGF& f) {
  if (!f.certified) throw Error(Errc::InvalidArgument, "decompose needs a certified generating function");
  DecompositionReport r;
  r.geometric_count = f.pf_part->B();
  r.reflected_geometric_count = f.pf_part->A();
  r.reflected_two_point_count = static_cast<int>(f.two_point_factors.size());
  r.amcm = amcm_atoms(*f.q_part);
  if (f.kind == Lattice::standard) {
    r.bound = f.y / 2;
    r.bounds_ok = r.geometric_count <= r.bound && r.reflected_geometric_count <= r.bound;
  } else {
    r.bound = (f.y - 1) / 2;
    r.bounds_ok = r.geometric_count <= r.bound && r.reflected_geometric_count <= r.bound &&
                  r.reflected_two_point_count <= f.y;
  }
  r.chain_bounds_ok = r.geometric_count <= f.chain_bound && r.reflected_geometric_count <= f.chain_bound;
  return r;
}

namespace {

struct Series {
  long offset = 0;
  std::vector<Real> v;
};

Series conv(const Series& a, const Series& b) {
  Series c;
  if (a.v.empty() || b.v.empty()) return c;
  c.offset = a.offset + b.offset;
  c.v.assign(a.v.size() + b.v.size() - 1, Real(0));
  for (size_t i = 0; i < a.v.size(); ++i) {
    if (a.v[i] == 0) continue;
    for (size_t j = 0; j < b.v.size(); ++j) c.v[i + j] += a.v[i] * b.v[j];
  }
  return c;
}

long series_length(const Real& ratio) {
  // terms until ratio^n < 2^-(bits + 8)
  double r = ratio.convert_to<double>();
  double n = (precision_bits() + 8) * std::log(2.0) / -std::log(r);
  return std::min(2'000'000L, static_cast<long>(std::ceil(n)) + 1);
}

}  // namespace

std::vector<Real> reconstruct_from_factors(const PassageGF& f, long k_min, long k_max) {
  use_working_precision();
  if (!f.certified) throw Error(Errc::InvalidArgument, "reconstruction needs a certified generating function");
  const PForm& g = *f.pf_part;
  Series acc;
  acc.offset = f.two_point_product.min_exp();
  for (const auto& c : f.two_point_product.coeffs()) acc.v.push_back(to_real(c));
  for (auto& v : acc.v) v /= g.lambda;
  for (const auto& b : g.betas) {
    // 1/(beta - x)
    Real beta = root_value(b), inv = 1 / beta;
    Series s;
    long n = series_length(inv);
    Real t = inv;
    for (long k = 0; k < n; ++k, t *= inv) s.v.push_back(t);
    acc = conv(acc, s);
  }
  for (const auto& a : g.alphas) {
    // 1/(1/alpha - 1/x) = alpha sum_m alpha^m x^-m
    Real alpha = root_value(a);
    long n = series_length(alpha);
    Series s;
    s.offset = -(n - 1);
    s.v.resize(static_cast<size_t>(n));
    Real t = alpha;
    for (long m = 0; m < n; ++m, t *= alpha) s.v[static_cast<size_t>(n - 1 - m)] = t;
    acc = conv(acc, s);
  }
  // H on a window wide enough to cover the requested range
  long lo = k_min - (acc.offset + static_cast<long>(acc.v.size())), hi = k_max - acc.offset;
  PartialFractions pf = partial_fractions(f.q_num, f.q_den);
  Series h;
  h.offset = lo;
  h.v = annulus_series(pf, static_cast<int>(lo), static_cast<int>(hi));
  Series out = conv(acc, h);
  std::vector<Real> r;
  for (long k = k_min; k <= k_max; ++k) {
    long i = k - out.offset;
    r.push_back(i >= 0 && i < static_cast<long>(out.v.size()) ? out.v[static_cast<size_t>(i)] : Real(0));
  }
  return r;
}

}  // namespace passloc
