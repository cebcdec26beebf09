#include "passloc/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "passloc/bellshape.hpp"
#include "passloc/error.hpp"

namespace passloc {

using json = nlohmann::ordered_json;

namespace {

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json pform_json(const PForm& f) {
  json j;
  j["poly"] = f.poly.str();
  j["A"] = f.A();
  j["B"] = f.B();
  j["lambda"] = f.lambda.convert_to<double>();
  json a = json::array(), b = json::array();
  for (const auto& r : f.alphas) a.push_back(r.approx());
  for (const auto& r : f.betas) b.push_back(r.approx());
  j["alphas"] = a;
  j["betas"] = b;
  return j;
}

json bell_json(const BellReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels) levels.push_back({{"n", l.n}, {"sign_changes", l.changes}, {"ok", l.ok}});
  return {{"n_max", r.levels.size()}, {"levels", levels}, {"ok", r.ok}};
}

json error_json(const Error& e) { return {{"code", errc_name(e.code())}, {"message", e.what()}}; }

WalkSpec lattice_walk(const WalkSpec& s, int y) {
  return s.kind == Lattice::honeycomb ? honeycomb_embed(s, y).diagonal : s;
}

json chain_json(const StripChain& c, int bound_num, int bound_den_shift) {
  json arr = json::array();
  for (int j = c.first; j <= c.last(); ++j) {
    const PForm& f = c.form(j);
    json e{{"j", j}, {"A", f.A()}, {"B", f.B()}, {"bound", (j + bound_den_shift) / bound_num}};
    if (j < c.last()) e["interlaces_next"] = interlaces(f, c.form(j + 1));
    arr.push_back(e);
  }
  return arr;
}

}  // namespace

std::string pmf_to_csv(const Pmf& p, long k_min, long k_max) {
  std::ostringstream os;
  os << "k,probability\n";
  long lo = p.offset, hi = p.end() - 1;
  if (k_min <= k_max) {
    lo = k_min;
    hi = k_max;
  }
  for (long k = lo; k <= hi; ++k) os << k << ',' << g17(p.at(k)) << '\n';
  return os.str();
}

Pmf pmf_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw Error(Errc::Io, "empty CSV");
  if (line.rfind("k,probability", 0) != 0) throw Error(Errc::Io, "CSV header must be k,probability");
  Pmf p;
  bool first = true;
  long expect = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(Errc::Io, "malformed CSV line: " + line);
    long k;
    double v;
    try {
      k = std::stol(line.substr(0, comma));
      v = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw Error(Errc::Io, "malformed CSV line: " + line);
    }
    if (first) {
      p.offset = k;
      expect = k;
      first = false;
    }
    if (k < expect) throw Error(Errc::Io, "CSV rows must be in increasing k");
    while (expect < k) {
      p.values.push_back(0);
      ++expect;
    }
    p.values.push_back(v);
    ++expect;
  }
  return p;
}

std::string pmf_meta_json(const Pmf& p) {
  json j;
  j["index"] = p.index;
  j["offset"] = p.offset;
  j["length"] = p.values.size();
  j["mass"] = p.mass();
  j["tail_bound"] = p.tail_bound;
  if (!std::isnan(p.total)) j["hitting_probability"] = p.total;
  j["b"] = p.b ? json(*p.b) : json("inf");
  j["lo_exact"] = p.lo_exact;
  j["hi_exact"] = p.hi_exact;
  j["abs_err"] = p.abs_err;
  if (p.achieved > 0) j["achieved"] = p.achieved;
  if (!std::isnan(p.fft_check)) j["fft_check"] = p.fft_check;
  j["min_before_clamp"] = p.min_before_clamp;
  if (p.samples > 0) j["samples"] = p.samples;
  return j.dump(2);
}

std::string validation_json(const WalkSpec& spec, bool& ok) {
  ValidationReport r = validate(spec);
  ok = r.ok();
  json j{{"valid", ok}, {"violations", r.violations}};
  return j.dump(2);
}

Report verify_report(const WalkSpec& spec0, int y, int b, int n_max) {
  Report out;
  json j;
  ValidationReport vr = validate(spec0);
  j["valid"] = vr.ok();
  j["violations"] = vr.violations;
  if (!vr.ok()) {
    out.ok = false;
    j["ok"] = false;
    out.json = j.dump(2);
    return out;
  }
  j["query"] = {{"y", y}, {"b", b == 0 ? json("inf") : json(b)}};
  bool ok = true;
  try {
    WalkSpec spec = lattice_walk(spec0, y);
    bool standard = spec.kind == Lattice::standard;
    if (y >= 2) {
      StripChain c = standard ? strip_lower_standard(spec, y - 1) : strip_lower(spec, y - 1);
      j["chain"] = standard ? chain_json(c, 1, 0) : chain_json(c, 2, 0);
      for (const auto& e : j["chain"])
        if (e.contains("interlaces_next") && !e["interlaces_next"].get<bool>()) ok = false;
    }
    Pmf pmf;
    if (b > 0) {
      PassageGF g = passage_gf_any(spec0, y, b);
      j["p_part"] = pform_json(*g.pf_part);
      j["q_part"] = {{"numerator", pform_json(g.q_part->numerator)}, {"denominator", pform_json(g.q_part->denominator)}};
      j["value_at_one"] = g.value_at_one.get_str();
      j["level_chain"] = level_chain_hitting(spec, y, b).get_str();
      DecompositionReport d = decompose(g);
      j["bounds"] = {{"bound", d.bound},
                     {"geometric", d.geometric_count},
                     {"reflected_geometric", d.reflected_geometric_count},
                     {"reflected_two_point", d.reflected_two_point_count},
                     {"final_bounds_ok", d.bounds_ok},
                     {"chain_bound", g.chain_bound},
                     {"chain_bounds_ok", d.chain_bounds_ok}};
      ok = ok && (standard ? d.chain_bounds_ok : d.bounds_ok);
      pmf = pmf_extract(g);
    } else {
      pmf = pmf_limit(spec0, y);
    }
    BellReport br = check_bell(seq_from_pmf(pmf, 1e-12), n_max);
    j["bell"] = bell_json(br);
    ok = ok && br.ok;
  } catch (const Error& e) {
    j["error"] = error_json(e);
    ok = false;
  }
  j["ok"] = ok;
  out.ok = ok;
  out.json = j.dump(2);
  return out;
}

Report decomposition_report(const WalkSpec& spec, int y, int b) {
  PassageGF g = passage_gf_any(spec, y, b);
  DecompositionReport d = decompose(g);
  json j;
  j["query"] = {{"y", y}, {"b", b}};
  j["geometric_count"] = d.geometric_count;
  j["reflected_geometric_count"] = d.reflected_geometric_count;
  j["reflected_two_point_count"] = d.reflected_two_point_count;
  json tp = json::array();
  for (const auto& t : g.two_point_factors) tp.push_back({{"p3", t.p3.get_str()}, {"p4", t.p4.get_str()}});
  j["two_point_factors"] = tp;
  j["p_part"] = pform_json(*g.pf_part);
  json minus = json::array(), plus = json::array();
  for (const auto& a : d.amcm.minus_atoms)
    minus.push_back({{"location", a.location.convert_to<double>()}, {"mass", a.mass.convert_to<double>()}});
  for (const auto& a : d.amcm.plus_atoms)
    plus.push_back({{"location", a.location.convert_to<double>()}, {"mass", a.mass.convert_to<double>()}});
  j["amcm"] = {{"minus_atoms", minus},
               {"zeta", d.amcm.zeta.convert_to<double>()},
               {"plus_atoms", plus},
               {"eta", d.amcm.eta.convert_to<double>()}};
  j["bound"] = d.bound;
  j["final_bounds_ok"] = d.bounds_ok;
  j["chain_bound"] = g.chain_bound;
  j["chain_bounds_ok"] = d.chain_bounds_ok;
  Report r;
  r.ok = g.kind == Lattice::standard ? d.chain_bounds_ok : d.bounds_ok;
  r.json = j.dump(2);
  return r;
}

std::string comparison_json(const Comparison& c) {
  json j{{"tv", c.tv}, {"sup", c.sup}, {"chi2", c.chi2}, {"chi2_dof", c.chi2_dof}, {"chi2_pvalue", c.chi2_pvalue}};
  return j.dump(2);
}

std::string mc_stats_json(const McResult& r) {
  json j{{"samples", r.samples},      {"absorbed", r.absorbed}, {"censored", r.censored},
         {"absorbed_upper", r.absorbed_upper}, {"steps", r.steps},       {"seed", r.seed},
         {"seconds", r.seconds},      {"empirical_mass", r.pmf.mass()}};
  return j.dump(2);
}

namespace {

mpz_class binom(long n, long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// P(k) = y/(2k+y) C(2k+y, k) q^k (1-q)^(k+y)
mpq_class ballot(const mpq_class& q, int y, long k) {
  mpq_class p(binom(2 * k + y, k) * y, 2 * k + y);
  p.canonicalize();
  mpq_class qk = 1, rk = 1;
  for (long i = 0; i < k; ++i) qk *= q;
  for (long i = 0; i < k + y; ++i) rk *= 1 - q;
  return p * qk * rk;
}

using cd = std::complex<double>;

cd diag_symmetric_closed(cd w, int y) {
  double s = std::arg(w);
  cd phi = (2.0 - 2.0 * std::abs(std::sin(s / 2))) / (1.0 + w);
  if (std::abs(1.0 + w) < 1e-300) phi = 0.0;
  return std::pow(phi, y);
}

cd standard_symmetric_closed(cd w, int y) {
  double a = 2 - std::cos(std::arg(w));
  return std::pow(a - std::sqrt(a * a - 1), y);
}

json fft_check(const Pmf& p, const std::function<cd(cd)>& f, double tol, bool& ok) {
  std::vector<double> c = fft_coefficients(f, 14);
  long n = static_cast<long>(c.size()), half = n / 2;
  // fold the accurate PMF onto the same grid before comparing
  std::vector<double> folded(static_cast<size_t>(n), 0.0);
  for (long k = p.offset; k < p.end(); ++k) {
    long m = ((k + half) % n + n) % n;
    folded[static_cast<size_t>(m)] += p.at(k);
  }
  double raw = 0, fold = 0;
  for (long k = -half; k < half; ++k) {
    double ck = c[static_cast<size_t>(k + half)];
    raw = std::max(raw, std::abs(ck - p.at(k)));
    fold = std::max(fold, std::abs(ck - folded[static_cast<size_t>(k + half)]));
  }
  bool pass = fold < tol;
  ok = ok && pass;
  return {{"grid", n}, {"sup_raw", raw}, {"sup_folded", fold}, {"tol", tol}, {"ok", pass}};
}

}  // namespace

Report example_report(const std::string& name, const mpq_class& q, int y) {
  json j;
  j["example"] = name;
  j["y"] = y;
  bool ok = true;
  Pmf p;
  if (name == "bondesson") {
    if (q <= 0 || q >= 1) throw Error(Errc::InvalidArgument, "q must lie in (0, 1)");
    WalkSpec s = bondesson(q);
    p = pmf_limit(s, y);
    j["q"] = q.get_str();
    json vals = json::array();
    double worst = 0;
    for (long k = 0; k <= 10; ++k) {
      mpq_class e = ballot(q, y, k);
      double err = std::abs(p.at(k) - e.get_d());
      worst = std::max(worst, err);
      vals.push_back({{"k", k}, {"probability", p.at(k)}, {"exact", e.get_str()}});
    }
    j["values"] = vals;
    j["max_error"] = worst;
    ok = worst < 1e-10;
    double ruin = q <= mpq_class(1, 2) ? 1.0 : std::pow(mpq_class((1 - q) / q).get_d(), y);
    j["hitting_probability"] = p.total;
    j["ruin_exact"] = ruin;
    ok = ok && std::abs(p.total - ruin) < 1e-12;
  } else if (name == "diag-symmetric") {
    p = pmf_limit(symmetric_diagonal(), y);
    j["fft"] = fft_check(p, [y](cd w) { return diag_symmetric_closed(w, y); }, 1e-8, ok);
  } else if (name == "standard-symmetric") {
    p = pmf_limit(symmetric_standard(), y);
    j["fft"] = fft_check(p, [y](cd w) { return standard_symmetric_closed(w, y); }, 1e-8, ok);
  } else if (name == "honeycomb-uniform") {
    WalkSpec s = uniform_honeycomb();
    p = pmf_limit(s, y);
    j["shift"] = honeycomb_embed(s, y).shift;
    // finite strips increase coefficientwise to the limit
    Pmf fin = pmf_extract(passage_gf_any(s, y, y + 8));
    double excess = 0;
    for (long k = fin.offset; k < fin.end(); ++k) excess = std::max(excess, fin.at(k) - p.at(k));
    j["finite_b"] = y + 8;
    j["finite_minus_limit_max"] = excess;
    ok = excess < 1e-9;
  } else {
    throw Error(Errc::InvalidArgument, "unknown example '" + name + "'");
  }
  j["mass"] = p.mass();
  j["tail_bound"] = p.tail_bound;
  BellReport br = check_bell(seq_from_pmf(p, 1e-12), 8);
  j["bell"] = bell_json(br);
  ok = ok && br.ok;
  j["ok"] = ok;
  Report r;
  r.ok = ok;
  r.json = j.dump(2);
  return r;
}

}  // namespace passloc
