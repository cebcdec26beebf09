// Command-line front end; talks to the library only through passloc.h.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "passloc/passloc.h"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Failure {
  int status;
};

struct Str {
  char* p = nullptr;
  ~Str() { passloc_string_free(p); }
  char** out() { return &p; }
  std::string s() const { return p ? p : ""; }
};

using SpecPtr = std::unique_ptr<passloc_spec, decltype(&passloc_spec_free)>;
using PmfPtr = std::unique_ptr<passloc_pmf, decltype(&passloc_pmf_free)>;

void check(int status) {
  if (status == PASSLOC_OK) return;
  std::cerr << "error: " << passloc_last_error() << '\n';
  throw Failure{status};
}

// Input problems count as usage errors.
int exit_code(int status) {
  switch (status) {
    case PASSLOC_E_CONFIG:
    case PASSLOC_E_IO:
    case PASSLOC_E_INVALID_SPEC:
    case PASSLOC_E_BAD_HONEYCOMB_SPEC:
    case PASSLOC_E_DEGENERATE_QUERY:
    case PASSLOC_E_INVALID_ARGUMENT:
      return kUsage;
    default:
      return kFailed;
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) {
    std::cerr << "error: cannot write " << path << '\n';
    throw Failure{PASSLOC_E_IO};
  }
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "error: cannot read " << path << '\n';
    throw Failure{PASSLOC_E_IO};
  }
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct WalkArgs {
  std::string config;
  std::string builtin;
  std::string q = "1/2";
  int y = 1;

  void add(CLI::App* app) {
    app->add_option("--config", config, "walk config (JSON)");
    app->add_option("--builtin", builtin, "symmetric-diagonal, symmetric-standard, uniform-honeycomb or bondesson")
        ->excludes(app->get_option("--config"));
    app->add_option("--q", q, "bondesson up-probability")->capture_default_str();
    app->add_option("--y", y, "start level")->capture_default_str();
  }

  SpecPtr load() const {
    passloc_spec* s = nullptr;
    if (!config.empty()) check(passloc_spec_load(config.c_str(), &s));
    else if (!builtin.empty()) check(passloc_spec_builtin(builtin.c_str(), q.c_str(), &s));
    else {
      std::cerr << "error: give --config or --builtin\n";
      throw Failure{PASSLOC_E_CONFIG};
    }
    return SpecPtr(s, passloc_spec_free);
  }
};

struct LimitArgs {
  passloc_limit_options o{};
  std::string method = "closure";

  LimitArgs() { passloc_limit_options_default(&o); }

  void add(CLI::App* app) {
    app->add_option("--method", method, "b -> infinity route: closure or doubling")
        ->check(CLI::IsMember({"closure", "doubling"}))
        ->capture_default_str();
    app->add_option("--tol", o.tol, "closure: sup change between FFT grid doublings")->capture_default_str();
    app->add_option("--max-log2", o.max_log2, "closure: largest FFT grid exponent")->capture_default_str();
    app->add_option("--tv-tol", o.tv_tol, "doubling: total-variation stopping rule")->capture_default_str();
    app->add_option("--b-max", o.b_max, "doubling: largest b")->capture_default_str();
  }

  const passloc_limit_options* get() {
    o.method = method == "doubling" ? 1 : 0;
    return &o;
  }
};

PmfPtr mk(passloc_pmf* p) { return PmfPtr(p, passloc_pmf_free); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-passage location distributions of level-dependent lattice walks"};
  app.require_subcommand(1);
  unsigned bits = 0;
  app.add_option("--precision-bits", bits, "working precision for series extraction (default 128, or PASSLOC_PRECISION_BITS)");

  // pmf
  auto* pmf = app.add_subcommand("pmf", "compute a first-passage location PMF");
  WalkArgs pw;
  LimitArgs pl;
  int pb = 0;
  bool limit = false, barrier = false;
  std::string out, meta;
  long k_min = 1, k_max = 0;
  pw.add(pmf);
  pmf->add_option("--b", pb, "upper barrier (finite strip)");
  pmf->add_flag("--limit", limit, "b = infinity");
  pmf->add_flag("--barrier", barrier, "reflecting-barrier product route (b = infinity)");
  pl.add(pmf);
  pmf->add_option("--out", out, "CSV output (default stdout)");
  pmf->add_option("--meta", meta, "JSON metadata output");
  pmf->add_option("--k-min", k_min, "first k written");
  pmf->add_option("--k-max", k_max, "last k written");

  // verify
  auto* ver = app.add_subcommand("verify", "certification, interlacing chain, degree bounds and bell shape");
  WalkArgs vw;
  int vb = 0, n_max = 8;
  std::string vout;
  vw.add(ver);
  ver->add_option("--b", vb, "upper barrier; 0 for b = infinity")->capture_default_str();
  ver->add_option("--n-max", n_max, "highest difference order checked")->capture_default_str();
  ver->add_option("--out", vout, "JSON output (default stdout)");

  // decompose
  auto* dec = app.add_subcommand("decompose", "factor counts and AM-CM atoms");
  WalkArgs dw;
  int db = 0;
  std::string dout;
  dw.add(dec);
  dec->add_option("--b", db, "upper barrier")->required();
  dec->add_option("--out", dout, "JSON output (default stdout)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo histogram");
  WalkArgs sw;
  long sb = 0, samples = 100000, step_cap = 1000000;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string sout, sstats;
  sw.add(sim);
  sim->add_option("--b", sb, "upper barrier; 0 for none")->capture_default_str();
  sim->add_option("--samples", samples, "trajectories")->capture_default_str();
  sim->add_option("--step-cap", step_cap, "steps before a trajectory is censored")->capture_default_str();
  sim->add_option("--seed", seed, "master seed")->capture_default_str();
  sim->add_option("--threads", threads, "worker threads (0: all cores)")->capture_default_str();
  sim->add_option("--out", sout, "CSV output (default stdout)");
  sim->add_option("--stats", sstats, "JSON statistics output");

  // compare
  auto* cmp = app.add_subcommand("compare", "distances between PMFs");
  std::vector<std::string> csvs;
  std::vector<long> csv_samples;
  WalkArgs cw;
  int cb = 0;
  bool use_dp = false;
  long mc = 0;
  double tail_cap = 1e-12, max_tv = -1;
  std::string cout_path;
  cmp->add_option("--csv", csvs, "two PMF CSV files to compare")->expected(2);
  cmp->add_option("--csv-samples", csv_samples, "sample counts for the CSV files (0 = analytic)")->expected(2);
  cw.add(cmp);
  cmp->add_option("--b", cb, "upper barrier for the analytic PMF; 0 for b = infinity")->capture_default_str();
  cmp->add_flag("--dp", use_dp, "compare against the dynamic-programming oracle");
  cmp->add_option("--tail-cap", tail_cap, "DP unabsorbed-mass cap")->capture_default_str();
  cmp->add_option("--mc", mc, "compare against a Monte Carlo run with this many samples");
  cmp->add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();
  cmp->add_option("--max-tv", max_tv, "exit 1 when any TV exceeds this");
  cmp->add_option("--out", cout_path, "JSON output (default stdout)");

  // example
  auto* ex = app.add_subcommand("example", "built-in closed-form cross-checks");
  std::string ex_name, ex_q = "1/2";
  int ex_y = 1;
  std::string ex_out;
  ex->add_option("name", ex_name, "diag-symmetric, bondesson, standard-symmetric or honeycomb-uniform")
      ->required()
      ->check(CLI::IsMember({"diag-symmetric", "bondesson", "standard-symmetric", "honeycomb-uniform"}));
  ex->add_option("--q", ex_q, "bondesson up-probability")->capture_default_str();
  ex->add_option("--y", ex_y, "start level")->capture_default_str();
  ex->add_option("--out", ex_out, "JSON output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (bits) passloc_set_precision_bits(bits);

    if (*pmf) {
      SpecPtr s = pw.load();
      passloc_pmf* p = nullptr;
      int modes = (pb > 0) + limit + barrier;
      if (modes != 1) {
        std::cerr << "error: give exactly one of --b, --limit, --barrier\n";
        return kUsage;
      }
      if (pb > 0) check(passloc_pmf_finite(s.get(), pw.y, pb, &p));
      else if (limit) check(passloc_pmf_limit(s.get(), pw.y, pl.get(), &p));
      else check(passloc_pmf_barrier(s.get(), pw.y, pl.get(), &p));
      PmfPtr h = mk(p);
      Str csv, m;
      check(passloc_pmf_csv(h.get(), k_min, k_max, csv.out()));
      emit(csv.s(), out);
      if (!meta.empty()) {
        check(passloc_pmf_meta(h.get(), m.out()));
        emit(m.s(), meta);
      }
      return kOk;
    }

    if (*ver) {
      SpecPtr s = vw.load();
      int passed = 0;
      Str r;
      check(passloc_verify(s.get(), vw.y, vb, n_max, &passed, r.out()));
      emit(r.s(), vout);
      return passed ? kOk : kFailed;
    }

    if (*dec) {
      SpecPtr s = dw.load();
      int passed = 0;
      Str r;
      check(passloc_decompose(s.get(), dw.y, db, &passed, r.out()));
      emit(r.s(), dout);
      return passed ? kOk : kFailed;
    }

    if (*sim) {
      SpecPtr s = sw.load();
      passloc_pmf* p = nullptr;
      Str stats, csv;
      check(passloc_pmf_simulate(s.get(), sw.y, sb, samples, step_cap, seed, threads, &p, stats.out()));
      PmfPtr h = mk(p);
      check(passloc_pmf_csv(h.get(), 1, 0, csv.out()));
      emit(csv.s(), sout);
      if (!sstats.empty()) emit(stats.s(), sstats);
      return kOk;
    }

    if (*cmp) {
      std::string report = "{\n";
      bool over = false;
      auto add = [&](const std::string& key, passloc_pmf* a, passloc_pmf* b, bool last) {
        double tv = 0;
        Str r;
        check(passloc_compare(a, b, &tv, r.out()));
        if (max_tv >= 0 && tv > max_tv) over = true;
        std::string body = r.s();
        std::string indented;
        for (char c : body) {
          indented += c;
          if (c == '\n') indented += "  ";
        }
        report += "  \"" + key + "\": " + indented + (last ? "\n" : ",\n");
      };
      if (!csvs.empty()) {
        if (csv_samples.empty()) csv_samples = {0, 0};
        passloc_pmf *a = nullptr, *b = nullptr;
        check(passloc_pmf_from_csv(slurp(csvs[0]).c_str(), csv_samples[0], &a));
        PmfPtr ha = mk(a);
        check(passloc_pmf_from_csv(slurp(csvs[1]).c_str(), csv_samples[1], &b));
        PmfPtr hb = mk(b);
        add("csv", ha.get(), hb.get(), true);
      } else {
        SpecPtr s = cw.load();
        if (!use_dp && mc == 0) {
          std::cerr << "error: give --csv, --dp or --mc\n";
          return kUsage;
        }
        if (use_dp && cb == 0) {
          std::cerr << "error: --dp needs a finite --b\n";
          return kUsage;
        }
        passloc_pmf* a = nullptr;
        if (cb > 0) check(passloc_pmf_finite(s.get(), cw.y, cb, &a));
        else check(passloc_pmf_limit(s.get(), cw.y, nullptr, &a));
        PmfPtr ha = mk(a);
        if (use_dp) {
          passloc_pmf* d = nullptr;
          check(passloc_pmf_dp(s.get(), cw.y, cb, tail_cap, 1000000, &d));
          PmfPtr hd = mk(d);
          add("analytic_vs_dp", ha.get(), hd.get(), mc == 0);
        }
        if (mc > 0) {
          passloc_pmf* m = nullptr;
          Str stats;
          check(passloc_pmf_simulate(s.get(), cw.y, cb, mc, 1000000, seed, 0, &m, stats.out()));
          PmfPtr hm = mk(m);
          add("analytic_vs_mc", ha.get(), hm.get(), true);
        }
      }
      report += "}\n";
      emit(report, cout_path);
      return over ? kFailed : kOk;
    }

    if (*ex) {
      int passed = 0;
      Str r;
      check(passloc_example(ex_name.c_str(), ex_q.c_str(), ex_y, &passed, r.out()));
      emit(r.s(), ex_out);
      return passed ? kOk : kFailed;
    }
  } catch (const Failure& f) {
    return exit_code(f.status);
  }
  return kUsage;
}
