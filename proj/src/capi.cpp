#include "passloc/passloc.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "passloc/bellshape.hpp"
#include "passloc/error.hpp"
#include "passloc/oracle.hpp"
#include "passloc/report.hpp"

using namespace passloc;

struct passloc_spec {
  WalkSpec rep;
};

struct passloc_pmf {
  Pmf rep;
};

namespace {

thread_local std::string last_error;

template <class F>
int guard(F&& f) {
  try {
    f();
    last_error.clear();
    return PASSLOC_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<int>(e.code()) + 1;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PASSLOC_E_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) throw Error(Errc::InvalidArgument, std::string(what) + " is null");
}

LimitOptions limit_opts(const passloc_limit_options* o) {
  LimitOptions l;
  if (!o) return l;
  l.method = o->method == 1 ? LimitOptions::Method::doubling : LimitOptions::Method::closure;
  l.tol = o->tol;
  l.min_log2 = o->min_log2;
  l.max_log2 = o->max_log2;
  l.tv_tol = o->tv_tol;
  l.b_max = o->b_max;
  return l;
}

passloc_pmf* wrap(Pmf p) { return new passloc_pmf{std::move(p)}; }

}  // namespace

extern "C" {

const char* passloc_last_error(void) { return last_error.c_str(); }

const char* passloc_status_name(int status) {
  if (status == PASSLOC_OK) return "Ok";
  if (status == PASSLOC_E_INTERNAL) return "Internal";
  if (status < 1 || status > static_cast<int>(Errc::Io) + 1) return "Unknown";
  return errc_name(static_cast<Errc>(status - 1));
}

void passloc_string_free(char* s) { std::free(s); }
void passloc_set_precision_bits(unsigned bits) { set_precision_bits(bits); }
unsigned passloc_precision_bits(void) { return precision_bits(); }

int passloc_spec_from_json(const char* text, passloc_spec** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new passloc_spec{parse_spec_json(text)};
  });
}

int passloc_spec_load(const char* path, passloc_spec** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new passloc_spec{load_spec(path)};
  });
}

int passloc_spec_builtin(const char* name, const char* param, passloc_spec** out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    std::string n = name;
    WalkSpec s;
    if (n == "symmetric-diagonal") s = symmetric_diagonal();
    else if (n == "symmetric-standard") s = symmetric_standard();
    else if (n == "uniform-honeycomb") s = uniform_honeycomb();
    else if (n == "bondesson") s = bondesson(parse_probability(param ? param : "1/2"));
    else throw Error(Errc::InvalidArgument, "unknown built-in walk '" + n + "'");
    *out = new passloc_spec{std::move(s)};
  });
}

int passloc_spec_to_json(const passloc_spec* s, char** out) {
  return guard([&] {
    need(s, "spec");
    need(out, "out");
    *out = dup(spec_to_json(s->rep));
  });
}

int passloc_spec_validate(const passloc_spec* s, int* valid, char** report) {
  return guard([&] {
    need(s, "spec");
    bool ok = false;
    std::string j = validation_json(s->rep, ok);
    if (valid) *valid = ok ? 1 : 0;
    if (report) *report = dup(j);
  });
}

void passloc_spec_free(passloc_spec* s) { delete s; }

void passloc_limit_options_default(passloc_limit_options* o) {
  if (!o) return;
  LimitOptions l;
  o->method = 0;
  o->tol = l.tol;
  o->min_log2 = l.min_log2;
  o->max_log2 = l.max_log2;
  o->tv_tol = l.tv_tol;
  o->b_max = l.b_max;
}

int passloc_pmf_finite(const passloc_spec* s, int y, int b, passloc_pmf** out) {
  return guard([&] {
    need(s, "spec");
    need(out, "out");
    *out = wrap(pmf_extract(passage_gf_any(s->rep, y, b)));
  });
}

int passloc_pmf_limit(const passloc_spec* s, int y, const passloc_limit_options* o, passloc_pmf** out) {
  return guard([&] {
    need(s, "spec");
    need(out, "out");
    *out = wrap(pmf_limit(s->rep, y, limit_opts(o)));
  });
}

int passloc_pmf_barrier(const passloc_spec* s, int y, const passloc_limit_options* o, passloc_pmf** out) {
  return guard([&] {
    need(s, "spec");
    need(out, "out");
    *out = wrap(barrier_pmf(s->rep, y, limit_opts(o)));
  });
}

int passloc_pmf_dp(const passloc_spec* s, int y, long b, double tail_cap, long max_steps, passloc_pmf** out) {
  return guard([&] {
    need(s, "spec");
    need(out, "out");
    DpOptions o;
    o.tail_cap = tail_cap;
    o.max_steps = max_steps;
    *out = wrap(dp_pmf(s->rep, y, b, o).pmf);
  });
}

int passloc_pmf_simulate(const passloc_spec* s, int y, long b, long samples, long step_cap, uint64_t seed, int threads,
                         passloc_pmf** out, char** stats) {
  return guard([&] {
    need(s, "spec");
    need(out, "out");
    McOptions o;
    o.samples = samples;
    o.step_cap = step_cap;
    o.seed = seed;
    o.threads = threads;
    McResult r = mc_sample(s->rep, y, b, o);
    if (stats) *stats = dup(mc_stats_json(r));
    *out = wrap(std::move(r.pmf));
  });
}

int passloc_pmf_from_csv(const char* text, long samples, passloc_pmf** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    Pmf p = pmf_from_csv(text);
    p.samples = samples;
    *out = wrap(std::move(p));
  });
}

long passloc_pmf_offset(const passloc_pmf* p) { return p ? p->rep.offset : 0; }
size_t passloc_pmf_size(const passloc_pmf* p) { return p ? p->rep.values.size() : 0; }
const double* passloc_pmf_values(const passloc_pmf* p) { return p ? p->rep.values.data() : nullptr; }
double passloc_pmf_tail_bound(const passloc_pmf* p) { return p ? p->rep.tail_bound : 0; }

int passloc_pmf_csv(const passloc_pmf* p, long k_min, long k_max, char** out) {
  return guard([&] {
    need(p, "pmf");
    need(out, "out");
    *out = dup(pmf_to_csv(p->rep, k_min, k_max));
  });
}

int passloc_pmf_meta(const passloc_pmf* p, char** out) {
  return guard([&] {
    need(p, "pmf");
    need(out, "out");
    *out = dup(pmf_meta_json(p->rep));
  });
}

int passloc_pmf_bell(const passloc_pmf* p, int n_max, double trunc_rel, int* passed, char** report) {
  return guard([&] {
    need(p, "pmf");
    BellReport r = check_bell(seq_from_pmf(p->rep, trunc_rel), n_max);
    if (passed) *passed = r.ok ? 1 : 0;
    if (report) {
      std::string s = "{\n  \"ok\": " + std::string(r.ok ? "true" : "false") + ",\n  \"levels\": [";
      for (size_t i = 0; i < r.levels.size(); ++i) {
        const auto& l = r.levels[i];
        s += (i ? ", " : "") + std::string("{\"n\": ") + std::to_string(l.n) +
             ", \"sign_changes\": " + std::to_string(l.changes) + "}";
      }
      s += "]\n}";
      *report = dup(s);
    }
  });
}

void passloc_pmf_free(passloc_pmf* p) { delete p; }

int passloc_compare(const passloc_pmf* p, const passloc_pmf* q, double* tv, char** report) {
  return guard([&] {
    need(p, "p");
    need(q, "q");
    Comparison c = compare_dists(p->rep, q->rep);
    if (tv) *tv = c.tv;
    if (report) *report = dup(comparison_json(c));
  });
}

int passloc_verify(const passloc_spec* s, int y, int b, int n_max, int* passed, char** report) {
  return guard([&] {
    need(s, "spec");
    Report r = verify_report(s->rep, y, b, n_max);
    if (passed) *passed = r.ok ? 1 : 0;
    if (report) *report = dup(r.json);
  });
}

int passloc_decompose(const passloc_spec* s, int y, int b, int* passed, char** report) {
  return guard([&] {
    need(s, "spec");
    Report r = decomposition_report(s->rep, y, b);
    if (passed) *passed = r.ok ? 1 : 0;
    if (report) *report = dup(r.json);
  });
}

int passloc_example(const char* name, const char* q, int y, int* passed, char** report) {
  return guard([&] {
    need(name, "name");
    Report r = example_report(name, parse_probability(q ? q : "1/2"), y);
    if (passed) *passed = r.ok ? 1 : 0;
    if (report) *report = dup(r.json);
  });
}

}  // extern "C"
