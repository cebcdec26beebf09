#pragma once

#include <string>

#include <gmpxx.h>

#include "passloc/oracle.hpp"
#include "passloc/passage.hpp"
#include "passloc/walks.hpp"

namespace passloc {

// "k,probability" rows with 17 significant digits; window applies when k_min <= k_max.
std::string pmf_to_csv(const Pmf& p, long k_min = 1, long k_max = 0);
Pmf pmf_from_csv(const std::string& text);
std::string pmf_meta_json(const Pmf& p);

struct Report {
  std::string json;
  bool ok = true;
};

std::string validation_json(const WalkSpec& spec, bool& ok);

// Certification, chain, bounds and bell-shape report. b = 0 means b = infinity.
Report verify_report(const WalkSpec& spec, int y, int b, int n_max);
Report decomposition_report(const WalkSpec& spec, int y, int b);
std::string comparison_json(const Comparison& c);
std::string mc_stats_json(const McResult& r);

// Built-in cross-checks: diag-symmetric, bondesson, standard-symmetric, honeycomb-uniform.
Report example_report(const std::string& name, const mpq_class& q, int y);

}  // namespace passloc
