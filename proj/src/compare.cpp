#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "passloc/oracle.hpp"

namespace passloc {

Comparison compare_dists(const Pmf& p, const Pmf& q) {
  Comparison c;
  long lo = std::min(p.offset, q.offset), hi = std::max(p.end(), q.end());
  for (long k = lo; k < hi; ++k) {
    double d = std::abs(p.at(k) - q.at(k));
    c.tv += d;
    c.sup = std::max(c.sup, d);
  }
  c.tv /= 2;

  const Pmf* emp = p.samples > 0 ? &p : (q.samples > 0 ? &q : nullptr);
  if (!emp) return c;
  const Pmf* ref = emp == &p ? &q : &p;
  double n = static_cast<double>(emp->samples);
  double obs = 0, exp = 0, stat = 0;
  int bins = 0;
  for (long k = lo; k < hi; ++k) {
    obs += emp->at(k) * n;
    exp += ref->at(k) * n;
    if (exp >= 5) {
      stat += (obs - exp) * (obs - exp) / exp;
      ++bins;
      obs = exp = 0;
    }
  }
  if (exp > 0 && bins > 0) {
    // leftover joins the last bin approximately
    stat += (obs - exp) * (obs - exp) / std::max(exp, 5.0);
  }
  c.chi2 = stat;
  c.chi2_dof = std::max(bins - 1, 0);
  if (c.chi2_dof > 0) {
    boost::math::chi_squared dist(c.chi2_dof);
    c.chi2_pvalue = boost::math::cdf(boost::math::complement(dist, stat));
  }
  return c;
}

}  // namespace passloc
