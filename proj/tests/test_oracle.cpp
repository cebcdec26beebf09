#include <gtest/gtest.h>

#include <cmath>

#include "passloc/oracle.hpp"
#include "passloc/passage.hpp"
#include "support.hpp"

using namespace passloc;

namespace {

Pmf make_pmf(long offset, std::vector<double> v) {
  Pmf p;
  p.offset = offset;
  p.values = std::move(v);
  return p;
}

}  // namespace

TEST(Dp, OneStepStrip) {
  // from level 1 with b = 2 every walk stops after one step
  DpOptions o;
  o.exact = true;
  DpResult r = dp_pmf(symmetric_diagonal(), 1, 2, o);
  EXPECT_EQ(r.steps, 1);
  EXPECT_EQ(r.absorbed_upper_exact, mpq_class(1, 2));
  EXPECT_EQ(r.unabsorbed_exact, 0);
  ASSERT_EQ(r.pmf.offset, -1);
  ASSERT_EQ(r.exact.size(), 2u);
  EXPECT_EQ(r.exact[0], mpq_class(1, 4));
  EXPECT_EQ(r.exact[1], mpq_class(1, 4));
  EXPECT_TRUE(r.pmf.lo_exact && r.pmf.hi_exact);
}

TEST(Dp, ExactMassConservation) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    WalkSpec s = testing_support::random_diagonal(seed, 5);
    DpOptions o;
    o.exact = true;
    o.tail_cap = 1e-4;
    DpResult r = dp_pmf(s, 2, 4, o);
    EXPECT_GT(r.unabsorbed_exact, 0);
    mpq_class total = r.unabsorbed_exact + r.absorbed_upper_exact;
    for (const auto& v : r.exact) total += v;
    EXPECT_EQ(total, 1) << "seed " << seed;
  }
}

TEST(Dp, MatchesAnalyticStrip) {
  WalkSpec s = symmetric_diagonal();
  Pmf a = pmf_extract(passage_gf(s, 2, 4));
  DpResult d = dp_pmf(s, 2, 4);
  EXPECT_LT(compare_dists(a, d.pmf).tv, 1e-10);
  EXPECT_NEAR(d.absorbed_upper, 0.5, 1e-10);
  EXPECT_NEAR(d.pmf.mass(), 0.5, 1e-10);
}

TEST(Dp, Errors) {
  EXPECT_ERRC(dp_pmf(symmetric_diagonal(), 0, 4), Errc::DegenerateQuery);
  EXPECT_ERRC(dp_pmf(symmetric_diagonal(), 3, 3), Errc::DegenerateQuery);
}

TEST(MonteCarlo, DeterministicAcrossThreads) {
  WalkSpec s = bondesson(mpq_class(1, 2));
  McOptions o;
  o.samples = 20000;
  o.step_cap = 5000;
  o.seed = 77;
  o.threads = 1;
  McResult a = mc_sample(s, 1, 0, o);
  o.threads = 3;
  McResult b = mc_sample(s, 1, 0, o);
  EXPECT_EQ(a.pmf.offset, b.pmf.offset);
  EXPECT_EQ(a.pmf.values, b.pmf.values);
  EXPECT_EQ(a.censored, b.censored);
  EXPECT_EQ(a.steps, b.steps);
  o.seed = 78;
  McResult c = mc_sample(s, 1, 0, o);
  EXPECT_NE(a.pmf.values, c.pmf.values);
}

TEST(MonteCarlo, TransientWalkIsCensored) {
  // q = 3/4 drifts upward: only a third of the walks ever return
  McOptions o;
  o.samples = 30000;
  o.step_cap = 2000;
  o.seed = 5;
  McResult r = mc_sample(bondesson(mpq_class(3, 4)), 1, 0, o);
  EXPECT_EQ(r.absorbed + r.censored, r.samples);
  double frac = static_cast<double>(r.absorbed) / static_cast<double>(r.samples);
  EXPECT_NEAR(frac, 1.0 / 3.0, 0.015);
  EXPECT_NEAR(r.pmf.tail_bound, 1 - frac, 1e-12);
}

TEST(MonteCarlo, AgreesWithDp) {
  WalkSpec s = symmetric_diagonal();
  McOptions o;
  o.samples = 200000;
  o.seed = 11;
  McResult m = mc_sample(s, 2, 5, o);
  DpResult d = dp_pmf(s, 2, 5);
  Comparison c = compare_dists(m.pmf, d.pmf);
  EXPECT_LT(c.tv, 0.01);
  EXPECT_GT(c.chi2_pvalue, 1e-4);
  EXPECT_NEAR(static_cast<double>(m.absorbed_upper) / o.samples, d.absorbed_upper, 0.005);
}

TEST(MonteCarlo, HoneycombNativeMatchesEmbedded) {
  WalkSpec h = uniform_honeycomb();
  McOptions o;
  o.samples = 200000;
  o.seed = 3;
  McResult m = mc_sample(h, 4, 7, o);
  Pmf a = pmf_extract(passage_gf_any(h, 4, 7));
  Comparison c = compare_dists(m.pmf, a);
  EXPECT_LT(c.tv, 0.01);
  EXPECT_GT(c.chi2_pvalue, 1e-4);
}

TEST(Compare, Examples) {
  Pmf p = make_pmf(0, {0.5, 0.5}), q = make_pmf(1, {0.5, 0.5});
  Comparison c = compare_dists(p, q);
  EXPECT_DOUBLE_EQ(c.tv, 0.5);
  EXPECT_DOUBLE_EQ(c.sup, 0.5);
  EXPECT_DOUBLE_EQ(compare_dists(p, p).tv, 0);
  EXPECT_DOUBLE_EQ(compare_dists(make_pmf(-3, {1}), make_pmf(3, {1})).tv, 1);
  // missing mass counts on one side only
  EXPECT_DOUBLE_EQ(compare_dists(make_pmf(0, {0.5}), make_pmf(0, {1})).tv, 0.25);
}

TEST(Compare, ChiSquare) {
  Pmf ref = make_pmf(0, {0.25, 0.25, 0.25, 0.25});
  Pmf emp = make_pmf(0, {0.25, 0.25, 0.25, 0.25});
  emp.samples = 1000;
  Comparison same = compare_dists(emp, ref);
  EXPECT_EQ(same.chi2_dof, 3);
  EXPECT_NEAR(same.chi2, 0, 1e-12);
  EXPECT_NEAR(same.chi2_pvalue, 1, 1e-12);
  Pmf off = make_pmf(0, {0.4, 0.1, 0.25, 0.25});
  off.samples = 1000;
  Comparison bad = compare_dists(off, ref);
  EXPECT_NEAR(bad.chi2, 180, 1e-9);
  EXPECT_LT(bad.chi2_pvalue, 1e-30);
}
