#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "passloc/oracle.hpp"
#include "passloc/passage.hpp"
#include "support.hpp"

using namespace passloc;
using testing_support::row;

namespace {

LaurentPoly w() { return LaurentPoly::monomial(1, 1); }
LaurentPoly winv() { return LaurentPoly::monomial(1, -1); }

double tv(const Pmf& a, const Pmf& b) { return compare_dists(a, b).tv; }

}  // namespace

TEST(StripLower, SymmetricDiagonal) {
  StripChain c = strip_lower(symmetric_diagonal(), 3);
  EXPECT_EQ(c.at(0), LaurentPoly(1));
  EXPECT_EQ(c.at(1), LaurentPoly(1));
  EXPECT_EQ(c.at(2), LaurentPoly(1) - (w() + 2 + winv()) * mpq_class(1, 16));
  EXPECT_EQ(c.at(3), LaurentPoly(1) - (w() + 2 + winv()) * mpq_class(1, 8));
  EXPECT_EQ(c.form(3).A(), 1);
}

TEST(StripUpper, Boundary) {
  StripChain c = strip_upper(symmetric_diagonal(), 4, 6);
  EXPECT_EQ(c.at(7), LaurentPoly());
  EXPECT_EQ(c.at(6), LaurentPoly(1));
  EXPECT_EQ(c.at(5), LaurentPoly(1));
  EXPECT_EQ(c.at(4 + 1), LaurentPoly(1));
  // G~_{b-1} = 1, so the first nontrivial mirror polynomial sits at b - 2
  StripChain d = strip_upper(symmetric_diagonal(), 3, 6);
  EXPECT_EQ(d.at(5), LaurentPoly(1));
  EXPECT_EQ(d.at(4), LaurentPoly(1) - (w() + 2 + winv()) * mpq_class(1, 16));
}

// One step below the barrier the down-passage function is the bare two-point factor.
TEST(StripUpper, OneStepBelowBarrier) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    WalkSpec s = testing_support::random_diagonal(seed, 8);
    int b = 6;
    StripChain c = strip_upper(s, 3, b);
    // D_{b-1} G~_b / G~_{b-1}
    EXPECT_EQ(c.at(b - 1), LaurentPoly(1));
    LaurentPoly d = LaurentPoly::three_term(s.row(b - 1)[3], s.row(b - 1)[4], 0);
    PassageGF g = passage_gf(translate_levels(s, b - 2), 1, 2);
    EXPECT_EQ(g.numerator * LaurentPoly(1), d * g.denominator);
  }
}

TEST(StripLower, RandomChainsCertify) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    WalkSpec s = testing_support::random_diagonal(seed, 13);
    StripChain c = strip_lower(s, 12);
    for (int j = 1; j < 12; ++j) {
      EXPECT_TRUE(interlaces(c.form(j), c.form(j + 1)));
      EXPECT_LE(c.form(j).A(), j / 2);
      EXPECT_LE(c.form(j).B(), j / 2);
    }
  }
}

TEST(PassageGF, InitialCondition) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    WalkSpec s = testing_support::random_diagonal(seed, 4);
    PassageGF g = passage_gf(s, 1, 2);
    LaurentPoly want = LaurentPoly::three_term(s.row(1)[3], s.row(1)[4], 0);
    EXPECT_EQ(g.numerator, want * g.denominator);
    Pmf p = pmf_extract(g);
    EXPECT_NEAR(p.at(-1), s.row(1)[3].get_d(), 1e-16);
    EXPECT_NEAR(p.at(0), s.row(1)[4].get_d(), 1e-16);
    EXPECT_EQ(p.values.size(), 2u);
    EXPECT_EQ(g.value_at_one, s.row(1)[3] + s.row(1)[4]);
    DecompositionReport r = decompose(g);
    EXPECT_EQ(r.geometric_count, 0);
    EXPECT_EQ(r.reflected_geometric_count, 0);
    int nondeg = s.row(1)[3] != 0 && s.row(1)[4] != 0;
    EXPECT_EQ(r.reflected_two_point_count, nondeg);
    EXPECT_TRUE(r.bounds_ok);
  }
}

TEST(PassageGF, GamblersRuin) {
  EXPECT_EQ(passage_gf(symmetric_diagonal(), 1, 3).value_at_one, mpq_class(2, 3));
  EXPECT_EQ(passage_gf(symmetric_diagonal(), 5, 8).value_at_one, mpq_class(3, 8));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    WalkSpec s = testing_support::random_diagonal(seed, 10);
    for (int y = 1; y <= 4; ++y)
      for (int b = y + 1; b <= y + 4; ++b) EXPECT_EQ(passage_gf(s, y, b).value_at_one, level_chain_hitting(s, y, b));
  }
}

TEST(PassageGF, Errors) {
  EXPECT_ERRC(passage_gf(symmetric_diagonal(), 3, 3), Errc::DegenerateQuery);
  EXPECT_ERRC(passage_gf(symmetric_diagonal(), 0, 3), Errc::DegenerateQuery);
  EXPECT_ERRC(passage_gf(symmetric_standard(), 1, 3), Errc::InvalidArgument);
  WalkSpec s = symmetric_diagonal();
  s.rows[2] = row("1/4", "1/4", "1/4", "1/5");
  EXPECT_ERRC(passage_gf(s, 1, 3), Errc::InvalidSpec);
  WalkSpec r = symmetric_diagonal();
  r.rows[2] = row("0", "0", "1/2", "1/2");
  r.reflecting_levels = {2};
  EXPECT_ERRC(passage_gf(r, 4, 6), Errc::ReflectingLevelInStrip);
}

TEST(PassageGF, ValueMatchesContinuedFraction) {
  WalkSpec s = testing_support::random_diagonal(42, 10);
  PassageGF g = passage_gf(s, 3, 7);
  for (double t : {0.3, 1.7, 2.9}) {
    std::complex<double> z = std::polar(1.0, t);
    std::complex<double> a = evaluate(g.numerator, z) / evaluate(g.denominator, z);
    EXPECT_LT(std::abs(a - passage_value(s, 3, 7, z)), 1e-13);
  }
}

TEST(PmfExtract, MatchesDp) {
  Pmf a = pmf_extract(passage_gf(symmetric_diagonal(), 2, 3));
  DpResult d = dp_pmf(symmetric_diagonal(), 2, 3);
  EXPECT_LT(tv(a, d.pmf), 1e-9);
  EXPECT_GE(a.min_before_clamp, -1e-15);
  EXPECT_NEAR(a.mass() + a.tail_bound, a.total, 1e-9);
  EXPECT_LT(a.fft_check, 1e-8);
}

TEST(PmfExtract, RandomSpecsAgainstDp) {
  for (std::uint64_t seed = 7; seed < 12; ++seed) {
    WalkSpec s = testing_support::random_diagonal(seed, 10);
    for (int y = 1; y <= 3; ++y) {
      Pmf a = pmf_extract(passage_gf(s, y, y + 2));
      Pmf d = dp_pmf(s, y, y + 2).pmf;
      EXPECT_LT(tv(a, d), 1e-9) << "seed " << seed << " y " << y;
      EXPECT_NEAR(a.mass() + a.tail_bound, level_chain_hitting(s, y, y + 2).get_d(), 1e-9);
    }
  }
}

TEST(Decompose, RandomSpecsWithinBounds) {
  for (std::uint64_t seed = 500; seed < 520; ++seed) {
    WalkSpec s = testing_support::random_diagonal(seed, 12);
    for (int y = 1; y <= 8; ++y) {
      DecompositionReport r = decompose(passage_gf(s, y, y + 3));
      EXPECT_TRUE(r.bounds_ok) << "seed " << seed << " y " << y;
      EXPECT_LE(r.amcm.minus_mass() - r.amcm.plus_mass(), Real(1e-10) * r.amcm.plus_mass());
    }
  }
}

TEST(Decompose, FactorsRebuildPmf) {
  WalkSpec s = testing_support::random_diagonal(3, 10);
  PassageGF g = passage_gf(s, 4, 7);
  Pmf p = pmf_extract(g);
  std::vector<Real> r = reconstruct_from_factors(g, p.offset, p.end() - 1);
  double d = 0;
  for (size_t i = 0; i < r.size(); ++i) d += std::abs(r[i].convert_to<double>() - p.values[i]);
  EXPECT_LT(d / 2, 1e-8);
}

TEST(Standard, InitialRow) {
  StripChain c = strip_lower_standard(symmetric_standard(), 1);
  EXPECT_EQ(c.at(1), LaurentPoly::three_term(-1, 4, -1));
  ASSERT_EQ(c.form(1).A(), 1);
  EXPECT_NEAR(c.form(1).alphas[0].approx(), 2 - std::sqrt(3.0), 1e-15);
  WalkSpec s = symmetric_standard();
  s.rows[1] = row("1/5", "1/10", "3/10", "2/5");
  PassageGF g = passage_gf_standard(s, 1, 2);
  LaurentPoly den = LaurentPoly::three_term(mpq_class(-3, 10), 1, mpq_class(-1, 5));
  EXPECT_EQ(g.numerator * den, LaurentPoly(mpq_class(2, 5)) * g.denominator);
  // horizontal moves do not change the level: p4 / (p2 + p4)
  EXPECT_EQ(g.value_at_one, mpq_class(4, 5));
}

TEST(Standard, MatchesDp) {
  WalkSpec s = symmetric_standard();
  s.rows[2] = row("1/8", "3/8", "1/4", "1/4");
  for (int y = 1; y <= 3; ++y) {
    Pmf a = pmf_extract(passage_gf_standard(s, y, y + 2));
    Pmf d = dp_pmf(s, y, y + 2).pmf;
    EXPECT_LT(tv(a, d), 1e-9);
    EXPECT_EQ(a.index, "raw");
  }
}

TEST(Honeycomb, AnyDispatchAndDp) {
  WalkSpec h = uniform_honeycomb();
  for (int y = 1; y <= 4; ++y) {
    PassageGF g = passage_gf_any(h, y, y + 3);
    EXPECT_EQ(g.kind, Lattice::honeycomb);
    Pmf a = pmf_extract(g);
    Pmf d = dp_pmf(h, y, y + 3).pmf;
    EXPECT_LT(tv(a, d), 1e-9) << "y " << y;
  }
}

TEST(Limit, BondessonCatalan) {
  Pmf p = pmf_limit(bondesson(mpq_class(1, 2)), 1);
  EXPECT_NEAR(p.at(0), 0.5, 1e-10);
  EXPECT_NEAR(p.at(1), 0.125, 1e-10);
  EXPECT_NEAR(p.at(2), 0.0625, 1e-10);
  EXPECT_NEAR(p.at(3), 5.0 / 128, 1e-10);
  EXPECT_EQ(p.at(-1), 0);
  EXPECT_FALSE(p.b.has_value());
}

TEST(Limit, BondessonClosedForm) {
  double q = 0.25;
  Pmf p = pmf_limit(bondesson(mpq_class(1, 4)), 1);
  auto f = [&](std::complex<double> w) { return (1.0 - std::sqrt(1.0 - 4 * q * (1 - q) * w)) / (2 * q * w); };
  std::vector<double> c = fft_coefficients(f, 12);
  double worst = 0;
  for (long k = -2048; k < 2048; ++k) worst = std::max(worst, std::abs(c[static_cast<size_t>(k + 2048)] - p.at(k)));
  EXPECT_LT(worst, 1e-12);
  EXPECT_NEAR(p.mass() + p.tail_bound, 1.0, 1e-12);
}

TEST(Limit, DefectiveMass) {
  Pmf p = pmf_limit(bondesson(mpq_class(3, 4)), 1);
  EXPECT_NEAR(p.mass(), 1.0 / 3, 1e-8);
  EXPECT_NEAR(limit_hitting_probability(bondesson(mpq_class(3, 4)), 1), 1.0 / 3, 1e-14);
}

TEST(Limit, ClosureAgreesWithDoubling) {
  WalkSpec s = bondesson(mpq_class(1, 3));
  s.rows[1] = row("1/5", "1/5", "1/5", "2/5");
  s.rows[2] = row("1/10", "1/5", "1/5", "1/2");
  Pmf a = pmf_limit(s, 2);
  Pmf b = pmf_limit_doubling(s, 2, 1e-12, 1 << 12);
  EXPECT_LT(tv(a, b), 1e-9);
}

TEST(Limit, NoConvergence) {
  LimitOptions o;
  o.method = LimitOptions::Method::doubling;
  o.b_max = 4;
  EXPECT_ERRC(pmf_limit(symmetric_diagonal(), 3, o), Errc::NoConvergence);
  LimitOptions c;
  c.max_log2 = 12;
  c.tol = 1e-15;
  EXPECT_ERRC(pmf_limit(bondesson(mpq_class(1, 2)), 1, c), Errc::NoConvergence);
}

TEST(Limit, StandardClosedForm) {
  Pmf p = pmf_limit(symmetric_standard(), 1);
  auto f = [](std::complex<double> z) {
    double s = std::arg(z), a = 2 - std::cos(s);
    return std::complex<double>(a - std::sqrt(a * a - 1), 0);
  };
  std::vector<double> c = fft_coefficients(f, 14);
  long n = 1 << 14;
  double worst = 0;
  for (long k = -n / 8; k < n / 8; ++k) worst = std::max(worst, std::abs(c[static_cast<size_t>(k + n / 2)] - p.at(k)));
  EXPECT_LT(worst, 1e-8);
}

TEST(Barrier, ReflectionAtStart) {
  WalkSpec s = symmetric_diagonal();
  s.rows[3] = row("0", "0", "1/2", "1/2");
  s.reflecting_levels = {3};
  Pmf p = barrier_pmf(s, 3);
  Pmf q = pmf_extract(passage_gf(s, 3, 4));
  EXPECT_LT(tv(p, q), 1e-15);
  EXPECT_NEAR(p.mass(), 1.0, 1e-12);
  EXPECT_LT(tv(p, dp_pmf(s, 3, 0).pmf), 1e-9);
}

TEST(Barrier, ReflectionAboveStart) {
  WalkSpec s = symmetric_diagonal();
  s.rows[5] = row("0", "0", "1/3", "2/3");
  s.reflecting_levels = {5};
  Pmf p = barrier_pmf(s, 2);
  EXPECT_LT(tv(p, pmf_extract(passage_gf(s, 2, 6))), 1e-14);
  EXPECT_LT(tv(p, dp_pmf(s, 2, 0).pmf), 1e-9);
}

TEST(Barrier, ReflectionBelowStart) {
  // downward drift so the unbarriered DP oracle terminates
  WalkSpec s = symmetric_diagonal();
  s.default_even = s.default_odd = row("1/8", "1/8", "3/8", "3/8");
  s.rows[2] = row("0", "0", "1/2", "1/2");
  s.rows[1] = row("1/4", "1/4", "1/4", "1/4");
  s.reflecting_levels = {2};
  Pmf p = barrier_pmf(s, 4);
  EXPECT_LT(tv(p, dp_pmf(s, 4, 0).pmf), 1e-9);
}

TEST(Barrier, TwoBarriers) {
  WalkSpec s = symmetric_diagonal();
  s.rows[2] = row("0", "0", "1/3", "2/3");
  s.rows[6] = row("0", "0", "1/2", "1/2");
  s.reflecting_levels = {2, 6};
  Pmf p = barrier_pmf(s, 4);
  EXPECT_LT(tv(p, dp_pmf(s, 4, 0).pmf), 1e-9);
  EXPECT_NEAR(p.mass(), 1.0, 1e-12);
}

TEST(Convolve, TwoPoint) {
  Pmf a;
  a.offset = -1;
  a.values = {0.25, 0.75};
  Pmf c = convolve_pmf(a, a);
  EXPECT_EQ(c.offset, -2);
  ASSERT_EQ(c.values.size(), 3u);
  EXPECT_DOUBLE_EQ(c.values[0], 0.0625);
  EXPECT_DOUBLE_EQ(c.values[1], 0.375);
  EXPECT_DOUBLE_EQ(c.values[2], 0.5625);
}
