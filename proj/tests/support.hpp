#pragma once

#include <gtest/gtest.h>

#include <random>

#include "passloc/error.hpp"
#include "passloc/walks.hpp"

namespace testing_support {

#define EXPECT_ERRC(stmt, errc)                                          \
  do {                                                                   \
    try {                                                                \
      stmt;                                                              \
      ADD_FAILURE() << "expected " << passloc::errc_name(errc);          \
    } catch (const passloc::Error& e_) {                                 \
      EXPECT_EQ(e_.code(), errc) << e_.what();                           \
    }                                                                    \
  } while (0)

// Random row with denominator 24; both up and down moves possible.
inline passloc::ProbRow random_row(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 24);
  while (true) {
    int a = d(rng), b = d(rng), c = d(rng);
    int cuts[3] = {a, b, c};
    std::sort(cuts, cuts + 3);
    int w[4] = {cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], 24 - cuts[2]};
    if (w[0] + w[1] == 0 || w[2] + w[3] == 0) continue;
    passloc::ProbRow r;
    for (int i = 0; i < 4; ++i) r.p[static_cast<size_t>(i)] = mpq_class(w[i], 24);
    for (auto& v : r.p) v.canonicalize();
    return r;
  }
}

// Level-dependent diagonal walk with rows listed on 1..top and a random default.
inline passloc::WalkSpec random_diagonal(std::uint64_t seed, int top) {
  std::mt19937_64 rng(seed);
  passloc::WalkSpec s;
  s.kind = passloc::Lattice::diagonal;
  for (int y = 1; y <= top; ++y) s.rows[y] = random_row(rng);
  s.default_even = s.default_odd = random_row(rng);
  return s;
}

inline passloc::ProbRow row(const char* a, const char* b, const char* c, const char* d) {
  passloc::ProbRow r;
  r.p = {mpq_class(a, 10), mpq_class(b, 10), mpq_class(c, 10), mpq_class(d, 10)};
  for (auto& v : r.p) v.canonicalize();
  return r;
}

}  // namespace testing_support
