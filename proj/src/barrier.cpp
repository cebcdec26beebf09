#include <algorithm>
#include <vector>

#include "passloc/error.hpp"
#include "passloc/passage.hpp"

namespace passloc {

namespace {

// The walk seen from level s: rows at or below s and barriers at or below s are dropped.
WalkSpec above(const WalkSpec& spec, int s) {
  WalkSpec t = translate_levels(spec, s);
  for (auto it = t.rows.begin(); it != t.rows.end();) it = it->first <= 0 ? t.rows.erase(it) : std::next(it);
  for (auto it = t.reflecting_levels.begin(); it != t.reflecting_levels.end();)
    it = *it <= 0 ? t.reflecting_levels.erase(it) : std::next(it);
  return t;
}

Pmf finite_factor(const WalkSpec& spec, int from, int to, int b) {
  WalkSpec t = above(spec, to);
  return pmf_extract(passage_gf(t, from - to, b - to), {});
}

}  // namespace

Pmf barrier_pmf(const WalkSpec& spec0, int y, const LimitOptions& opt) {
  require_valid(spec0);
  if (y < 1) throw Error(Errc::DegenerateQuery, "start level y must be at least 1");
  if (spec0.kind == Lattice::standard) throw Error(Errc::InvalidArgument, "standard walks have no reflecting levels");
  WalkSpec spec = spec0.kind == Lattice::honeycomb ? honeycomb_embed(spec0, y).diagonal : spec0;
  if (spec.reflecting_levels.empty()) return pmf_limit(spec, y, opt);

  std::vector<int> below;
  std::optional<int> over;
  for (int z : spec.reflecting_levels) {
    if (z < y) below.push_back(z);
    else if (!over) over = z;
  }
  std::sort(below.rbegin(), below.rend());

  int s = below.empty() ? 0 : below.front();
  Pmf acc;
  if (over) {
    acc = finite_factor(spec, y, s, *over + 1);
  } else {
    acc = pmf_limit(above(spec, s), y - s, opt);
  }
  for (size_t i = 0; i < below.size(); ++i) {
    int from = below[i];
    int to = i + 1 < below.size() ? below[i + 1] : 0;
    acc = convolve_pmf(acc, finite_factor(spec, from, to, from + 1));
  }
  // the barrier above caps the walk, so the product is the b = infinity law
  acc.b = std::nullopt;
  return acc;
}

}  // namespace passloc
