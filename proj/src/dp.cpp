#include <algorithm>
#include <array>
#include <map>

#include "moves.hpp"
#include "passloc/error.hpp"
#include "passloc/oracle.hpp"

namespace passloc {

mpq_class level_chain_hitting(const WalkSpec& spec, int y, int b) {
  if (y < 1 || b <= y) throw Error(Errc::DegenerateQuery, "need 1 <= y < b");
  // h_j = d_j h_{j-1} + u_j h_{j+1}, h_0 = 1, h_b = 0; h_j = a_j + c_j h_{j+1}
  std::vector<mpq_class> a(static_cast<size_t>(b)), c(static_cast<size_t>(b));
  mpq_class ap = 1, cp = 0;
  for (int j = 1; j < b; ++j) {
    const ProbRow& r = spec.row(j);
    mpq_class up = spec.kind == Lattice::standard ? r[2] : r[1] + r[2];
    mpq_class dn = spec.kind == Lattice::standard ? r[4] : r[3] + r[4];
    mpq_class tot = up + dn;
    up /= tot;
    dn /= tot;
    mpq_class den = 1 - dn * cp;
    a[static_cast<size_t>(j)] = dn * ap / den;
    c[static_cast<size_t>(j)] = up / den;
    ap = a[static_cast<size_t>(j)];
    cp = c[static_cast<size_t>(j)];
  }
  mpq_class h = 0;
  for (int j = b - 1; j >= y; --j) h = a[static_cast<size_t>(j)] + c[static_cast<size_t>(j)] * h;
  return h;
}

namespace {

template <class T>
double to_d(const T& v) {
  if constexpr (std::is_same_v<T, double>) return v;
  else return v.get_d();
}

template <class T>
DpResult run(const WalkSpec& spec, int y, long b, const DpOptions& opt) {
  detail::MoveTable mt = detail::MoveTable::build(spec.kind, y);
  // per-level probabilities in T
  auto probs = [&](long lvl) {
    const ProbRow& r = spec.row(static_cast<int>(lvl));
    std::array<T, 4> p;
    for (int i = 0; i < 4; ++i) {
      if constexpr (std::is_same_v<T, double>) p[static_cast<size_t>(i)] = r[i + 1].get_d();
      else p[static_cast<size_t>(i)] = r[i + 1];
    }
    return p;
  };
  std::map<long, std::array<T, 4>> pcache;
  auto prob_at = [&](long lvl) -> const std::array<T, 4>& {
    auto it = pcache.find(lvl);
    if (it == pcache.end()) it = pcache.emplace(lvl, probs(lvl)).first;
    return it->second;
  };

  // grid[l - 1][x + n] at step n
  std::vector<std::vector<T>> grid(static_cast<size_t>(y));
  for (auto& row : grid) row.assign(1, T(0));
  grid[static_cast<size_t>(y - 1)][0] = T(1);
  std::map<long, T> absorbed;
  T upper = T(0), alive = T(1);
  long n = 0;
  while (to_d(alive) > opt.tail_cap) {
    if (n >= opt.max_steps)
      throw Error(Errc::HorizonExceeded, "unabsorbed mass " + std::to_string(to_d(alive)) + " after " +
                                             std::to_string(n) + " steps");
    size_t levels = grid.size();
    size_t top = b > 0 ? static_cast<size_t>(b - 1) : levels + 1;
    std::vector<std::vector<T>> next(std::min(top, levels + 1));
    size_t w = static_cast<size_t>(2 * (n + 1) + 1);
    for (auto& row : next) row.assign(w, T(0));
    alive = T(0);
    for (size_t li = 0; li < levels; ++li) {
      long lvl = static_cast<long>(li) + 1;
      const auto& row = grid[li];
      const auto& p = prob_at(lvl);
      const detail::Move* mv = mt.at(lvl);
      for (size_t xi = 0; xi < row.size(); ++xi) {
        const T& m = row[xi];
        if (m == 0) continue;
        long x = static_cast<long>(xi) - n;
        for (int i = 0; i < 4; ++i) {
          if (p[static_cast<size_t>(i)] == 0) continue;
          T q = m * p[static_cast<size_t>(i)];
          long nl = lvl + mv[i].dy, nx = x + mv[i].dx;
          if (nl == 0) {
            absorbed[mt.index_of(nx)] += q;
          } else if (b > 0 && nl == b) {
            upper += q;
          } else {
            next[static_cast<size_t>(nl - 1)][static_cast<size_t>(nx + n + 1)] += q;
            alive += q;
          }
        }
      }
    }
    while (!next.empty() && std::all_of(next.back().begin(), next.back().end(), [](const T& v) { return v == 0; }) &&
           next.size() > static_cast<size_t>(y))
      next.pop_back();
    grid.swap(next);
    ++n;
  }

  DpResult r;
  r.steps = n;
  r.unabsorbed = to_d(alive);
  r.absorbed_upper = to_d(upper);
  Pmf& p = r.pmf;
  p.index = spec.kind == Lattice::standard ? "raw" : "rescaled";
  if (b > 0) p.b = b;
  if (!absorbed.empty()) {
    p.offset = absorbed.begin()->first;
    long hi = absorbed.rbegin()->first;
    p.values.assign(static_cast<size_t>(hi - p.offset + 1), 0.0);
    if constexpr (!std::is_same_v<T, double>) r.exact.assign(p.values.size(), mpq_class(0));
    for (const auto& [k, v] : absorbed) {
      p.values[static_cast<size_t>(k - p.offset)] = to_d(v);
      if constexpr (!std::is_same_v<T, double>) r.exact[static_cast<size_t>(k - p.offset)] = v;
    }
  }
  if constexpr (!std::is_same_v<T, double>) {
    r.unabsorbed_exact = alive;
    r.absorbed_upper_exact = upper;
  }
  p.tail_bound = r.unabsorbed;
  p.total = p.mass() + r.unabsorbed;
  p.lo_exact = p.hi_exact = r.unabsorbed == 0;
  p.abs_err = p.noise = 1e-16 * static_cast<double>(n);
  return r;
}

}  // namespace

DpResult dp_pmf(const WalkSpec& spec, int y, long b, const DpOptions& opt) {
  require_valid(spec);
  if (y < 1) throw Error(Errc::DegenerateQuery, "start level y must be at least 1");
  if (b != 0 && b <= y) throw Error(Errc::DegenerateQuery, "upper barrier b must exceed y");
  if (b == 0 && !spec.has_default() && spec.top_listed_level() < y + opt.max_steps)
    throw Error(Errc::InvalidSpec, "b = infinity needs default rows");
  return opt.exact ? run<mpq_class>(spec, y, b, opt) : run<double>(spec, y, b, opt);
}

}  // namespace passloc
