#include <atomic>
#include <chrono>
#include <map>
#include <random>
#include <thread>

#include "moves.hpp"
#include "passloc/error.hpp"
#include "passloc/oracle.hpp"

namespace passloc {

namespace {

struct Row {
  std::uint64_t c[3];  // cumulative thresholds out of 2^32
  int dx[4];
  int dy[4];
};

Row make_row(const ProbRow& r, const detail::Move* mv) {
  Row out{};
  mpq_class cum = 0;
  const mpz_class scale = mpz_class(1) << 32;
  for (int i = 0; i < 3; ++i) {
    cum += r[i + 1];
    mpz_class t = mpz_class(cum * scale);  // truncates
    out.c[i] = t.get_ui();
    if (cum >= 1) out.c[i] = std::uint64_t{1} << 32;
  }
  for (int i = 0; i < 4; ++i) {
    out.dx[i] = mv[i].dx;
    out.dy[i] = mv[i].dy;
  }
  return out;
}

struct Tally {
  std::map<long, long> counts;
  long censored = 0;
  long upper = 0;
  long long steps = 0;
};

}  // namespace

McResult mc_sample(const WalkSpec& spec, int y, long b, const McOptions& opt) {
  require_valid(spec);
  if (y < 1) throw Error(Errc::DegenerateQuery, "start level y must be at least 1");
  if (b != 0 && b <= y) throw Error(Errc::DegenerateQuery, "upper barrier b must exceed y");
  if (opt.samples <= 0) throw Error(Errc::InvalidArgument, "sample count must be positive");
  detail::MoveTable mt = detail::MoveTable::build(spec.kind, y);

  int ntab = std::max(y, spec.top_listed_level()) + 2;
  if (!spec.reflecting_levels.empty()) ntab = std::max(ntab, *spec.reflecting_levels.rbegin() + 2);
  if (b > 0) ntab = std::min<long>(ntab, b);
  std::vector<Row> tab(static_cast<size_t>(ntab));
  for (int l = 1; l < ntab; ++l) tab[static_cast<size_t>(l)] = make_row(spec.row(l), mt.at(l));
  Row def[2]{};
  if (spec.has_default()) {
    def[0] = make_row(*spec.default_even, mt.at(0));
    def[1] = make_row(*spec.default_odd, mt.at(1));
  } else if (b == 0 || b > ntab) {
    throw Error(Errc::InvalidSpec, "unbounded walk needs default rows");
  }

  unsigned nthreads = opt.threads > 0 ? static_cast<unsigned>(opt.threads) : std::max(1u, std::thread::hardware_concurrency());
  const long chunk = 4096;
  long nchunks = (opt.samples + chunk - 1) / chunk;
  std::atomic<long> next{0};
  std::vector<Tally> tallies(nthreads);
  const std::uint64_t seed = opt.seed;

  auto worker = [&](unsigned t) {
    Tally& tl = tallies[t];
    for (long ci = next++; ci < nchunks; ci = next++) {
      long i0 = ci * chunk, i1 = std::min(opt.samples, i0 + chunk);
      for (long i = i0; i < i1; ++i) {
        auto ui = static_cast<std::uint64_t>(i);
        std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(ui), static_cast<std::uint32_t>(ui >> 32)};
        std::mt19937_64 gen(ss);
        long lvl = y, x = 0, steps = 0;
        std::uint64_t bits = 0;
        int have = 0;
        while (true) {
          if (steps == opt.step_cap) {
            ++tl.censored;
            break;
          }
          if (have == 0) {
            bits = gen();
            have = 2;
          }
          std::uint64_t u = bits & 0xffffffffu;
          bits >>= 32;
          --have;
          const Row& row = lvl < ntab ? tab[static_cast<size_t>(lvl)] : def[lvl & 1];
          int idx = (u >= row.c[0]) + (u >= row.c[1]) + (u >= row.c[2]);
          x += row.dx[idx];
          lvl += row.dy[idx];
          ++steps;
          if (lvl == 0) {
            ++tl.counts[mt.index_of(x)];
            break;
          }
          if (lvl == b) {
            ++tl.upper;
            break;
          }
        }
        tl.steps += steps;
      }
    }
  };

  auto t0 = std::chrono::steady_clock::now();
  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  auto t1 = std::chrono::steady_clock::now();

  McResult r;
  r.samples = opt.samples;
  r.seed = opt.seed;
  r.seconds = std::chrono::duration<double>(t1 - t0).count();
  std::map<long, long> counts;
  for (const auto& tl : tallies) {
    for (const auto& [k, c] : tl.counts) counts[k] += c;
    r.censored += tl.censored;
    r.absorbed_upper += tl.upper;
    r.steps += tl.steps;
  }
  Pmf& p = r.pmf;
  p.index = spec.kind == Lattice::standard ? "raw" : "rescaled";
  p.samples = opt.samples;
  if (b > 0) p.b = b;
  if (!counts.empty()) {
    p.offset = counts.begin()->first;
    p.values.assign(static_cast<size_t>(counts.rbegin()->first - p.offset + 1), 0.0);
    for (const auto& [k, c] : counts) {
      p.values[static_cast<size_t>(k - p.offset)] = static_cast<double>(c) / static_cast<double>(opt.samples);
      r.absorbed += c;
    }
  }
  p.tail_bound = static_cast<double>(r.censored) / static_cast<double>(opt.samples);
  return r;
}

}  // namespace passloc
