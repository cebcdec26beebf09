#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace passloc {

enum class Lattice { diagonal, standard, honeycomb };

const char* lattice_name(Lattice k);

// Diagonal/honeycomb: p1 NE, p2 NW, p3 SW, p4 SE. Standard: p1 E, p2 N, p3 W, p4 S.
struct ProbRow {
  std::array<mpq_class, 4> p;
  const mpq_class& operator[](int i) const { return p[static_cast<size_t>(i - 1)]; }
  mpq_class& operator[](int i) { return p[static_cast<size_t>(i - 1)]; }
  bool operator==(const ProbRow& o) const { return p == o.p; }
};

struct WalkSpec {
  Lattice kind = Lattice::diagonal;
  std::map<int, ProbRow> rows;
  // Rows for unlisted levels, by parity of the level. A single default fills both.
  std::optional<ProbRow> default_even;
  std::optional<ProbRow> default_odd;
  std::set<int> reflecting_levels;

  bool has_row(int y) const;
  const ProbRow& row(int y) const;  // throws InvalidSpec when missing
  int top_listed_level() const;     // largest listed level, 0 when none
  bool has_default() const { return default_even.has_value() && default_odd.has_value(); }
  bool operator==(const WalkSpec& o) const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const WalkSpec& spec);
void require_valid(const WalkSpec& spec);  // throws InvalidSpec listing the violations

// probs'(y) = probs(y + shift)
WalkSpec translate_levels(const WalkSpec& spec, int shift);

// Honeycomb vertex (x, y) to the diagonal lattice: (x - floor(y/2), y).
std::pair<long, long> honeycomb_vertex_map(long x, long y);

struct HoneycombEmbedding {
  WalkSpec diagonal;
  long shift;  // floor(y/2) - floor(a/2)
};

HoneycombEmbedding honeycomb_embed(const WalkSpec& spec, int y = 0, int a = 0);

long floor_div(long a, long b);

// Exact probability from "p/q", a decimal string, or an integer string.
mpq_class parse_probability(const std::string& text);

WalkSpec parse_spec_json(const std::string& text);
WalkSpec load_spec(const std::string& path);
std::string spec_to_json(const WalkSpec& spec);

// Built-in specs used by examples and tests.
WalkSpec symmetric_diagonal();
WalkSpec symmetric_standard();
WalkSpec uniform_honeycomb();
// 1D embedding: p1 = q, p4 = 1 - q, p2 = p3 = 0.
WalkSpec bondesson(const mpq_class& q);

}  // namespace passloc
