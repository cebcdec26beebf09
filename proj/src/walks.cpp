#include "passloc/walks.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "passloc/error.hpp"

namespace passloc {

using nlohmann::json;

const char* lattice_name(Lattice k) {
  switch (k) {
    case Lattice::diagonal: return "diagonal";
    case Lattice::standard: return "standard";
    case Lattice::honeycomb: return "honeycomb";
  }
  return "?";
}

bool WalkSpec::has_row(int y) const {
  if (rows.count(y)) return true;
  return (y % 2 == 0) ? default_even.has_value() : default_odd.has_value();
}

const ProbRow& WalkSpec::row(int y) const {
  auto it = rows.find(y);
  if (it != rows.end()) return it->second;
  const auto& d = (y % 2 == 0) ? default_even : default_odd;
  if (!d) throw Error(Errc::InvalidSpec, "no row for level " + std::to_string(y) + " and no default");
  return *d;
}

int WalkSpec::top_listed_level() const { return rows.empty() ? 0 : std::max(0, rows.rbegin()->first); }

bool WalkSpec::operator==(const WalkSpec& o) const {
  return kind == o.kind && rows == o.rows && default_even == o.default_even && default_odd == o.default_odd &&
         reflecting_levels == o.reflecting_levels;
}

namespace {

void check_row(const WalkSpec& s, const ProbRow& r, const std::string& where, bool even, bool reflecting,
               std::vector<std::string>& out) {
  mpq_class sum = 0;
  for (int i = 1; i <= 4; ++i) {
    if (r[i] < 0) out.push_back("negative p" + std::to_string(i) + " at " + where);
    sum += r[i];
  }
  if (sum != 1) out.push_back("row sum " + sum.get_str() + " != 1 at " + where);
  if (s.kind == Lattice::standard) {
    if (r[2] <= 0) out.push_back("standard walk needs p2 > 0 at " + where);
    if (r[4] <= 0) out.push_back("standard walk needs p4 > 0 at " + where);
    return;
  }
  if (reflecting) {
    if (r[1] != 0 || r[2] != 0) out.push_back("reflecting level needs p1 = p2 = 0 at " + where);
  } else if (r[1] + r[2] <= 0) {
    out.push_back("p1 + p2 = 0 at " + where + " (natural barrier not declared reflecting)");
  }
  if (r[3] + r[4] <= 0) out.push_back("p3 + p4 = 0 at " + where);
  if (s.kind == Lattice::honeycomb) {
    if (!even && r[1] != 0) out.push_back("honeycomb needs p1 = 0 at odd " + where);
    if (even && r[3] != 0) out.push_back("honeycomb needs p3 = 0 at even " + where);
  }
}

}  // namespace

ValidationReport validate(const WalkSpec& spec) {
  ValidationReport rep;
  for (const auto& [y, r] : spec.rows)
    check_row(spec, r, "y=" + std::to_string(y), y % 2 == 0, spec.reflecting_levels.count(y) > 0, rep.violations);
  if (spec.default_even.has_value() != spec.default_odd.has_value())
    rep.violations.push_back("default row given for one parity only");
  if (spec.default_even) check_row(spec, *spec.default_even, "default (even levels)", true, false, rep.violations);
  if (spec.default_odd) check_row(spec, *spec.default_odd, "default (odd levels)", false, false, rep.violations);
  if (!spec.reflecting_levels.empty() && spec.kind == Lattice::standard)
    rep.violations.push_back("reflecting levels are supported for diagonal and honeycomb walks only");
  for (int z : spec.reflecting_levels) {
    if (z < 1) rep.violations.push_back("reflecting level " + std::to_string(z) + " must be >= 1");
    if (!spec.rows.count(z)) rep.violations.push_back("reflecting level " + std::to_string(z) + " needs an explicit row");
  }
  return rep;
}

void require_valid(const WalkSpec& spec) {
  auto rep = validate(spec);
  if (rep.ok()) return;
  std::string msg;
  for (const auto& v : rep.violations) msg += (msg.empty() ? "" : "; ") + v;
  throw Error(Errc::InvalidSpec, msg);
}

WalkSpec translate_levels(const WalkSpec& spec, int shift) {
  WalkSpec out;
  out.kind = spec.kind;
  for (const auto& [y, r] : spec.rows) out.rows[y - shift] = r;
  bool odd_shift = (shift % 2) != 0;
  out.default_even = odd_shift ? spec.default_odd : spec.default_even;
  out.default_odd = odd_shift ? spec.default_even : spec.default_odd;
  for (int z : spec.reflecting_levels) out.reflecting_levels.insert(z - shift);
  return out;
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::pair<long, long> honeycomb_vertex_map(long x, long y) { return {x - floor_div(y, 2), y}; }

HoneycombEmbedding honeycomb_embed(const WalkSpec& spec, int y, int a) {
  if (spec.kind != Lattice::honeycomb) throw Error(Errc::BadHoneycombSpec, "spec is not a honeycomb walk");
  for (const auto& [lvl, r] : spec.rows) {
    if (lvl % 2 != 0 && r[1] != 0) throw Error(Errc::BadHoneycombSpec, "p1 > 0 at odd level " + std::to_string(lvl));
    if (lvl % 2 == 0 && r[3] != 0) throw Error(Errc::BadHoneycombSpec, "p3 > 0 at even level " + std::to_string(lvl));
  }
  if (spec.default_odd && (*spec.default_odd)[1] != 0) throw Error(Errc::BadHoneycombSpec, "p1 > 0 in the odd default");
  if (spec.default_even && (*spec.default_even)[3] != 0) throw Error(Errc::BadHoneycombSpec, "p3 > 0 in the even default");
  HoneycombEmbedding e{spec, floor_div(y, 2) - floor_div(a, 2)};
  e.diagonal.kind = Lattice::diagonal;
  return e;
}

mpq_class parse_probability(const std::string& text0) {
  std::string text;
  for (char c : text0)
    if (!std::isspace(static_cast<unsigned char>(c))) text += c;
  auto bad = [&]() { return Error(Errc::Config, "cannot parse probability '" + text0 + "'"); };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    mpq_class num = parse_probability(text.substr(0, slash));
    mpq_class den = parse_probability(text.substr(slash + 1));
    if (den == 0) throw bad();
    return num / den;
  }
  size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') neg = text[i++] == '-';
  std::string digits;
  long frac = 0;
  bool dot = false, any = false;
  for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
    char c = text[i];
    if (c == '.') {
      if (dot) throw bad();
      dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      any = true;
      if (dot) ++frac;
    } else {
      throw bad();
    }
  }
  if (!any) throw bad();
  long exp10 = 0;
  if (i < text.size()) {
    std::string e = text.substr(i + 1);
    if (e.empty()) throw bad();
    size_t pos = 0;
    try {
      exp10 = std::stol(e, &pos);
    } catch (...) {
      throw bad();
    }
    if (pos != e.size() || exp10 > 1000 || exp10 < -1000) throw bad();
  }
  mpq_class v{mpz_class(digits, 10)};
  long shift = exp10 - frac;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  if (shift >= 0)
    v *= p10;
  else
    v /= p10;
  v.canonicalize();
  return neg ? mpq_class(-v) : v;
}

namespace {

mpq_class prob_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return parse_probability(j.get<std::string>());
  if (j.is_number_integer() || j.is_number_unsigned()) return mpq_class(j.get<long>());
  if (j.is_number_float())
    throw Error(Errc::Config, "floating-point probability at " + where + "; use a string such as \"1/4\" or \"0.25\"");
  throw Error(Errc::Config, "probability expected at " + where);
}

ProbRow row_from_json(const json& j, const std::string& where) {
  ProbRow r;
  if (j.is_array()) {
    if (j.size() != 4) throw Error(Errc::Config, "row needs four probabilities at " + where);
    for (int i = 0; i < 4; ++i) r.p[static_cast<size_t>(i)] = prob_from_json(j[static_cast<size_t>(i)], where);
    return r;
  }
  if (!j.is_object()) throw Error(Errc::Config, "row must be an array or object at " + where);
  for (int i = 1; i <= 4; ++i) {
    std::string key = "p" + std::to_string(i);
    r[i] = j.contains(key) ? prob_from_json(j.at(key), where + "." + key) : mpq_class(0);
  }
  for (const auto& [k, v] : j.items())
    if (k != "p1" && k != "p2" && k != "p3" && k != "p4" && k != "y")
      throw Error(Errc::Config, "unknown key '" + k + "' at " + where);
  return r;
}

json row_to_json(const ProbRow& r) {
  json j = json::object();
  for (int i = 1; i <= 4; ++i) j["p" + std::to_string(i)] = r[i].get_str();
  return j;
}

}  // namespace

WalkSpec parse_spec_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Config, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::Config, "config must be a JSON object");
  WalkSpec s;
  for (const auto& [k, v] : j.items())
    if (k != "kind" && k != "default_probs" && k != "rows" && k != "reflecting_levels")
      throw Error(Errc::Config, "unknown top-level key '" + k + "'");
  std::string kind = j.value("kind", "diagonal");
  if (kind == "diagonal")
    s.kind = Lattice::diagonal;
  else if (kind == "standard")
    s.kind = Lattice::standard;
  else if (kind == "honeycomb")
    s.kind = Lattice::honeycomb;
  else
    throw Error(Errc::Config, "unknown kind '" + kind + "'");
  if (j.contains("default_probs") && !j["default_probs"].is_null()) {
    const json& d = j["default_probs"];
    if (d.is_object() && (d.contains("even") || d.contains("odd"))) {
      if (!d.contains("even") || !d.contains("odd")) throw Error(Errc::Config, "default_probs needs both 'even' and 'odd'");
      s.default_even = row_from_json(d["even"], "default_probs.even");
      s.default_odd = row_from_json(d["odd"], "default_probs.odd");
    } else {
      s.default_even = s.default_odd = row_from_json(d, "default_probs");
    }
  }
  if (j.contains("rows")) {
    if (!j["rows"].is_array()) throw Error(Errc::Config, "rows must be a list");
    for (const auto& r : j["rows"]) {
      if (!r.is_object() || !r.contains("y") || !r["y"].is_number_integer())
        throw Error(Errc::Config, "each row needs an integer 'y'");
      int y = r["y"].get<int>();
      if (s.rows.count(y)) throw Error(Errc::Config, "duplicate row for y=" + std::to_string(y));
      s.rows[y] = row_from_json(r, "rows[y=" + std::to_string(y) + "]");
    }
  }
  if (j.contains("reflecting_levels")) {
    if (!j["reflecting_levels"].is_array()) throw Error(Errc::Config, "reflecting_levels must be a list");
    for (const auto& z : j["reflecting_levels"]) {
      if (!z.is_number_integer()) throw Error(Errc::Config, "reflecting levels must be integers");
      s.reflecting_levels.insert(z.get<int>());
    }
  }
  return s;
}

WalkSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_json(ss.str());
}

std::string spec_to_json(const WalkSpec& s) {
  json j;
  j["kind"] = lattice_name(s.kind);
  if (s.default_even && s.default_odd) {
    if (*s.default_even == *s.default_odd)
      j["default_probs"] = row_to_json(*s.default_even);
    else
      j["default_probs"] = {{"even", row_to_json(*s.default_even)}, {"odd", row_to_json(*s.default_odd)}};
  }
  json rows = json::array();
  for (const auto& [y, r] : s.rows) {
    json jr = row_to_json(r);
    jr["y"] = y;
    rows.push_back(jr);
  }
  j["rows"] = rows;
  j["reflecting_levels"] = s.reflecting_levels;
  return j.dump(2);
}

namespace {

ProbRow make_row(const mpq_class& a, const mpq_class& b, const mpq_class& c, const mpq_class& d) { return ProbRow{{a, b, c, d}}; }

}  // namespace

WalkSpec symmetric_diagonal() {
  WalkSpec s;
  s.kind = Lattice::diagonal;
  mpq_class q(1, 4);
  s.default_even = s.default_odd = make_row(q, q, q, q);
  return s;
}

WalkSpec symmetric_standard() {
  WalkSpec s = symmetric_diagonal();
  s.kind = Lattice::standard;
  return s;
}

WalkSpec uniform_honeycomb() {
  WalkSpec s;
  s.kind = Lattice::honeycomb;
  mpq_class t(1, 3);
  s.default_even = make_row(t, t, 0, t);
  s.default_odd = make_row(0, t, t, t);
  return s;
}

WalkSpec bondesson(const mpq_class& q) {
  WalkSpec s;
  s.kind = Lattice::diagonal;
  s.default_even = s.default_odd = make_row(q, 0, 0, 1 - q);
  return s;
}

}  // namespace passloc
