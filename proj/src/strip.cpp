#include <string>

#include "passloc/error.hpp"
#include "passloc/passage.hpp"

namespace passloc {

LaurentPoly StripChain::at(int j) const {
  if (j >= first && j <= last()) return polys[static_cast<size_t>(j - first)];
  if (direction == Direction::lower) {
    if (j == 0 || j == 1) return LaurentPoly(1);
  } else {
    if (j == last() + 1) return LaurentPoly(0);
  }
  throw Error(Errc::InvalidArgument, "chain index " + std::to_string(j) + " out of range");
}

const PForm& StripChain::form(int j) const {
  if (forms.empty()) throw Error(Errc::InvalidArgument, "chain was built without certification");
  if (j < first || j > last()) throw Error(Errc::InvalidArgument, "chain index " + std::to_string(j) + " out of range");
  return forms[static_cast<size_t>(j - first)];
}

LaurentPoly level_up(const WalkSpec& s, int j) {
  const ProbRow& r = s.row(j);
  return LaurentPoly(0, {r[2], r[1]});
}

LaurentPoly level_down(const WalkSpec& s, int j) {
  const ProbRow& r = s.row(j);
  return LaurentPoly(-1, {r[3], r[4]});
}

namespace {

void check_bound(const PForm& f, int bound, const char* name, int j) {
  if (f.A() > bound || f.B() > bound)
    throw Error(Errc::PMembershipFailure, std::string(name) + "_" + std::to_string(j) + " has (A, B) = (" +
                                              std::to_string(f.A()) + ", " + std::to_string(f.B()) + "), bound " +
                                              std::to_string(bound));
}

// Coefficients (a, b, c) of U_i D_k = a w + b + c / w.
struct Mult {
  mpq_class a, b, c;
};

Mult diag_mult(const ProbRow& up, const ProbRow& down) {
  return {up[1] * down[4], up[1] * down[3] + up[2] * down[4], up[2] * down[3]};
}

LaurentPoly standard_s(const ProbRow& r) { return LaurentPoly::three_term(-r[3], 1, -r[1]); }

}  // namespace

StripChain strip_lower(const WalkSpec& spec, int y_max, bool certify) {
  StripChain c;
  c.direction = StripChain::Direction::lower;
  c.first = 0;
  c.polys = {LaurentPoly(1), LaurentPoly(1)};
  if (certify) {
    PForm one = certify_p(LaurentPoly(1));
    c.forms = {one, one};
  }
  for (int y = 2; y <= y_max; ++y) {
    const ProbRow& up = spec.row(y - 1);
    const ProbRow& down = spec.row(y);
    const LaurentPoly& g1 = c.polys[static_cast<size_t>(y - 1)];
    const LaurentPoly& g2 = c.polys[static_cast<size_t>(y - 2)];
    Mult m = diag_mult(up, down);
    if (certify) {
      if (m.a == 0 && m.b == 0 && m.c == 0)
        throw Error(Errc::ReflectingLevelInStrip, "U_" + std::to_string(y - 1) + " D_" + std::to_string(y) + " vanishes");
      PForm h = step_diagonal(c.forms[static_cast<size_t>(y - 2)], c.forms[static_cast<size_t>(y - 1)], m.a, m.b, m.c);
      check_bound(h, y / 2, "G", y);
      c.polys.push_back(h.poly);
      c.forms.push_back(std::move(h));
    } else {
      c.polys.push_back(g1 - LaurentPoly::three_term(m.c, m.b, m.a) * g2);
    }
  }
  if (y_max < 1) {
    c.polys.resize(static_cast<size_t>(y_max + 1));
    if (certify) c.forms.resize(static_cast<size_t>(y_max + 1));
  }
  return c;
}

StripChain strip_upper(const WalkSpec& spec, int y, int b, bool certify, int j_min) {
  if (j_min < 0) j_min = y + 1;
  if (b < j_min) throw Error(Errc::InvalidArgument, "strip_upper needs b >= j_min");
  std::vector<LaurentPoly> polys;  // polys[i] = G~_{b - i}
  std::vector<PForm> forms;
  polys.push_back(LaurentPoly(1));
  if (certify) forms.push_back(certify_p(LaurentPoly(1)));
  for (int j = b - 1; j >= j_min; --j) {
    size_t i = static_cast<size_t>(b - j);
    if (j == b - 1) {
      polys.push_back(LaurentPoly(1));
      if (certify) forms.push_back(forms.front());
      continue;
    }
    Mult m = diag_mult(spec.row(j), spec.row(j + 1));
    if (certify) {
      if (m.a == 0 && m.b == 0 && m.c == 0)
        throw Error(Errc::ReflectingLevelInStrip, "U_" + std::to_string(j) + " D_" + std::to_string(j + 1) + " vanishes");
      PForm h = step_diagonal(forms[i - 2], forms[i - 1], m.a, m.b, m.c);
      check_bound(h, (b - j) / 2, "G~", j);
      polys.push_back(h.poly);
      forms.push_back(std::move(h));
    } else {
      polys.push_back(polys[i - 1] - LaurentPoly::three_term(m.c, m.b, m.a) * polys[i - 2]);
    }
  }
  StripChain c;
  c.direction = StripChain::Direction::upper_mirror;
  c.first = j_min;
  c.polys.assign(polys.rbegin(), polys.rend());
  c.forms.assign(forms.rbegin(), forms.rend());
  return c;
}

StripChain strip_lower_standard(const WalkSpec& spec, int y_max, bool certify) {
  StripChain c;
  c.direction = StripChain::Direction::lower;
  c.first = 0;
  c.polys = {LaurentPoly(1)};
  if (certify) c.forms = {certify_p(LaurentPoly(1))};
  for (int j = 1; j <= y_max; ++j) {
    const ProbRow& r = spec.row(j);
    mpq_class inv4 = 1 / r[4];
    if (j == 1) {
      LaurentPoly g = standard_s(r) * inv4;
      if (certify) {
        PForm f = certify_p(g, "g_1");
        if (!interlaces(c.forms[0], f)) throw Error(Errc::PMembershipFailure, "g_0 << g_1 fails");
        c.forms.push_back(f);
      }
      c.polys.push_back(g);
      continue;
    }
    const ProbRow& prev = spec.row(j - 1);
    mpq_class d = prev[2] / prev[4];
    if (certify) {
      PForm h = step_standard(c.forms[static_cast<size_t>(j - 2)], c.forms[static_cast<size_t>(j - 1)], inv4,
                              r[1] * inv4, r[3] * inv4, d);
      check_bound(h, j, "g", j);
      c.polys.push_back(h.poly);
      c.forms.push_back(std::move(h));
    } else {
      c.polys.push_back(standard_s(r) * inv4 * c.polys[static_cast<size_t>(j - 1)] -
                        c.polys[static_cast<size_t>(j - 2)] * d);
    }
  }
  return c;
}

StripChain strip_upper_standard(const WalkSpec& spec, int y, int b, bool certify, int j_min) {
  if (j_min < 0) j_min = y + 1;
  if (b < j_min) throw Error(Errc::InvalidArgument, "strip_upper_standard needs b >= j_min");
  std::vector<LaurentPoly> polys;  // polys[i] = g~_{b - i}
  std::vector<PForm> forms;
  polys.push_back(LaurentPoly(1));
  if (certify) forms.push_back(certify_p(LaurentPoly(1)));
  for (int j = b - 1; j >= j_min; --j) {
    size_t i = static_cast<size_t>(b - j);
    const ProbRow& r = spec.row(j);
    if (j == b - 1) {
      LaurentPoly g = standard_s(r);
      if (certify) {
        PForm f = certify_p(g, "g~_" + std::to_string(j));
        if (!interlaces(forms[0], f)) throw Error(Errc::PMembershipFailure, "g~_b << g~_{b-1} fails");
        forms.push_back(f);
      }
      polys.push_back(g);
      continue;
    }
    mpq_class d = r[2] * spec.row(j + 1)[4];
    if (certify) {
      PForm h = step_standard(forms[i - 2], forms[i - 1], 1, r[1], r[3], d);
      check_bound(h, b - j, "g~", j);
      polys.push_back(h.poly);
      forms.push_back(std::move(h));
    } else {
      polys.push_back(standard_s(r) * polys[i - 1] - polys[i - 2] * d);
    }
  }
  StripChain c;
  c.direction = StripChain::Direction::upper_mirror;
  c.first = j_min;
  c.polys.assign(polys.rbegin(), polys.rend());
  c.forms.assign(forms.rbegin(), forms.rend());
  return c;
}

}  // namespace passloc
