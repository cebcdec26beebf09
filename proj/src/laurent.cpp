#include "passloc/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "passloc/error.hpp"
#include "poly.hpp"

namespace passloc {

LaurentPoly::LaurentPoly(const mpq_class& c) {
  if (c != 0) coeffs_.push_back(c);
}

LaurentPoly::LaurentPoly(int min_exp, std::vector<mpq_class> coeffs) : min_exp_(min_exp), coeffs_(std::move(coeffs)) {
  normalize();
}

LaurentPoly LaurentPoly::monomial(const mpq_class& c, int exp) { return LaurentPoly(exp, {c}); }

LaurentPoly LaurentPoly::three_term(const mpq_class& c_minus, const mpq_class& c0, const mpq_class& c_plus) {
  return LaurentPoly(-1, {c_minus, c0, c_plus});
}

void LaurentPoly::normalize() {
  size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    min_exp_ = 0;
    return;
  }
  size_t last = coeffs_.size();
  while (coeffs_[last - 1] == 0) --last;
  coeffs_ = std::vector<mpq_class>(coeffs_.begin() + static_cast<long>(lead), coeffs_.begin() + static_cast<long>(last));
  min_exp_ += static_cast<int>(lead);
  for (auto& c : coeffs_) c.canonicalize();
}

mpq_class LaurentPoly::coeff(int exp) const {
  int i = exp - min_exp_;
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<size_t>(i)];
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  int lo = std::min(min_exp_, o.min_exp_);
  int hi = std::max(max_exp(), o.max_exp());
  std::vector<mpq_class> c(static_cast<size_t>(hi - lo + 1));
  for (size_t i = 0; i < coeffs_.size(); ++i) c[static_cast<size_t>(min_exp_ - lo) + i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) c[static_cast<size_t>(o.min_exp_ - lo) + i] += o.coeffs_[i];
  return LaurentPoly(lo, std::move(c));
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpq_class> c(coeffs_.size() + o.coeffs_.size() - 1);
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return LaurentPoly(min_exp_ + o.min_exp_, std::move(c));
}

LaurentPoly LaurentPoly::operator*(const mpq_class& s) const {
  if (s == 0) return {};
  LaurentPoly r = *this;
  for (auto& c : r.coeffs_) c *= s;
  return r;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  if (coeffs_.size() != o.coeffs_.size()) return false;
  if (is_zero()) return true;
  return min_exp_ == o.min_exp_ && coeffs_ == o.coeffs_;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r = *this;
  if (!r.is_zero()) r.min_exp_ += k;
  return r;
}

std::string LaurentPoly::str(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i) {
    const mpq_class& c = coeffs_[static_cast<size_t>(i)];
    if (c == 0) continue;
    int e = min_exp_ + i;
    mpq_class a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << var;
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

LaurentPoly combine(Op op, const LaurentPoly& p, const LaurentPoly& q) {
  switch (op) {
    case Op::add: return p + q;
    case Op::sub: return p - q;
    case Op::mul:
    case Op::scale: return p * q;
  }
  return {};
}

LaurentPoly combine(Op op, const LaurentPoly& p, const mpq_class& q) {
  switch (op) {
    case Op::add: return p + LaurentPoly(q);
    case Op::sub: return p - LaurentPoly(q);
    case Op::mul:
    case Op::scale: return p * q;
  }
  return {};
}

namespace {

template <class T>
T horner(const LaurentPoly& p, const T& x, T one) {
  T acc = T(0) * one;
  const auto& c = p.coeffs();
  for (size_t i = c.size(); i-- > 0;) acc = acc * x + T(c[i]);
  int e = p.min_exp();
  T scale = one;
  T base = e < 0 ? one / x : x;
  for (int k = 0; k < std::abs(e); ++k) scale *= base;
  return acc * scale;
}

}  // namespace

mpq_class evaluate(const LaurentPoly& p, const mpq_class& x) {
  if (x == 0 && p.min_exp() < 0 && !p.is_zero()) throw Error(Errc::ZeroArgument, "evaluate at 0 with negative exponents");
  if (p.is_zero()) return 0;
  return horner<mpq_class>(p, x, mpq_class(1));
}

std::complex<double> evaluate(const LaurentPoly& p, std::complex<double> x) {
  if (x == 0.0 && p.min_exp() < 0 && !p.is_zero()) throw Error(Errc::ZeroArgument, "evaluate at 0 with negative exponents");
  std::complex<double> acc = 0.0;
  const auto& c = p.coeffs();
  for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i].get_d();
  return acc * std::pow(x, p.min_exp());
}

Real evaluate(const LaurentPoly& p, const Real& x) {
  use_working_precision();
  if (x == 0 && p.min_exp() < 0 && !p.is_zero()) throw Error(Errc::ZeroArgument, "evaluate at 0 with negative exponents");
  Real acc = 0;
  const auto& c = p.coeffs();
  for (size_t i = c.size(); i-- > 0;) acc = acc * x + to_real(c[i]);
  return acc * pow(x, p.min_exp());
}

std::complex<double> evaluate_accurate(const LaurentPoly& p, std::complex<double> x) {
  std::complex<double> v = evaluate(p, x);
  if (p.is_zero()) return v;
  const auto& c = p.coeffs();
  double ax = std::abs(x), mag = 0;
  for (size_t i = c.size(); i-- > 0;) mag = mag * ax + std::abs(c[i].get_d());
  mag *= std::pow(ax, p.min_exp());
  double cond = mag / std::max(std::abs(v), 1e-300);
  if (cond * static_cast<double>(c.size()) < 1e3) return v;
  // redo the Horner pass with enough bits to absorb the cancellation; the
  // double value understates it, so iterate on the refined value
  unsigned bits = static_cast<unsigned>(std::log2(cond)) + 128;
  std::complex<double> r;
  for (int round = 0; round < 6; ++round) {
    PrecisionScope scope(bits);
    Real re = 0, im = 0, xr = x.real(), xi = x.imag();
    for (size_t i = c.size(); i-- > 0;) {
      Real t = re * xr - im * xi + to_real(c[i]);
      im = re * xi + im * xr;
      re = t;
    }
    r = std::complex<double>(re.convert_to<double>(), im.convert_to<double>());
    double scaled = mag / std::pow(ax, p.min_exp());
    double c2 = scaled / std::max(std::abs(r), 1e-300);
    if (std::log2(c2) + 64 <= bits) break;
    bits = static_cast<unsigned>(std::log2(c2)) + 128;
  }
  return r * std::pow(x, p.min_exp());
}

Degrees degrees(const LaurentPoly& p) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "degrees of the zero polynomial");
  return {std::max(0, -p.min_exp()), std::max(0, p.max_exp())};
}

}  // namespace passloc
