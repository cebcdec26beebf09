#pragma once

// Dense univariate polynomial helpers over Q and Z (ascending coefficients).

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "passloc/laurent.hpp"

namespace passloc::detail {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p);
void trim(ZPoly& p);
int degree(const QPoly& p);

QPoly derivative(const QPoly& p);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly exact_div(const QPoly& a, const QPoly& b);
QPoly monic(const QPoly& p);
QPoly gcd(QPoly a, QPoly b);

// Yun: p = c * prod f_i^i; result[i-1] = f_i (constant 1 where absent).
std::vector<QPoly> square_free_factors(const QPoly& p);

// Primitive integer multiple with positive leading coefficient.
ZPoly to_zpoly(const QPoly& p);

// Ordinary polynomial x^(-min_exp) * P.
QPoly to_qpoly(const LaurentPoly& p);
LaurentPoly from_qpoly(const QPoly& p, int min_exp);

// Isolating intervals for the positive roots of a square-free integer
// polynomial with p(0) != 0. Endpoints are never roots.
std::vector<std::pair<mpq_class, mpq_class>> isolate_positive(const ZPoly& p);

// Exact gcd-reduction of num/den, keeping den's content normalization.
void reduce_fraction(LaurentPoly& num, LaurentPoly& den);

}  // namespace passloc::detail
