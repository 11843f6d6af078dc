#pragma once

#include "hohlov/config.hpp"

namespace hohlov {

// log Gamma(x) for x > 0.  Exactly 0 at x = 1 and x = 2.
double log_gamma(double x);

// Rising factorial (x)_n = x(x+1)...(x+n-1); (x)_0 = 1.  n >= 0.
double pochhammer(double x, int n);

// Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)), evaluated in log space.
// Requires a, b >= 0 and c - a - b > delta (and c > delta).  Returns exactly
// 1 when a == 0 or b == 0 (the factors cancel).
double gamma_prefactor(double a, double b, double c, double delta = 1e-9);

// 2F1(a, b; c; -1).  Parameters a, b may be any reals (nonpositive-integer
// values terminate the series and are summed exactly); requires c > delta.
// Uses direct alternating summation with a partial-sum bracket where that
// converges quickly, and otherwise the Euler transform
//     2F1(a, b; c; -1) = 2^{-a} 2F1(a, c-b; c; 1/2)
// with a rigorous geometric tail.  Symmetric under swapping a and b.
SeriesValue gauss_2f1_at_minus_one(double a, double b, double c,
                                   const EvalConfig& cfg = {});

// Clausen-style 3F2(a, b/2, (b+1)/2; c/2, (c+1)/2; 1) by direct summation.
// Requires a, b >= 0, c > delta, and the convergence margin c - a - b > delta.
SeriesValue clausen_3f2_at_one(double a, double b, double c,
                               const EvalConfig& cfg = {});

}  // namespace hohlov
