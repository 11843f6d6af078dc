#pragma once

#include <vector>

#include "hohlov/config.hpp"

namespace hohlov {

// Kahan compensated accumulator; error stays O(eps) independent of length.
struct KahanAccumulator {
    double sum = 0.0;
    double compensation = 0.0;

    KahanAccumulator& operator+=(double term) {
        const double y = term - compensation;
        const double t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
        return *this;
    }
    double value() const { return sum; }
};

// A term ratio of the form
//     t_{m+1}/t_m = multiplier * prod_i (num[i]+m) / prod_j (den[j]+m)
// with equally many numerator and denominator factors.  Every series in this
// library (the z=1 and z=1/2 hypergeometric sums, the weighted coefficient
// sums, the brute-force lemma sums) is of this shape.
struct HyperTermRatio {
    std::vector<double> num;
    std::vector<double> den;
    double multiplier = 1.0;

    double at(std::int64_t m) const {
        double r = multiplier;
        for (std::size_t i = 0; i < num.size(); ++i)
            r *= (num[i] + static_cast<double>(m)) / (den[i] + static_cast<double>(m));
        return r;
    }

    // Smallest m with every linear factor strictly positive.
    std::int64_t all_factors_positive_from() const;

    // Index N such that ratio(m) < 1 for all m >= N, certified via the sign
    // and eventual monotonicity of d(m) = prod(den+m) - multiplier*prod(num+m)
    // (a polynomial; beyond a Cauchy bound on the roots of d' it increases).
    // Requires sum(den) > sum(num) when multiplier == 1.
    std::int64_t ratio_below_one_from() const;

    // Sum of the numerator/denominator offsets; their difference is the
    // polynomial decay exponent of the term sequence when multiplier == 1.
    double num_sum() const;
    double den_sum() const;
};

// Sums t_0 + t_1 + ... for a positive-term sequence defined by `first_term`
// and `ratio` (multiplier must be 1; terms decay polynomially).  Stops once
// the ratio majorant tail  t_m * r_m/(1 - r_m)  with r_m = t_{m+1}/t_m < 1
// drops below max(abs_tol, rel_tol*sum).  The reported value is the partial
// sum; tail_bound is the majorant at the stopping index.
SeriesValue sum_positive_hyper_series(double first_term, const HyperTermRatio& ratio,
                                      const EvalConfig& cfg);

}  // namespace hohlov
