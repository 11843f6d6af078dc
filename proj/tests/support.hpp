#pragma once

// Shared fixtures for the test suite: reference implementations computed
// independently of the library (long-double arithmetic, closed forms via
// lgammal), deterministic parameter samplers, and high-precision literals.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "hohlov/config.hpp"

namespace testsupport {

// ----- frozen high-precision literals (30 significant digits upstream) -----
inline constexpr double kLn2 = 0.69314718055994530942;
inline constexpr double kPi4 = 0.78539816339744830962;
// 3F2(1, 1/2, 1; 2, 5/2; 1) = 6 ln 2 - 3
inline constexpr double kClausen114 = 1.1588830833596718565;
// 3F2(1/2, 1/4, 3/4; 3/2, 2; 1)
inline constexpr double kClausenHalf3 = 1.0439776544805790825;
// Gamma prefactor at (1/2, 1/2, 3)
inline constexpr double kPrefactorHalf3 = 1.1317684842090334988;
// fourth summation identity at (1/2, 1/2, 3)
inline constexpr double kLemma4Half3 = 1.0190392829550705592;
// worst-case sum, starlike lambda=1 target, R(0) source, params (1/2, 1/2, 3)
inline constexpr double kWorstTHalf3 = 0.087955308961158164938;

// ----- independent reference evaluations -----

// 2F1(a, b; c; -1) through the Euler transform in long double with a fixed
// 400-term budget; the transformed series is geometric (ratio -> 1/2).
inline long double ref_gauss_2f1_neg1(long double a, long double b, long double c) {
    long double sum = 0.0L, t = 1.0L;
    for (int n = 0; n < 400; ++n) {
        sum += t;
        t *= 0.5L * (a + n) * (c - b + n) / ((c + n) * (1.0L + n));
        if (t == 0.0L) break;
    }
    return std::pow(2.0L, -a) * sum;
}

// Kummer's closed form for 2F1(a, b; 1+a-b; -1) via log-Gamma.
inline long double ref_kummer(long double a, long double b) {
    const long double lg = std::lgammal(1.0L + a - b) + std::lgammal(1.0L + 0.5L * a) -
                           std::lgammal(1.0L + a) - std::lgammal(1.0L + 0.5L * a - b);
    return std::exp(lg);
}

// Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b)) via long-double log-Gamma.
inline long double ref_prefactor(long double a, long double b, long double c) {
    return std::exp(std::lgammal(c) + std::lgammal(c - a - b) - std::lgammal(c - a) -
                    std::lgammal(c - b));
}

// ----- deterministic samplers -----

struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(std::uint64_t seed) : rng(seed) {}
    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(rng);
    }
};

struct ParamPoint {
    double a, b, c;
};

// Points with a, b in (0, hi_ab] and c = a + b + degree + margin, margin drawn
// from [margin_lo, margin_hi].
inline std::vector<ParamPoint> sample_grid(std::uint64_t seed, int count, int degree,
                                           double margin_lo, double margin_hi,
                                           double hi_ab = 1.6) {
    Sampler s(seed);
    std::vector<ParamPoint> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        ParamPoint p{};
        p.a = s.uniform(0.05, hi_ab);
        p.b = s.uniform(0.05, hi_ab);
        p.c = p.a + p.b + static_cast<double>(degree) + s.uniform(margin_lo, margin_hi);
        out.push_back(p);
    }
    return out;
}

// Points additionally clear of the shifted-term pole factors |a-1|, |b-1|,
// |b-2| (for the two theorems with shifted series and for lemma part 4).
inline std::vector<ParamPoint> sample_shifted_grid(std::uint64_t seed, int count,
                                                   double margin_lo, double margin_hi) {
    Sampler s(seed);
    std::vector<ParamPoint> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        ParamPoint p{};
        p.a = s.uniform(0.05, 2.6);
        p.b = s.uniform(0.05, 3.4);
        if (std::fabs(p.a - 1.0) < 0.1 || std::fabs(p.b - 1.0) < 0.1 ||
            std::fabs(p.b - 2.0) < 0.1)
            continue;
        const double base = std::max(p.a + p.b, p.a + 1.0);
        p.c = base + s.uniform(margin_lo, margin_hi);
        out.push_back(p);
    }
    return out;
}

inline hohlov::EvalConfig tight_config() {
    hohlov::EvalConfig cfg;
    cfg.rel_tol = 1e-9;
    cfg.abs_tol = 1e-11;
    cfg.max_terms = 2000000;
    return cfg;
}

}  // namespace testsupport
