#include "hohlov/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>

#include "hohlov/series.hpp"

namespace hohlov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe(const char* what, double value) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s (got %.17g)", what, value);
    return buf;
}

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x) && x > -9.0e15;
}

// Exact finite sum when a numerator parameter is a nonpositive integer.
SeriesValue gauss_2f1_terminating(double alpha, double beta, double c) {
    const auto last = static_cast<std::int64_t>(-alpha);
    KahanAccumulator acc;
    double t = 1.0;
    for (std::int64_t n = 0;; ++n) {
        acc += t;
        if (n == last) break;
        const double dn = static_cast<double>(n);
        t *= -(alpha + dn) * (beta + dn) / ((c + dn) * (1.0 + dn));
    }
    SeriesValue out;
    out.value = acc.value();
    out.terms_used = last + 1;
    out.tail_bound = 0.0;
    out.converged = true;
    return out;
}

// Euler-transform route: 2F1(alpha,beta;c;-1) = 2^{-alpha} 2F1(alpha,c-beta;c;1/2).
// The z=1/2 series has asymptotically geometric ratio 1/2; the tail uses the
// decreasing majorant  rho(m) = (1/2) max(1, ((m+P)/(m+q))^2)  with
// P = max(alpha, c-beta), q = min(c, 1), valid once all factors are positive.
SeriesValue gauss_2f1_half_argument(double alpha, double beta, double c,
                                    const EvalConfig& cfg) {
    const double scale = std::exp2(-alpha);
    if (!std::isfinite(scale) || scale == 0.0)
        throw DomainError(describe("gauss_2f1: first parameter too large in magnitude", alpha));

    HyperTermRatio ratio{{alpha, c - beta}, {c, 1.0}, 0.5};
    const double P = std::max(alpha, c - beta);
    const double q = std::min(c, 1.0);
    auto rho_bar = [&](std::int64_t m) {
        const double f = (static_cast<double>(m) + P) / (static_cast<double>(m) + q);
        return 0.5 * std::max(1.0, f * f);
    };
    std::int64_t n_geo = 0;
    if (P > q) {
        const double root2 = std::sqrt(2.0);
        const double edge = (P - root2 * q) / (root2 - 1.0);
        if (edge > 0.0) n_geo = static_cast<std::int64_t>(std::floor(edge)) + 1;
    }
    const std::int64_t n_ok = std::max(ratio.all_factors_positive_from(), n_geo);

    SeriesValue out;
    KahanAccumulator acc;
    double t = 1.0;
    double tail = kInf;
    for (std::int64_t m = 0;; ++m) {
        acc += t;
        const double t_next = t * ratio.at(m);
        if (t_next == 0.0) {  // c - beta hit a nonpositive integer: exact sum
            out.value = scale * acc.value();
            out.terms_used = m + 1;
            out.tail_bound = 0.0;
            out.converged = true;
            return out;
        }
        if (m + 1 >= n_ok) {
            const double rho = rho_bar(m + 1);
            tail = scale * std::fabs(t_next) / (1.0 - rho);
            const double target =
                std::max(cfg.abs_tol, cfg.rel_tol * scale * std::fabs(acc.value()));
            if (tail <= target) {
                out.value = scale * acc.value();
                out.terms_used = m + 1;
                out.tail_bound = tail;
                out.converged = true;
                return out;
            }
        }
        if (m + 1 >= cfg.max_terms || !std::isfinite(t_next)) {
            out.value = scale * acc.value();
            out.terms_used = m + 1;
            out.tail_bound = tail;
            out.converged = false;
            return out;
        }
        t = t_next;
    }
}

// Direct alternating summation at z = -1.  Once every recurrence factor is
// positive and the term-magnitude ratio is certified below one, consecutive
// partial sums bracket the limit; the reported value is the bracket midpoint.
SeriesValue gauss_2f1_alternating(double alpha, double beta, double c,
                                  const EvalConfig& cfg, bool& converged_ok) {
    HyperTermRatio mag{{alpha, beta}, {c, 1.0}, 1.0};
    const std::int64_t n_ok =
        std::max(mag.all_factors_positive_from(), mag.ratio_below_one_from());

    SeriesValue out;
    KahanAccumulator acc;
    double t = 1.0;
    for (std::int64_t m = 0;; ++m) {
        acc += t;
        const double t_next = -t * mag.at(m);
        if (t_next == 0.0) {
            out.value = acc.value();
            out.terms_used = m + 1;
            out.tail_bound = 0.0;
            out.converged = true;
            converged_ok = true;
            return out;
        }
        if (m + 1 >= n_ok) {
            const double mid = acc.value() + 0.5 * t_next;
            const double half = std::fabs(t_next);
            if (half <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(mid))) {
                out.value = mid;
                out.terms_used = m + 1;
                out.tail_bound = half;
                out.converged = true;
                converged_ok = true;
                return out;
            }
        }
        if (m + 1 >= cfg.max_terms || !std::isfinite(t_next)) {
            out.value = acc.value();
            out.terms_used = m + 1;
            out.tail_bound = kInf;
            out.converged = false;
            converged_ok = false;
            return out;
        }
        t = t_next;
    }
}

}  // namespace

double log_gamma(double x) {
    if (!std::isfinite(x)) throw DomainError("log_gamma: argument must be finite");
    if (x <= 0.0) throw DomainError(describe("log_gamma: argument must be positive", x));
    if (x == 1.0 || x == 2.0) return 0.0;
    return std::lgamma(x);
}

double pochhammer(double x, int n) {
    if (n < 0) throw DomainError("pochhammer: order must be nonnegative");
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x + static_cast<double>(i);
    return r;
}

double gamma_prefactor(double a, double b, double c, double delta) {
    if (!(delta > 0.0)) throw DomainError("gamma_prefactor: delta must be positive");
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
        throw DomainError("gamma_prefactor: parameters must be finite");
    if (a < 0.0 || b < 0.0)
        throw DomainError("gamma_prefactor: first two parameters must be >= 0");
    if (c <= delta)
        throw PoleProximityError(describe("gamma_prefactor: c must exceed delta", c), c);
    const double margin = c - a - b;
    if (margin <= delta)
        throw PoleProximityError(
            describe("gamma_prefactor: margin c-a-b at or below delta", margin), margin);
    if (a == 0.0 || b == 0.0) return 1.0;
    return std::exp(log_gamma(c) + log_gamma(margin) - log_gamma(c - a) - log_gamma(c - b));
}

SeriesValue gauss_2f1_at_minus_one(double a, double b, double c, const EvalConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
        throw DomainError("gauss_2f1: parameters must be finite");
    if (c <= cfg.delta)
        throw PoleProximityError(describe("gauss_2f1: c must exceed delta", c), c);

    // Canonical parameter order makes the evaluation bit-for-bit symmetric
    // under swapping the two numerator parameters.
    const double alpha = std::min(a, b);
    const double beta = std::max(a, b);

    if (is_nonpositive_integer(alpha)) return gauss_2f1_terminating(alpha, beta, c);

    // Direct alternating summation needs |t_n| ~ n^{-p}, p = c+1-a-b, to reach
    // the tolerance within a modest term budget; otherwise the half-argument
    // route converges geometrically regardless of p.
    const double p = c + 1.0 - a - b;
    if (p > 0.0) {
        const double target = std::max(cfg.abs_tol, cfg.rel_tol);
        const double log_n_est = -std::log(target) / p;
        if (log_n_est < std::log(4000.0)) {
            bool ok = false;
            SeriesValue direct = gauss_2f1_alternating(alpha, beta, c, cfg, ok);
            if (ok) return direct;
        }
    }
    return gauss_2f1_half_argument(alpha, beta, c, cfg);
}

SeriesValue clausen_3f2_at_one(double a, double b, double c, const EvalConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
        throw DomainError("clausen_3f2: parameters must be finite");
    if (a < 0.0 || b < 0.0)
        throw DomainError("clausen_3f2: numerator parameters must be >= 0");
    if (c <= cfg.delta)
        throw PoleProximityError(describe("clausen_3f2: c must exceed delta", c), c);
    const double margin = c - a - b;
    if (margin <= cfg.delta)
        throw PoleProximityError(
            describe("clausen_3f2: margin c-a-b at or below delta", margin), margin);

    HyperTermRatio ratio{{a, 0.5 * b, 0.5 * (b + 1.0)},
                         {0.5 * c, 0.5 * (c + 1.0), 1.0},
                         1.0};
    return sum_positive_hyper_series(1.0, ratio, cfg);
}

}  // namespace hohlov
