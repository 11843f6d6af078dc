#include "hohlov/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace hohlov {

namespace {

constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();

// Smallest nonnegative integer m with offset + m > 0.
std::int64_t first_positive_index(double offset) {
    if (offset > 0.0) return 0;
    const double need = std::floor(-offset) + 1.0;  // smallest integer > -offset
    return static_cast<std::int64_t>(need);
}

// Coefficients of prod_i (m + offs[i]) in ascending powers of m.
std::vector<double> poly_from_offsets(const std::vector<double>& offs) {
    std::vector<double> c{1.0};
    for (double x : offs) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] += x * c[k];
        }
        c = std::move(next);
    }
    return c;
}

// 1 + max |c_k / c_top|: no roots of the polynomial lie beyond this point.
double cauchy_bound(const std::vector<double>& c, std::size_t degree) {
    double top = c[degree];
    double worst = 0.0;
    for (std::size_t k = 0; k < degree; ++k)
        worst = std::max(worst, std::fabs(c[k] / top));
    return 1.0 + worst;
}

std::int64_t ceil_to_index(double x) {
    if (x <= 0.0) return 0;
    if (x >= 9.0e18) return kNever;
    return static_cast<std::int64_t>(std::ceil(x));
}

}  // namespace

std::int64_t HyperTermRatio::all_factors_positive_from() const {
    std::int64_t n = 0;
    for (double x : num) n = std::max(n, first_positive_index(x));
    for (double x : den) n = std::max(n, first_positive_index(x));
    return n;
}

double HyperTermRatio::num_sum() const {
    double s = 0.0;
    for (double x : num) s += x;
    return s;
}

double HyperTermRatio::den_sum() const {
    double s = 0.0;
    for (double x : den) s += x;
    return s;
}

std::int64_t HyperTermRatio::ratio_below_one_from() const {
    const std::int64_t n_pos = all_factors_positive_from();
    const std::size_t K = num.size();
    if (den.size() != K)
        throw DomainError("HyperTermRatio: numerator/denominator factor counts differ");

    if (K == 0) return multiplier < 1.0 ? 0 : kNever;

    // d(m) = prod(den+m) - multiplier*prod(num+m);  d(m) > 0  <=>  ratio(m) < 1
    // once every factor is positive.  Build its coefficients.
    const std::vector<double> pd = poly_from_offsets(den);
    const std::vector<double> pn = poly_from_offsets(num);
    std::vector<double> d(K + 1);
    for (std::size_t k = 0; k <= K; ++k) d[k] = pd[k] - multiplier * pn[k];

    // Effective degree and sign of the leading coefficient decide the tail.
    std::size_t deg = K;
    if (multiplier == 1.0) {
        // Exact cancellation of the m^K terms; leading coefficient is
        // sum(den) - sum(num), the polynomial decay exponent.
        deg = K - 1;
        d[K - 1] = den_sum() - num_sum();
    }
    while (deg > 0 && d[deg] == 0.0) --deg;
    if (d[deg] <= 0.0) return kNever;  // ratio tends to a limit >= 1
    if (deg == 0) return n_pos;        // constant positive d

    // Beyond the Cauchy bound of d there are no roots, so d > 0 there; beyond
    // the Cauchy bound of d' the polynomial is strictly increasing, so the
    // first positive value found at or after that point stays positive.
    const std::int64_t hi_cap = std::max(n_pos, ceil_to_index(cauchy_bound(d, deg)) + 1);
    std::vector<double> dp(deg);
    for (std::size_t k = 0; k < deg; ++k) dp[k] = static_cast<double>(k + 1) * d[k + 1];
    std::size_t degp = deg - 1;
    while (degp > 0 && dp[degp] == 0.0) --degp;
    std::int64_t lo = n_pos;
    if (degp > 0 || dp[0] != 0.0)
        lo = std::max(lo, ceil_to_index(cauchy_bound(dp, degp)));
    if (lo >= hi_cap) return hi_cap;

    auto positive_at = [&](std::int64_t m) {
        // Evaluate d via the factor products themselves; identical sign, less
        // coefficient cancellation than Horner on the expanded form.
        double prod_den = 1.0, prod_num = multiplier;
        for (double x : den) prod_den *= x + static_cast<double>(m);
        for (double x : num) prod_num *= x + static_cast<double>(m);
        return prod_den - prod_num > 0.0;
    };

    // d is increasing on [lo, hi_cap] and positive at hi_cap: binary-search the
    // first positive index.
    std::int64_t a = lo, b = hi_cap;
    if (positive_at(a)) return a;
    while (b - a > 1) {
        const std::int64_t mid = a + (b - a) / 2;
        (positive_at(mid) ? b : a) = mid;
    }
    return b;
}

SeriesValue sum_positive_hyper_series(double first_term, const HyperTermRatio& ratio,
                                      const EvalConfig& cfg) {
    cfg.validate();
    if (ratio.multiplier != 1.0)
        throw DomainError("sum_positive_hyper_series: ratio multiplier must be 1");
    if (!std::isfinite(first_term) || first_term < 0.0)
        throw DomainError("sum_positive_hyper_series: first term must be finite and >= 0");

    SeriesValue out;
    if (first_term == 0.0) {
        out.value = 0.0;
        out.terms_used = 1;
        out.tail_bound = 0.0;
        out.converged = true;
        return out;
    }

    const std::int64_t n_cert = ratio.ratio_below_one_from();
    const double inf = std::numeric_limits<double>::infinity();

    KahanAccumulator acc;
    double t = first_term;
    double tail = inf;
    for (std::int64_t m = 0;; ++m) {
        acc += t;
        const double r = ratio.at(m);
        const double t_next = t * r;
        if (t_next == 0.0) {  // a numerator factor hit zero: the sum terminates
            out.value = acc.value();
            out.terms_used = m + 1;
            out.tail_bound = 0.0;
            out.converged = true;
            return out;
        }
        if (!std::isfinite(t_next)) {
            out.value = acc.value();
            out.terms_used = m + 1;
            out.tail_bound = inf;
            out.converged = false;
            return out;
        }
        if (m >= n_cert && r < 1.0) {
            // Ratio majorant: remaining terms are bounded by the geometric
            // series with the current ratio, tail <= t_m * r/(1-r).
            tail = t * r / (1.0 - r);
            const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(acc.value()));
            if (tail <= target) {
                out.value = acc.value();
                out.terms_used = m + 1;
                out.tail_bound = tail;
                out.converged = true;
                return out;
            }
        }
        if (m + 1 >= cfg.max_terms) {
            out.value = acc.value();
            out.terms_used = m + 1;
            out.tail_bound = tail;
            out.converged = false;
            return out;
        }
        t = t_next;
    }
}

}  // namespace hohlov
