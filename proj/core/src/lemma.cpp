#include "hohlov/lemma.hpp"

#include <cmath>
#include <cstdio>

#include "hohlov/series.hpp"
#include "hohlov/specfun.hpp"

namespace hohlov {

namespace {

void require_finite(double a, double b, double c) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
        throw DomainError("lemma: parameters must be finite");
}

void require_nonnegative(double a, double b) {
    if (a < 0.0 || b < 0.0)
        throw DomainError("lemma: numerator parameters must be >= 0");
}

void require_margin(const char* label, double margin, double delta) {
    if (margin <= delta) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "lemma: %s at or below delta (got %.17g)", label,
                      margin);
        throw PoleProximityError(buf, margin);
    }
}

void require_away_from(const char* label, double distance, double delta) {
    if (distance <= delta) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "lemma: %s within delta of a pole (distance %.17g)",
                      label, distance);
        throw PoleProximityError(buf, distance);
    }
}

double f_shift(double a, double b, double c, int k, const EvalConfig& cfg) {
    return gauss_2f1_at_minus_one(a + k, b + 2.0 * k, c - a + static_cast<double>(k), cfg)
        .value;
}

double coeff1(double a, double b, double c) {
    return a * pochhammer(b, 2) / ((c - a) * (c - a - b - 1.0));
}
double coeff2(double a, double b, double c) {
    return pochhammer(a, 2) * pochhammer(b, 4) /
           (pochhammer(c - a, 2) * pochhammer(c - a - b - 2.0, 2));
}
double coeff3(double a, double b, double c) {
    return pochhammer(a, 3) * pochhammer(b, 6) /
           (pochhammer(c - a, 3) * pochhammer(c - a - b - 3.0, 3));
}

}  // namespace

LemmaPart lemma_part_from_int(int part) {
    if (part < 1 || part > 4) throw DomainError("lemma: part must be 1, 2, 3, or 4");
    return static_cast<LemmaPart>(part);
}

double lemma_sum_closed(LemmaPart part, double a, double b, double c,
                        const EvalConfig& cfg) {
    cfg.validate();
    require_finite(a, b, c);
    require_nonnegative(a, b);
    if (c <= cfg.delta) throw PoleProximityError("lemma: c must exceed delta", c);

    if (part == LemmaPart::Four) return lemma_part4_closed_forms(a, b, c, cfg).statement_form;

    const int k = static_cast<int>(part);
    char label[48];
    std::snprintf(label, sizeof label, "margin c-a-b-%d", k);
    require_margin(label, c - a - b - static_cast<double>(k), cfg.delta);

    const double G = gamma_prefactor(a, b, c, cfg.delta);
    const double F0 = f_shift(a, b, c, 0, cfg);
    const double F1 = f_shift(a, b, c, 1, cfg);
    switch (part) {
        case LemmaPart::One:
            return G * (coeff1(a, b, c) * F1 + F0);
        case LemmaPart::Two:
            return G * (coeff2(a, b, c) * f_shift(a, b, c, 2, cfg) +
                        3.0 * coeff1(a, b, c) * F1 + F0);
        case LemmaPart::Three:
            return G * (coeff3(a, b, c) * f_shift(a, b, c, 3, cfg) +
                        6.0 * coeff2(a, b, c) * f_shift(a, b, c, 2, cfg) +
                        7.0 * coeff1(a, b, c) * F1 + F0);
        default:
            break;
    }
    throw DomainError("lemma: unknown part");
}

Part4ClosedForms lemma_part4_closed_forms(double a, double b, double c,
                                          const EvalConfig& cfg) {
    cfg.validate();
    require_finite(a, b, c);
    require_nonnegative(a, b);
    if (c <= cfg.delta) throw PoleProximityError("lemma: c must exceed delta", c);
    require_away_from("factor a-1", std::fabs(a - 1.0), cfg.delta);
    require_away_from("factor b-1", std::fabs(b - 1.0), cfg.delta);
    require_away_from("factor b-2", std::fabs(b - 2.0), cfg.delta);
    require_margin("margin c-a-1", c - a - 1.0, cfg.delta);
    require_margin("margin c-a-b", c - a - b, cfg.delta);

    const double G = gamma_prefactor(a, b, c, cfg.delta);
    const double K = (c - a - 1.0) * (c - a - b) / ((a - 1.0) * (b - 1.0) * (b - 2.0));
    const double Fm = gauss_2f1_at_minus_one(a - 1.0, b - 2.0, c - a - 1.0, cfg).value;
    Part4ClosedForms out;
    out.statement_form =
        G * K * Fm - pochhammer(c - 2.0, 2) / ((a - 1.0) * pochhammer(b - 2.0, 2));
    out.proof_form =
        G * K * Fm - (c - 1.0) * (c - 2.0) / ((a - 1.0) * (b - 1.0) * (b - 2.0));
    return out;
}

SeriesValue lemma_sum_brute(LemmaPart part, double a, double b, double c,
                            const EvalConfig& cfg) {
    cfg.validate();
    require_finite(a, b, c);
    require_nonnegative(a, b);
    if (c <= cfg.delta) throw PoleProximityError("lemma: c must exceed delta", c);

    HyperTermRatio ratio{{a, 0.5 * b, 0.5 * (b + 1.0)},
                         {0.5 * c, 0.5 * (c + 1.0), 1.0},
                         1.0};
    const int k = static_cast<int>(part);
    if (part == LemmaPart::Four) {
        // Weight 1/(n+1): one extra denominator step ahead of the numerator.
        ratio.num.push_back(1.0);
        ratio.den.push_back(2.0);
        require_margin("margin c-a-b+1", c - a - b + 1.0, cfg.delta);
    } else {
        // Weight (n+1)^k: k extra shifted factors.
        for (int i = 0; i < k; ++i) {
            ratio.num.push_back(2.0);
            ratio.den.push_back(1.0);
        }
        char label[48];
        std::snprintf(label, sizeof label, "margin c-a-b-%d", k);
        require_margin(label, c - a - b - static_cast<double>(k), cfg.delta);
    }
    return sum_positive_hyper_series(1.0, ratio, cfg);
}

SeriesValue driver_johnston_rhs(double a, double b, double c, const EvalConfig& cfg) {
    cfg.validate();
    const double G = gamma_prefactor(a, b, c, cfg.delta);
    SeriesValue f = gauss_2f1_at_minus_one(a, b, c - a, cfg);
    SeriesValue out;
    out.value = G * f.value;
    out.terms_used = f.terms_used;
    out.tail_bound = G * f.tail_bound;
    out.converged = f.converged;
    return out;
}

}  // namespace hohlov
