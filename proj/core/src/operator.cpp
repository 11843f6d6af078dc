#include "hohlov/operator.hpp"

#include <cmath>
#include <cstdio>

#include "hohlov/series.hpp"

namespace hohlov {

namespace {

// Factors of B_{j+1}/B_j as offsets against j (numerators over denominators).
struct CoefficientRecurrence {
    double na, nb1, nb2, dc1, dc2;

    explicit CoefficientRecurrence(const OperatorParams& p)
        : na(p.a_mod - 1.0),
          nb1(0.5 * p.b_mod - 1.0),
          nb2(0.5 * (p.b_mod + 1.0) - 1.0),
          dc1(0.5 * p.c - 1.0),
          dc2(0.5 * (p.c + 1.0) - 1.0) {}

    double step(std::int64_t j) const {
        const double dj = static_cast<double>(j);
        return (na + dj) * (nb1 + dj) * (nb2 + dj) /
               ((dc1 + dj) * (dc2 + dj) * dj);
    }
};

// Running product kept as mantissa * 2^exponent so a long run of large or
// small ratios cannot overflow or underflow before the final value is formed.
struct ScaledProduct {
    double mantissa = 1.0;
    int exponent = 0;

    void multiply(double f) {
        mantissa *= f;
        const double mag = std::fabs(mantissa);
        if (mantissa != 0.0 && (mag > 1e150 || mag < 1e-150)) {
            int e = 0;
            mantissa = std::frexp(mantissa, &e);
            exponent += e;
        }
    }
    double value() const { return std::ldexp(mantissa, exponent); }
};

}  // namespace

OperatorParams OperatorParams::from_moduli(double a_mod, double b_mod, double c) {
    OperatorParams p;
    p.a_mod = a_mod;
    p.b_mod = b_mod;
    p.c = c;
    return p;
}

OperatorParams OperatorParams::from_complex(std::complex<double> a,
                                            std::complex<double> b, double c) {
    OperatorParams p;
    p.a_mod = std::abs(a);
    p.b_mod = std::abs(b);
    p.c = c;
    p.raw_a = a;
    p.raw_b = b;
    return p;
}

void OperatorParams::validate() const {
    if (!std::isfinite(a_mod) || !std::isfinite(b_mod) || !std::isfinite(c))
        throw DomainError("OperatorParams: parameters must be finite");
    if (!(a_mod > 0.0)) throw DomainError("OperatorParams: |a| must be > 0");
    if (!(b_mod > 0.0)) throw DomainError("OperatorParams: |b| must be > 0");
}

ClassSpec ClassSpec::starlike(double lambda) { return {ClassKind::StarlikeLambda, lambda}; }
ClassSpec ClassSpec::convex(double lambda) { return {ClassKind::ConvexLambda, lambda}; }
ClassSpec ClassSpec::ucv() { return {ClassKind::UCV, std::nullopt}; }
ClassSpec ClassSpec::sp() { return {ClassKind::Sp, std::nullopt}; }

void ClassSpec::validate() const {
    const bool wants_lambda =
        kind == ClassKind::StarlikeLambda || kind == ClassKind::ConvexLambda;
    if (wants_lambda != lambda.has_value())
        throw DomainError(wants_lambda
                              ? "ClassSpec: this class requires lambda"
                              : "ClassSpec: this class does not take lambda");
    if (lambda && !(*lambda > 0.0 && *lambda <= 1.0 && std::isfinite(*lambda)))
        throw DomainError("ClassSpec: lambda must lie in (0, 1]");
}

SourceSpec SourceSpec::self_function() { return {SourceKind::SelfFunction, std::nullopt}; }
SourceSpec SourceSpec::r_beta(double beta) { return {SourceKind::RBeta, beta}; }
SourceSpec SourceSpec::full_class_s() { return {SourceKind::FullClassS, std::nullopt}; }

void SourceSpec::validate() const {
    const bool wants_beta = kind == SourceKind::RBeta;
    if (wants_beta != beta.has_value())
        throw DomainError(wants_beta ? "SourceSpec: R(beta) requires beta"
                                     : "SourceSpec: this source does not take beta");
    if (beta && !(*beta >= 0.0 && *beta < 1.0 && std::isfinite(*beta)))
        throw DomainError("SourceSpec: beta must lie in [0, 1)");
}

double hyper_coefficient(const OperatorParams& params, std::int64_t n) {
    params.validate();
    if (n < 1) throw DomainError("hyper_coefficient: index must be >= 1");
    const CoefficientRecurrence rec(params);
    ScaledProduct prod;
    for (std::int64_t j = 1; j < n; ++j) prod.multiply(rec.step(j));
    return prod.value();
}

std::vector<double> hyper_coefficients(const OperatorParams& params, std::int64_t count) {
    params.validate();
    if (count < 1) throw DomainError("hyper_coefficients: count must be >= 1");
    const CoefficientRecurrence rec(params);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    ScaledProduct prod;
    out.push_back(prod.value());
    for (std::int64_t j = 1; j < count; ++j) {
        prod.multiply(rec.step(j));
        out.push_back(prod.value());
    }
    return out;
}

CoefficientSeries apply_operator(const OperatorParams& params,
                                 std::span<const double> f_coefficients) {
    params.validate();
    if (f_coefficients.empty())
        throw NormalizationError("apply_operator: coefficient list is empty");
    if (f_coefficients[0] != 1.0)
        throw NormalizationError("apply_operator: a_1 must equal 1 (normalized function)");
    CoefficientSeries out;
    out.params = params;
    out.coefficients.reserve(f_coefficients.size());
    const CoefficientRecurrence rec(params);
    ScaledProduct prod;
    out.coefficients.push_back(f_coefficients[0]);
    for (std::size_t k = 1; k < f_coefficients.size(); ++k) {
        prod.multiply(rec.step(static_cast<std::int64_t>(k)));
        out.coefficients.push_back(prod.value() * f_coefficients[k]);
    }
    return out;
}

double coefficient_bound(const SourceSpec& source, std::int64_t n) {
    source.validate();
    if (n < 2) throw DomainError("coefficient_bound: index must be >= 2");
    switch (source.kind) {
        case SourceKind::SelfFunction: return 1.0;
        case SourceKind::FullClassS: return static_cast<double>(n);
        case SourceKind::RBeta: return 2.0 * (1.0 - *source.beta) / static_cast<double>(n);
    }
    throw DomainError("coefficient_bound: unknown source kind");
}

int worst_case_degree(const ClassSpec& target, const SourceSpec& source) {
    target.validate();
    source.validate();
    int deg = 0;
    switch (target.kind) {
        case ClassKind::StarlikeLambda: deg = 1; break;
        case ClassKind::ConvexLambda: deg = 2; break;
        case ClassKind::UCV: deg = 2; break;
        case ClassKind::Sp: deg = 1; break;
    }
    switch (source.kind) {
        case SourceKind::SelfFunction: break;
        case SourceKind::FullClassS: deg += 1; break;
        case SourceKind::RBeta: deg -= 1; break;
    }
    return deg;
}

SeriesValue worst_case_T(const ClassSpec& target, const SourceSpec& source,
                         const OperatorParams& params, const EvalConfig& cfg) {
    cfg.validate();
    params.validate();
    const int deg = worst_case_degree(target, source);  // validates target/source

    const double a = params.a_mod, b = params.b_mod, c = params.c;
    if (c <= cfg.delta)
        throw PoleProximityError("worst_case_T: c must exceed delta", c);
    const double margin = c - a - b - static_cast<double>(deg);
    if (margin <= cfg.delta) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "worst_case_T: series margin c-|a|-|b|-%d at or below delta (got %.17g)",
                      deg, margin);
        throw PoleProximityError(buf, margin);
    }

    // Term ratio of w_n * bound_n * B_n at n = m+2, factored as offsets in m.
    // Base part: B_{n+1}/B_n.
    HyperTermRatio ratio{{a + 1.0, 0.5 * b + 1.0, 0.5 * (b + 1.0) + 1.0},
                         {0.5 * c + 1.0, 0.5 * (c + 1.0) + 1.0, 2.0},
                         1.0};
    double w2 = 0.0;
    switch (target.kind) {
        case ClassKind::StarlikeLambda: {
            const double lam = *target.lambda;
            ratio.num.push_back(lam + 2.0);
            ratio.den.push_back(lam + 1.0);
            w2 = 1.0 + lam;
            break;
        }
        case ClassKind::ConvexLambda: {
            const double lam = *target.lambda;
            ratio.num.insert(ratio.num.end(), {3.0, lam + 2.0});
            ratio.den.insert(ratio.den.end(), {2.0, lam + 1.0});
            w2 = 2.0 * (1.0 + lam);
            break;
        }
        case ClassKind::UCV:
            ratio.num.insert(ratio.num.end(), {3.0, 2.5});
            ratio.den.insert(ratio.den.end(), {2.0, 1.5});
            w2 = 6.0;
            break;
        case ClassKind::Sp:
            ratio.num.push_back(2.5);
            ratio.den.push_back(1.5);
            w2 = 3.0;
            break;
    }
    double bnd2 = 1.0;
    switch (source.kind) {
        case SourceKind::SelfFunction: break;
        case SourceKind::FullClassS:
            ratio.num.push_back(3.0);
            ratio.den.push_back(2.0);
            bnd2 = 2.0;
            break;
        case SourceKind::RBeta:
            ratio.num.push_back(2.0);
            ratio.den.push_back(3.0);
            bnd2 = 1.0 - *source.beta;
            break;
    }

    const double b2 = a * (0.5 * b) * (0.5 * (b + 1.0)) /
                      ((0.5 * c) * (0.5 * (c + 1.0)));
    return sum_positive_hyper_series(w2 * bnd2 * b2, ratio, cfg);
}

}  // namespace hohlov
