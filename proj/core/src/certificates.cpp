#include "hohlov/certificates.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hohlov/specfun.hpp"

namespace hohlov {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::array<TheoremTraits, 12> kTraits = {{
    {TheoremId::T2_1, ClassKind::StarlikeLambda, SourceKind::SelfFunction, true, false, 1, false},
    {TheoremId::T2_2, ClassKind::StarlikeLambda, SourceKind::RBeta, true, true, 0, true},
    {TheoremId::COR2, ClassKind::StarlikeLambda, SourceKind::RBeta, false, true, 0, false},
    {TheoremId::T2_3, ClassKind::StarlikeLambda, SourceKind::FullClassS, true, false, 2, false},
    {TheoremId::T3_1, ClassKind::ConvexLambda, SourceKind::SelfFunction, true, false, 2, false},
    {TheoremId::T3_2, ClassKind::ConvexLambda, SourceKind::RBeta, true, true, 1, false},
    {TheoremId::T3_3, ClassKind::ConvexLambda, SourceKind::FullClassS, true, false, 3, false},
    {TheoremId::T4_1, ClassKind::UCV, SourceKind::SelfFunction, false, false, 2, false},
    {TheoremId::T4_2, ClassKind::UCV, SourceKind::RBeta, false, true, 1, false},
    {TheoremId::T5_1, ClassKind::Sp, SourceKind::SelfFunction, false, false, 1, false},
    {TheoremId::T5_2, ClassKind::Sp, SourceKind::RBeta, false, true, 0, true},
    {TheoremId::T5_3, ClassKind::Sp, SourceKind::FullClassS, false, false, 2, false},
}};

// The shifted 2F1 values entering the closed forms.
double f_shift(const OperatorParams& p, int k, const EvalConfig& cfg, bool& converged) {
    SeriesValue v = gauss_2f1_at_minus_one(p.a_mod + k, p.b_mod + 2.0 * k,
                                           p.c - p.a_mod + static_cast<double>(k), cfg);
    converged = converged && v.converged;
    return v.value;
}

double f_shifted_down(const OperatorParams& p, const EvalConfig& cfg, bool& converged) {
    SeriesValue v = gauss_2f1_at_minus_one(p.a_mod - 1.0, p.b_mod - 2.0,
                                           p.c - p.a_mod - 1.0, cfg);
    converged = converged && v.converged;
    return v.value;
}

double coeff1(const OperatorParams& p) {
    return p.a_mod * pochhammer(p.b_mod, 2) /
           ((p.c - p.a_mod) * (p.c - p.a_mod - p.b_mod - 1.0));
}
double coeff2(const OperatorParams& p) {
    return pochhammer(p.a_mod, 2) * pochhammer(p.b_mod, 4) /
           (pochhammer(p.c - p.a_mod, 2) * pochhammer(p.c - p.a_mod - p.b_mod - 2.0, 2));
}
double coeff3(const OperatorParams& p) {
    return pochhammer(p.a_mod, 3) * pochhammer(p.b_mod, 6) /
           (pochhammer(p.c - p.a_mod, 3) * pochhammer(p.c - p.a_mod - p.b_mod - 3.0, 3));
}
double shift_ratio_K(const OperatorParams& p) {
    return (p.c - p.a_mod - 1.0) * (p.c - p.a_mod - p.b_mod) /
           ((p.a_mod - 1.0) * (p.b_mod - 1.0) * (p.b_mod - 2.0));
}
double shift_offset_D(const OperatorParams& p) {
    return (p.c - 1.0) * (p.c - 2.0) /
           ((p.a_mod - 1.0) * (p.b_mod - 1.0) * (p.b_mod - 2.0));
}

std::vector<PreconditionCheck> build_preconditions(const TheoremTraits& tr,
                                                   const OperatorParams& p,
                                                   std::optional<double> lambda,
                                                   std::optional<double> beta,
                                                   double delta) {
    const double a = p.a_mod, b = p.b_mod, c = p.c;
    std::vector<PreconditionCheck> rows;
    rows.push_back({"|a| > 0", "> 0", a, a > 0.0});
    rows.push_back({"|b| > 0", "> 0", b, b > 0.0});
    rows.push_back({"c > 0", "> delta", c, c > delta});
    {
        char name[40];
        if (tr.margin_degree == 0)
            std::snprintf(name, sizeof name, "c > |a|+|b|");
        else
            std::snprintf(name, sizeof name, "c > |a|+|b|+%d", tr.margin_degree);
        const double margin = c - a - b - static_cast<double>(tr.margin_degree);
        rows.push_back({name, "> delta", margin, margin > delta});
    }
    if (tr.uses_shifted_terms) {
        rows.push_back({"|a| != 1", "> delta", std::fabs(a - 1.0), std::fabs(a - 1.0) > delta});
        rows.push_back({"|b| != 1", "> delta", std::fabs(b - 1.0), std::fabs(b - 1.0) > delta});
        rows.push_back({"|b| != 2", "> delta", std::fabs(b - 2.0), std::fabs(b - 2.0) > delta});
        const double edge = c - std::max(a + 1.0, a + b - 1.0);
        rows.push_back({"c > max(|a|+1, |a|+|b|-1)", "> delta", edge, edge > delta});
    }
    if (tr.has_lambda) {
        rows.push_back({"lambda > 0", "> 0", *lambda, *lambda > 0.0});
        rows.push_back({"lambda <= 1", ">= 0", 1.0 - *lambda, 1.0 - *lambda >= 0.0});
    }
    if (tr.has_beta) {
        rows.push_back({"beta >= 0", ">= 0", *beta, *beta >= 0.0});
        rows.push_back({"beta < 1", "> delta", 1.0 - *beta, 1.0 - *beta > delta});
    }
    return rows;
}

}  // namespace

std::string theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::T2_1: return "T2.1";
        case TheoremId::T2_2: return "T2.2";
        case TheoremId::COR2: return "COR2";
        case TheoremId::T2_3: return "T2.3";
        case TheoremId::T3_1: return "T3.1";
        case TheoremId::T3_2: return "T3.2";
        case TheoremId::T3_3: return "T3.3";
        case TheoremId::T4_1: return "T4.1";
        case TheoremId::T4_2: return "T4.2";
        case TheoremId::T5_1: return "T5.1";
        case TheoremId::T5_2: return "T5.2";
        case TheoremId::T5_3: return "T5.3";
    }
    throw UnsupportedTheoremError("unknown theorem id");
}

std::optional<TheoremId> parse_theorem(const std::string& text) {
    std::string norm;
    norm.reserve(text.size());
    for (char ch : text) {
        if (ch == '_') ch = '.';
        norm.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    }
    for (const TheoremTraits& tr : kTraits)
        if (norm == theorem_name(tr.id)) return tr.id;
    return std::nullopt;
}

std::vector<TheoremId> all_theorems() {
    std::vector<TheoremId> out;
    out.reserve(kTraits.size());
    for (const TheoremTraits& tr : kTraits) out.push_back(tr.id);
    return out;
}

const TheoremTraits& theorem_traits(TheoremId id) {
    for (const TheoremTraits& tr : kTraits)
        if (tr.id == id) return tr;
    throw UnsupportedTheoremError("unknown theorem id");
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "Holds";
        case Verdict::Fails: return "Fails";
        case Verdict::PreconditionViolated: return "PreconditionViolated";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    throw DomainError("unknown verdict");
}

std::vector<PreconditionCheck> precondition_template(TheoremId id) {
    const TheoremTraits& tr = theorem_traits(id);
    const OperatorParams blank = OperatorParams::from_moduli(kNaN, kNaN, kNaN);
    const std::optional<double> lam = tr.has_lambda ? std::optional<double>(kNaN) : std::nullopt;
    const std::optional<double> bet = tr.has_beta ? std::optional<double>(kNaN) : std::nullopt;
    return build_preconditions(tr, blank, lam, bet, EvalConfig{}.delta);
}

Certificate evaluate_certificate(TheoremId id, const OperatorParams& params,
                                 std::optional<double> lambda,
                                 std::optional<double> beta, const EvalConfig& cfg) {
    cfg.validate();
    const TheoremTraits& tr = theorem_traits(id);
    if (tr.has_lambda != lambda.has_value())
        throw std::invalid_argument(theorem_name(id) +
                                    (tr.has_lambda ? " requires lambda" : " does not take lambda"));
    if (tr.has_beta != beta.has_value())
        throw std::invalid_argument(theorem_name(id) +
                                    (tr.has_beta ? " requires beta" : " does not take beta"));
    if (lambda && !std::isfinite(*lambda))
        throw std::invalid_argument("lambda must be finite");
    if (beta && !std::isfinite(*beta)) throw std::invalid_argument("beta must be finite");
    if (!std::isfinite(params.a_mod) || !std::isfinite(params.b_mod) ||
        !std::isfinite(params.c))
        throw DomainError("evaluate_certificate: parameters must be finite");

    Certificate cert;
    cert.theorem = id;
    cert.params = params;
    cert.lambda = id == TheoremId::COR2 ? std::optional<double>(1.0) : lambda;
    cert.beta = beta;
    cert.preconditions = build_preconditions(tr, params, lambda, beta, cfg.delta);
    cert.lhs = kNaN;
    cert.rhs = kNaN;
    cert.margin = kNaN;

    for (const PreconditionCheck& row : cert.preconditions) {
        if (!row.pass) {
            cert.verdict = Verdict::PreconditionViolated;
            return cert;
        }
    }

    const OperatorParams& p = params;
    const double G = gamma_prefactor(p.a_mod, p.b_mod, p.c, cfg.delta);
    bool conv = true;
    const double lam = lambda.value_or(1.0);
    const double bet = beta.value_or(0.0);
    double lhs = kNaN, rhs = kNaN;

    switch (id) {
        case TheoremId::T2_1: {
            const double F0 = f_shift(p, 0, cfg, conv), F1 = f_shift(p, 1, cfg, conv);
            lhs = G * (coeff1(p) * F1 + lam * F0);
            rhs = 2.0 * lam;
            break;
        }
        case TheoremId::T2_2: {
            const double F0 = f_shift(p, 0, cfg, conv);
            const double Fm = f_shifted_down(p, cfg, conv);
            lhs = G * ((lam - 1.0) * shift_ratio_K(p) * Fm + F0);
            rhs = lam * (1.0 + 1.0 / (2.0 * (1.0 - bet))) + (lam - 1.0) * shift_offset_D(p);
            break;
        }
        case TheoremId::COR2: {
            const double F0 = f_shift(p, 0, cfg, conv);
            lhs = G * F0;
            rhs = 1.0 + 1.0 / (2.0 * (1.0 - bet));
            break;
        }
        case TheoremId::T2_3:
        case TheoremId::T3_1: {
            const double F0 = f_shift(p, 0, cfg, conv), F1 = f_shift(p, 1, cfg, conv);
            const double F2 = f_shift(p, 2, cfg, conv);
            lhs = G * (coeff2(p) * F2 + (lam + 2.0) * coeff1(p) * F1 + lam * F0);
            rhs = 2.0 * lam;
            break;
        }
        case TheoremId::T3_2: {
            const double F0 = f_shift(p, 0, cfg, conv), F1 = f_shift(p, 1, cfg, conv);
            lhs = G * (coeff1(p) * F1 + lam * F0);
            rhs = lam * (1.0 / (2.0 * (1.0 - bet)) + 1.0);
            break;
        }
        case TheoremId::T3_3: {
            const double F0 = f_shift(p, 0, cfg, conv), F1 = f_shift(p, 1, cfg, conv);
            const double F2 = f_shift(p, 2, cfg, conv), F3 = f_shift(p, 3, cfg, conv);
            lhs = G * (coeff3(p) * F3 + (lam + 5.0) * coeff2(p) * F2 +
                       (3.0 * lam + 4.0) * coeff1(p) * F1 + lam * F0);
            rhs = 2.0 * lam;
            break;
        }
        case TheoremId::T4_1:
        case TheoremId::T5_3: {
            const double F0 = f_shift(p, 0, cfg, conv), F1 = f_shift(p, 1, cfg, conv);
            const double F2 = f_shift(p, 2, cfg, conv);
            lhs = G * (2.0 * coeff2(p) * F2 + 5.0 * coeff1(p) * F1 + F0);
            rhs = 2.0;
            break;
        }
        case TheoremId::T4_2: {
            const double F0 = f_shift(p, 0, cfg, conv), F1 = f_shift(p, 1, cfg, conv);
            lhs = G * (2.0 * coeff1(p) * F1 + F0);
            rhs = 1.0 / (2.0 * (1.0 - bet)) + 1.0;
            break;
        }
        case TheoremId::T5_1: {
            const double F0 = f_shift(p, 0, cfg, conv), F1 = f_shift(p, 1, cfg, conv);
            lhs = G * (2.0 * coeff1(p) * F1 + F0);
            rhs = 2.0;
            break;
        }
        case TheoremId::T5_2: {
            const double F0 = f_shift(p, 0, cfg, conv);
            const double Fm = f_shifted_down(p, cfg, conv);
            lhs = G * (2.0 * F0 + shift_ratio_K(p) * Fm) + shift_offset_D(p);
            rhs = 1.0 / (2.0 * (1.0 - bet)) + 1.0;
            break;
        }
    }

    cert.lhs = lhs;
    cert.rhs = rhs;
    cert.margin = rhs - lhs;
    if (!conv || !std::isfinite(cert.margin)) {
        cert.verdict = Verdict::Inconclusive;
    } else if (std::fabs(cert.margin) <= kInconclusiveBand * std::max(1.0, std::fabs(rhs))) {
        cert.verdict = Verdict::Inconclusive;
    } else {
        cert.verdict = cert.margin > 0.0 ? Verdict::Holds : Verdict::Fails;
    }
    return cert;
}

Certificate check_direct(const ClassSpec& target, const OperatorParams& params,
                         const EvalConfig& cfg) {
    target.validate();
    switch (target.kind) {
        case ClassKind::StarlikeLambda:
            return evaluate_certificate(TheoremId::T2_1, params, target.lambda, {}, cfg);
        case ClassKind::ConvexLambda:
            return evaluate_certificate(TheoremId::T3_1, params, target.lambda, {}, cfg);
        case ClassKind::UCV:
            return evaluate_certificate(TheoremId::T4_1, params, {}, {}, cfg);
        case ClassKind::Sp:
            return evaluate_certificate(TheoremId::T5_1, params, {}, {}, cfg);
    }
    throw DomainError("check_direct: unknown class kind");
}

Certificate check_from_R_beta(const ClassSpec& target, double beta,
                              const OperatorParams& params, const EvalConfig& cfg,
                              bool use_corollary) {
    target.validate();
    switch (target.kind) {
        case ClassKind::StarlikeLambda:
            if (use_corollary) {
                if (*target.lambda != 1.0)
                    throw std::invalid_argument(
                        "check_from_R_beta: the corollary form fixes lambda = 1");
                return evaluate_certificate(TheoremId::COR2, params, {}, beta, cfg);
            }
            return evaluate_certificate(TheoremId::T2_2, params, target.lambda, beta, cfg);
        case ClassKind::ConvexLambda:
            return evaluate_certificate(TheoremId::T3_2, params, target.lambda, beta, cfg);
        case ClassKind::UCV:
            return evaluate_certificate(TheoremId::T4_2, params, {}, beta, cfg);
        case ClassKind::Sp:
            return evaluate_certificate(TheoremId::T5_2, params, {}, beta, cfg);
    }
    throw DomainError("check_from_R_beta: unknown class kind");
}

Certificate check_from_S(const ClassSpec& target, const OperatorParams& params,
                         const EvalConfig& cfg) {
    target.validate();
    switch (target.kind) {
        case ClassKind::StarlikeLambda:
            return evaluate_certificate(TheoremId::T2_3, params, target.lambda, {}, cfg);
        case ClassKind::ConvexLambda:
            return evaluate_certificate(TheoremId::T3_3, params, target.lambda, {}, cfg);
        case ClassKind::UCV:
            throw UnsupportedTheoremError(
                "check_from_S: no full-class-S membership certificate exists for UCV");
        case ClassKind::Sp:
            return evaluate_certificate(TheoremId::T5_3, params, {}, {}, cfg);
    }
    throw DomainError("check_from_S: unknown class kind");
}

ClassSpec certificate_class(TheoremId id, std::optional<double> lambda) {
    const TheoremTraits& tr = theorem_traits(id);
    switch (tr.target) {
        case ClassKind::StarlikeLambda: return ClassSpec::starlike(lambda.value_or(1.0));
        case ClassKind::ConvexLambda: return ClassSpec::convex(lambda.value_or(1.0));
        case ClassKind::UCV: return ClassSpec::ucv();
        case ClassKind::Sp: return ClassSpec::sp();
    }
    throw DomainError("certificate_class: unknown class kind");
}

SourceSpec certificate_source(TheoremId id, std::optional<double> beta) {
    const TheoremTraits& tr = theorem_traits(id);
    switch (tr.source) {
        case SourceKind::SelfFunction: return SourceSpec::self_function();
        case SourceKind::RBeta: return SourceSpec::r_beta(beta.value_or(0.0));
        case SourceKind::FullClassS: return SourceSpec::full_class_s();
    }
    throw DomainError("certificate_source: unknown source kind");
}

double certificate_budget(TheoremId id, std::optional<double> lambda) {
    const TheoremTraits& tr = theorem_traits(id);
    if (tr.target == ClassKind::StarlikeLambda || tr.target == ClassKind::ConvexLambda)
        return lambda.value_or(1.0);
    return 1.0;
}

Certificate cross_validate(Certificate cert, const EvalConfig& cfg) {
    if (cert.verdict != Verdict::Holds && cert.verdict != Verdict::Fails) return cert;
    const ClassSpec cls = certificate_class(cert.theorem, cert.lambda);
    const SourceSpec src = certificate_source(cert.theorem, cert.beta);
    cert.oracle_T = worst_case_T(cls, src, cert.params, cfg);
    return cert;
}

std::optional<double> soundness_excess(const Certificate& cert, double slack) {
    if (cert.verdict != Verdict::Holds) return std::nullopt;
    if (!cert.oracle_T || !cert.oracle_T->converged) return std::nullopt;
    const double budget = certificate_budget(cert.theorem, cert.lambda);
    if (cert.oracle_T->value > budget + slack) return cert.oracle_T->value - budget;
    return std::nullopt;
}

double t5_2_alternate_lhs(const OperatorParams& params, const EvalConfig& cfg) {
    cfg.validate();
    const TheoremTraits& tr = theorem_traits(TheoremId::T5_2);
    for (const PreconditionCheck& row :
         build_preconditions(tr, params, std::nullopt, 0.0, cfg.delta)) {
        if (!row.pass) throw PoleProximityError("t5_2_alternate_lhs: " + row.name, row.margin);
    }
    bool conv = true;
    const double G = gamma_prefactor(params.a_mod, params.b_mod, params.c, cfg.delta);
    const double F0 = f_shift(params, 0, cfg, conv);
    const double Fm = f_shifted_down(params, cfg, conv);
    return G * (2.0 * F0 - shift_ratio_K(params) * Fm) + shift_offset_D(params);
}

}  // namespace hohlov
