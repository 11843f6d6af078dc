#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hohlov {

// Thrown when an argument is outside a function's mathematical domain
// (nonpositive Gamma argument, negative series parameter where one is
// required, and so on).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Domain violation caused by sitting within `delta` of a pole or of a
// strict-inequality boundary; `margin` is the (possibly negative) distance.
struct PoleProximityError : DomainError {
    PoleProximityError(const std::string& what, double margin_)
        : DomainError(what), margin(margin_) {}
    double margin;
};

// A coefficient sequence that does not describe a normalized function
// (f(0) = 0, f'(0) = 1 requires a_1 == 1).
struct NormalizationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested a certificate family that is not defined for the target class
// (e.g. a full-class-S membership certificate for UCV).
struct UnsupportedTheoremError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Tolerances and budgets shared by every series evaluation.
struct EvalConfig {
    double rel_tol = 1e-12;           // relative stopping tolerance
    double abs_tol = 1e-14;           // absolute stopping tolerance
    std::int64_t max_terms = 200000;  // hard cap on summed terms
    double delta = 1e-9;              // minimum distance from strict boundaries

    void validate() const {
        if (!(rel_tol > 0.0)) throw DomainError("EvalConfig: rel_tol must be > 0");
        if (!(abs_tol > 0.0)) throw DomainError("EvalConfig: abs_tol must be > 0");
        if (max_terms < 10) throw DomainError("EvalConfig: max_terms must be >= 10");
        if (!(delta > 0.0)) throw DomainError("EvalConfig: delta must be > 0");
    }
};

// Result of a series evaluation: the summed value plus an a-posteriori
// certificate of its accuracy.
struct SeriesValue {
    double value = 0.0;
    std::int64_t terms_used = 0;  // number of terms actually added (>= 1)
    double tail_bound = 0.0;      // bound on the truncation error, >= 0
    bool converged = false;       // tail_bound <= max(abs_tol, rel_tol*|value|)
};

}  // namespace hohlov
