#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hohlov/config.hpp"

namespace hohlov {

// Parameters (a, b, c) of the convolution operator z*3F2(...) * f.  The
// operator's coefficients depend on complex a, b only through their moduli,
// so the moduli are what we store; the raw values are kept for provenance.
struct OperatorParams {
    double a_mod = 0.0;
    double b_mod = 0.0;
    double c = 0.0;
    std::optional<std::complex<double>> raw_a;
    std::optional<std::complex<double>> raw_b;

    static OperatorParams from_moduli(double a_mod, double b_mod, double c);
    static OperatorParams from_complex(std::complex<double> a,
                                       std::complex<double> b, double c);
    void validate() const;  // a_mod > 0, b_mod > 0, all finite
};

enum class ClassKind { StarlikeLambda, ConvexLambda, UCV, Sp };

// Target geometric function class; lambda is required for the two
// lambda-indexed classes and forbidden otherwise.
struct ClassSpec {
    ClassKind kind;
    std::optional<double> lambda;

    static ClassSpec starlike(double lambda);
    static ClassSpec convex(double lambda);
    static ClassSpec ucv();
    static ClassSpec sp();
    void validate() const;  // lambda in (0, 1] where present
};

enum class SourceKind { SelfFunction, RBeta, FullClassS };

// Hypothesis on the source function f; beta is required for RBeta only.
struct SourceSpec {
    SourceKind kind;
    std::optional<double> beta;

    static SourceSpec self_function();
    static SourceSpec r_beta(double beta);
    static SourceSpec full_class_s();
    void validate() const;  // beta in [0, 1) where present
};

// Taylor coefficients A_1..A_N of the transformed function.
struct CoefficientSeries {
    OperatorParams params;
    std::vector<double> coefficients;  // coefficients[k] = A_{k+1}, A_1 = 1
};

// Operator coefficient B_n (B_1 = 1).  Computed by the incremental ratio
//   B_{n+1}/B_n = (a+n-1)(b/2+n-1)((b+1)/2+n-1) / ((c/2+n-1)((c+1)/2+n-1) n)
// on a scaled mantissa*2^exp representation so intermediate products cannot
// overflow or flush to zero prematurely.  n >= 1.
double hyper_coefficient(const OperatorParams& params, std::int64_t n);

// B_1..B_N in one pass (same recurrence).
std::vector<double> hyper_coefficients(const OperatorParams& params, std::int64_t count);

// A_n = B_n * a_n for a normalized coefficient sequence (a_1 == 1).
CoefficientSeries apply_operator(const OperatorParams& params,
                                 std::span<const double> f_coefficients);

// Sharp bound on |a_n| under the source hypothesis: 1 for a self-coefficient
// target, n for full class S, 2(1-beta)/n for R(beta).  n >= 2.
double coefficient_bound(const SourceSpec& source, std::int64_t n);

// Worst-case weighted coefficient sum
//     T = sum_{n>=2} w_n * bound_n * B_n
// with class weights w_n = (n+lambda-1), n(n+lambda-1), n(2n-1), (2n-1) for
// S*_lambda, C_lambda, UCV, S_p.  Certifying T <= budget (lambda or 1) is the
// sufficient condition every certificate in this library discharges; this is
// the independent oracle the certificates are cross-checked against.
// Requires the weighted series to converge: c - a - b - degree > delta,
// where degree is the polynomial growth of w_n * bound_n.
SeriesValue worst_case_T(const ClassSpec& target, const SourceSpec& source,
                         const OperatorParams& params, const EvalConfig& cfg = {});

// The margin degree used by worst_case_T's convergence precondition.
int worst_case_degree(const ClassSpec& target, const SourceSpec& source);

}  // namespace hohlov
