#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hohlov/config.hpp"
#include "hohlov/operator.hpp"

namespace hohlov {

// The twelve sufficient-condition certificates.  Naming follows the CLI ids
// (T<chapter>.<number>, plus the lambda=1 corollary COR2).
enum class TheoremId {
    T2_1,  // z*3F2 in S*_lambda
    T2_2,  // f in R(beta)  => transform in S*_lambda
    COR2,  // T2_2 at lambda = 1
    T2_3,  // f in S        => transform in S*_lambda
    T3_1,  // z*3F2 in C_lambda
    T3_2,  // f in R(beta)  => transform in C_lambda
    T3_3,  // f in S        => transform in C_lambda
    T4_1,  // z*3F2 in UCV
    T4_2,  // f in R(beta)  => transform in UCV
    T5_1,  // z*3F2 in S_p
    T5_2,  // f in R(beta)  => transform in S_p
    T5_3,  // f in S        => transform in S_p
};

// "T2.1", "COR2", ...
std::string theorem_name(TheoremId id);
// Accepts "T2.1", "T2_1", "COR2" (case-insensitive); nullopt when unknown.
std::optional<TheoremId> parse_theorem(const std::string& text);
std::vector<TheoremId> all_theorems();

struct TheoremTraits {
    TheoremId id;
    ClassKind target;
    SourceKind source;
    bool has_lambda;
    bool has_beta;
    int margin_degree;        // precondition c > |a|+|b|+margin_degree
    bool uses_shifted_terms;  // part-4 style factors: a != 1, b != 1, 2, ...
};
const TheoremTraits& theorem_traits(TheoremId id);

enum class Verdict { Holds, Fails, PreconditionViolated, Inconclusive };
std::string verdict_name(Verdict v);

// One admissibility condition: `margin` is the signed distance from the
// boundary and `pass` its comparison against the required distance.
struct PreconditionCheck {
    std::string name;      // e.g. "c > |a|+|b|+1"
    std::string required;  // e.g. ">= delta"
    double margin;
    bool pass;
};

// Everything `check` reports for one (theorem, parameter) query.  lhs/rhs are
// NaN when preconditions fail (no series is evaluated then).  margin is
// rhs - lhs; |margin| <= 1e-10*max(1,|rhs|) is Inconclusive, as is any
// non-converged internal series.
struct Certificate {
    TheoremId theorem;
    OperatorParams params;
    std::optional<double> lambda;
    std::optional<double> beta;
    std::vector<PreconditionCheck> preconditions;
    double lhs;
    double rhs;
    double margin;
    Verdict verdict;
    std::optional<SeriesValue> oracle_T;  // attached by cross_validate
};

// Resolution band inside which a verdict is Inconclusive.
inline constexpr double kInconclusiveBand = 1e-10;

// The theorem's precondition rows without a parameter point: names and
// required-distance strings only (margins NaN, pass false).  Used for usage
// messages that must show the table before any parameters are known.
std::vector<PreconditionCheck> precondition_template(TheoremId id);

// Evaluate one certificate.  lambda/beta must be present exactly when the
// theorem uses them (std::invalid_argument otherwise).
Certificate evaluate_certificate(TheoremId id, const OperatorParams& params,
                                 std::optional<double> lambda,
                                 std::optional<double> beta,
                                 const EvalConfig& cfg = {});

// Class-keyed conveniences mapping onto the theorem table.
Certificate check_direct(const ClassSpec& target, const OperatorParams& params,
                         const EvalConfig& cfg = {});
// use_corollary selects COR2 (lambda pinned to 1) instead of T2.2 for the
// starlike target.
Certificate check_from_R_beta(const ClassSpec& target, double beta,
                              const OperatorParams& params,
                              const EvalConfig& cfg = {},
                              bool use_corollary = false);
// Throws UnsupportedTheoremError for UCV (no such certificate family exists).
Certificate check_from_S(const ClassSpec& target, const OperatorParams& params,
                         const EvalConfig& cfg = {});

// Class/source specs implied by a theorem id (lambda/beta filled from the
// certificate's inputs; COR2 pins lambda = 1).
ClassSpec certificate_class(TheoremId id, std::optional<double> lambda);
SourceSpec certificate_source(TheoremId id, std::optional<double> beta);

// Budget the worst-case sum is measured against: lambda for the two
// lambda-indexed classes (1 for COR2), otherwise 1.
double certificate_budget(TheoremId id, std::optional<double> lambda);

// Re-derives worst_case_T for the certificate's class/source and attaches it.
// Requires verdict Holds or Fails (returned unchanged otherwise).
Certificate cross_validate(Certificate cert, const EvalConfig& cfg = {});

// Amount by which an attached, converged oracle exceeds the budget for a
// certificate that claims Holds; nullopt when there is nothing to flag.
// A positive value exposes an unsound sufficient condition (see T5.2).
std::optional<double> soundness_excess(const Certificate& cert,
                                       double slack = 1e-8);

// T5.2's left-hand side with the opposite sign on its shifted-series
// correction term: G*(2*F0 - K*Fm) + D instead of the stated "+".  The stated
// form is what evaluate_certificate reports; this variant is reported
// alongside it wherever the oracle contradicts the stated verdict.
double t5_2_alternate_lhs(const OperatorParams& params, const EvalConfig& cfg = {});

}  // namespace hohlov
