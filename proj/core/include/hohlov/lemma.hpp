#pragma once

#include "hohlov/config.hpp"

namespace hohlov {

// The four weighted-sum identities for t_n = (a)_n(b/2)_n((b+1)/2)_n /
// ((c/2)_n((c+1)/2)_n(1)_n):
//   One:   sum (n+1)   t_n      (requires c > a+b+1)
//   Two:   sum (n+1)^2 t_n      (requires c > a+b+2)
//   Three: sum (n+1)^3 t_n      (requires c > a+b+3)
//   Four:  sum t'_n/(1)_{n+1}, the shifted-parameter sum with a-1, b-2
//          (requires a != 1, b != 1, 2, and c > max(a+1, a+b))
enum class LemmaPart : int { One = 1, Two = 2, Three = 3, Four = 4 };

LemmaPart lemma_part_from_int(int part);

// Closed form of the selected sum, assembled from the Gamma prefactor and
// shifted 2F1(-1) values exactly as the identities state them.  Throws
// PoleProximityError when a pole factor is within delta.
double lemma_sum_closed(LemmaPart part, double a, double b, double c,
                        const EvalConfig& cfg = {});

// Part Four's closed form printed two equivalent ways; both are exposed so
// the suite can confirm they agree with each other and with the brute sum.
//   statement_form: G*K'*2F1(a-1,b-2;c-a-1;-1) - (c-2)_2/((a-1)(b-2)_2)
//   proof_form:     G*K'*2F1(a-1,b-2;c-a-1;-1) - (c-1)(c-2)/((a-1)(b-1)(b-2))
struct Part4ClosedForms {
    double statement_form;
    double proof_form;
};
Part4ClosedForms lemma_part4_closed_forms(double a, double b, double c,
                                          const EvalConfig& cfg = {});

// Term-by-term evaluation of the same sum with a ratio-majorant tail bound;
// the independent check of the closed forms.
SeriesValue lemma_sum_brute(LemmaPart part, double a, double b, double c,
                            const EvalConfig& cfg = {});

// Right-hand side of the summation identity
//     3F2(a, b/2, (b+1)/2; c/2, (c+1)/2; 1)
//       = [Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b))] * 2F1(a, b; c-a; -1),
// i.e. the closed form the direct 3F2 sum is validated against.
SeriesValue driver_johnston_rhs(double a, double b, double c,
                                const EvalConfig& cfg = {});

}  // namespace hohlov
