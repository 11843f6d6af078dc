#include <cmath>
#include <vector>

#include "doctest.h"
#include "hohlov/operator.hpp"
#include "hohlov/specfun.hpp"
#include "support.hpp"

using namespace hohlov;
using namespace testsupport;

TEST_CASE("operator coefficient anchors at (1,1,4)") {
    const auto p = OperatorParams::from_moduli(1.0, 1.0, 4.0);
    CHECK(hyper_coefficient(p, 1) == 1.0);
    CHECK(hyper_coefficient(p, 2) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(hyper_coefficient(p, 3) == doctest::Approx(1.0 / 35.0).epsilon(1e-15));
}

TEST_CASE("coefficient list matches the single-coefficient recurrence bitwise") {
    const auto p = OperatorParams::from_moduli(0.7, 2.3, 5.1);
    const auto list = hyper_coefficients(p, 50);
    REQUIRE(list.size() == 50);
    for (std::int64_t n = 1; n <= 50; ++n)
        CHECK(list[static_cast<std::size_t>(n - 1)] == hyper_coefficient(p, n));
}

TEST_CASE("b = c collapses the coefficients to a Pochhammer ratio") {
    for (double a : {0.35, 1.0, 2.6}) {
        for (double bc : {2.5, 4.0, 6.693}) {
            const auto p = OperatorParams::from_moduli(a, bc, bc);
            double factorial = 1.0;
            for (std::int64_t n = 1; n <= 30; ++n) {
                if (n > 1) factorial *= static_cast<double>(n - 1);
                const double lhs = hyper_coefficient(p, n) * factorial;
                const double rhs = pochhammer(a, static_cast<int>(n - 1));
                CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::fabs(rhs));
            }
        }
    }
}

TEST_CASE("coefficients of a long run stay finite through the scaled product") {
    // Growing regime: a+b close to c makes B_n decay only slowly; shrinking
    // regime drives B_n through the denormal range without flushing to zero.
    const auto grow = OperatorParams::from_moduli(2.6, 6.0, 9.0);
    const auto g = hyper_coefficients(grow, 10000);
    CHECK(std::isfinite(g.back()));
    CHECK(g.back() > 0.0);
    const auto shrink = OperatorParams::from_moduli(0.2, 0.3, 40.0);
    const auto s = hyper_coefficients(shrink, 200);
    CHECK(std::isfinite(s.back()));
    CHECK(s.back() >= 0.0);
}

TEST_CASE("apply_operator scales coefficients and enforces normalization") {
    const auto p = OperatorParams::from_moduli(1.0, 1.0, 4.0);
    SUBCASE("identity function passes through untouched") {
        const std::vector<double> f = {1.0, 0.0, 0.0, 0.0};
        const auto out = apply_operator(p, f);
        REQUIRE(out.coefficients.size() == 4);
        CHECK(out.coefficients[0] == 1.0);
        CHECK(out.coefficients[1] == 0.0);
        CHECK(out.coefficients[2] == 0.0);
    }
    SUBCASE("Koebe-type coefficients scale term by term") {
        std::vector<double> f;
        for (int n = 1; n <= 20; ++n) f.push_back(static_cast<double>(n));
        const auto out = apply_operator(p, f);
        const auto B = hyper_coefficients(p, 20);
        for (std::size_t k = 0; k < 20; ++k)
            CHECK(out.coefficients[k] ==
                  doctest::Approx(B[k] * f[k]).epsilon(1e-15));
    }
    SUBCASE("linearity in the source coefficients") {
        Sampler s(201);
        std::vector<double> f = {1.0}, g = {1.0};
        for (int i = 0; i < 15; ++i) {
            f.push_back(s.uniform(-2.0, 2.0));
            g.push_back(s.uniform(-2.0, 2.0));
        }
        const double alpha = 0.625;  // exactly representable
        std::vector<double> mix(f.size());
        for (std::size_t k = 0; k < f.size(); ++k)
            mix[k] = alpha * f[k] + (1.0 - alpha) * g[k];
        REQUIRE(mix[0] == 1.0);
        const auto am = apply_operator(p, mix);
        const auto af = apply_operator(p, f);
        const auto ag = apply_operator(p, g);
        for (std::size_t k = 0; k < f.size(); ++k) {
            const double expect = alpha * af.coefficients[k] + (1.0 - alpha) * ag.coefficients[k];
            CHECK(am.coefficients[k] ==
                  doctest::Approx(expect).epsilon(1e-14).scale(1.0));
        }
    }
    SUBCASE("normalization is enforced") {
        CHECK_THROWS_AS(apply_operator(p, std::vector<double>{}), NormalizationError);
        CHECK_THROWS_AS(apply_operator(p, std::vector<double>{0.5, 1.0}),
                        NormalizationError);
    }
}

TEST_CASE("coefficient bounds per source hypothesis") {
    CHECK(coefficient_bound(SourceSpec::self_function(), 2) == 1.0);
    CHECK(coefficient_bound(SourceSpec::self_function(), 7) == 1.0);
    CHECK(coefficient_bound(SourceSpec::full_class_s(), 2) == 2.0);
    CHECK(coefficient_bound(SourceSpec::full_class_s(), 9) == 9.0);
    CHECK(coefficient_bound(SourceSpec::r_beta(0.0), 2) == 1.0);
    CHECK(coefficient_bound(SourceSpec::r_beta(0.25), 5) ==
          doctest::Approx(2.0 * 0.75 / 5.0).epsilon(1e-16));
    CHECK_THROWS_AS(coefficient_bound(SourceSpec::self_function(), 1), DomainError);
    CHECK_THROWS_AS(coefficient_bound(SourceSpec::r_beta(1.0), 3), DomainError);
    CHECK_THROWS_AS(coefficient_bound(SourceSpec::r_beta(-0.1), 3), DomainError);
}

TEST_CASE("worst-case degree table") {
    const auto star = ClassSpec::starlike(0.5);
    const auto conv = ClassSpec::convex(0.5);
    CHECK(worst_case_degree(star, SourceSpec::self_function()) == 1);
    CHECK(worst_case_degree(star, SourceSpec::r_beta(0.1)) == 0);
    CHECK(worst_case_degree(star, SourceSpec::full_class_s()) == 2);
    CHECK(worst_case_degree(conv, SourceSpec::self_function()) == 2);
    CHECK(worst_case_degree(conv, SourceSpec::r_beta(0.1)) == 1);
    CHECK(worst_case_degree(conv, SourceSpec::full_class_s()) == 3);
    CHECK(worst_case_degree(ClassSpec::ucv(), SourceSpec::self_function()) == 2);
    CHECK(worst_case_degree(ClassSpec::ucv(), SourceSpec::r_beta(0.1)) == 1);
    CHECK(worst_case_degree(ClassSpec::sp(), SourceSpec::self_function()) == 1);
    CHECK(worst_case_degree(ClassSpec::sp(), SourceSpec::full_class_s()) == 2);
}

TEST_CASE("worst-case sum anchor with a converged budget") {
    // Frozen via the summation identity: T = 1 + 2*(lhs - rhs) at
    // (1/2, 1/2, 3) for the starlike-1 target under an R(0) source.
    const auto v = worst_case_T(ClassSpec::starlike(1.0), SourceSpec::r_beta(0.0),
                                OperatorParams::from_moduli(0.5, 0.5, 3.0),
                                tight_config());
    REQUIRE(v.converged);
    CHECK(std::fabs(v.value - kWorstTHalf3) <= 5e-9);
}

TEST_CASE("worst-case sum at the slow (1,1,4) starlike point stays bracketed") {
    // Margin exactly 1: the series decays like 1/n^2 and cannot converge to
    // 1e-9 within the budget; the limit is 1/2 and the local-ratio majorant
    // understates the tail by at most a factor 2.
    const auto v = worst_case_T(ClassSpec::starlike(1.0), SourceSpec::self_function(),
                                OperatorParams::from_moduli(1.0, 1.0, 4.0),
                                tight_config());
    CHECK_FALSE(v.converged);
    CHECK(v.value < 0.5);
    CHECK(std::fabs(v.value - 0.5) <= 2.2 * v.tail_bound);
    CHECK(v.tail_bound < 1e-5);
}

TEST_CASE("termwise weight dominance orders the worst-case sums") {
    EvalConfig cfg = tight_config();
    const auto pts = sample_grid(202, 10, 3, 0.5, 4.0);
    for (const auto& pt : pts) {
        const auto p = OperatorParams::from_moduli(pt.a, pt.b, pt.c);
        const double lam = 0.7;
        const auto t_star = worst_case_T(ClassSpec::starlike(lam),
                                         SourceSpec::self_function(), p, cfg);
        const auto t_conv = worst_case_T(ClassSpec::convex(lam),
                                         SourceSpec::self_function(), p, cfg);
        // n(n+lam-1) >= (n+lam-1) termwise for n >= 2
        CHECK(t_conv.value >= t_star.value - 1e-12);

        const auto src_r = worst_case_T(ClassSpec::starlike(lam),
                                        SourceSpec::r_beta(0.2), p, cfg);
        const auto src_s = worst_case_T(ClassSpec::starlike(lam),
                                        SourceSpec::full_class_s(), p, cfg);
        // bounds order 2(1-beta)/n <= 1 <= n termwise for n >= 2
        CHECK(src_r.value <= t_star.value + 1e-12);
        CHECK(t_star.value <= src_s.value + 1e-12);
    }
}

TEST_CASE("worst-case sum margin gating names the violated margin") {
    const auto p = OperatorParams::from_moduli(1.0, 1.0, 4.0);  // margin 0 for UCV
    try {
        worst_case_T(ClassSpec::ucv(), SourceSpec::self_function(), p);
        FAIL("expected PoleProximityError");
    } catch (const PoleProximityError& e) {
        CHECK(e.margin == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        CHECK(std::string(e.what()).find("c-|a|-|b|-2") != std::string::npos);
    }
}

TEST_CASE("spec validation rejects out-of-domain class and source settings") {
    CHECK_THROWS_AS(ClassSpec::starlike(0.0).validate(), DomainError);
    CHECK_THROWS_AS(ClassSpec::starlike(1.2).validate(), DomainError);
    CHECK_NOTHROW(ClassSpec::starlike(1.0).validate());
    CHECK_NOTHROW(ClassSpec::ucv().validate());
    CHECK_THROWS_AS(SourceSpec::r_beta(1.0).validate(), DomainError);
    CHECK_NOTHROW(SourceSpec::r_beta(0.0).validate());
    ClassSpec broken = ClassSpec::ucv();
    broken.lambda = 0.5;
    CHECK_THROWS_AS(broken.validate(), DomainError);
    CHECK_THROWS_AS(OperatorParams::from_moduli(0.0, 1.0, 4.0).validate(), DomainError);
    CHECK_NOTHROW(OperatorParams::from_moduli(1.0, 1.0, 4.0).validate());
}

TEST_CASE("complex inputs reduce to their moduli") {
    const auto p = OperatorParams::from_complex({0.75, 1.0}, {-0.6, 0.8}, 4.0);
    CHECK(p.a_mod == 1.25);
    CHECK(p.b_mod == 1.0);
    REQUIRE(p.raw_a.has_value());
    CHECK(p.raw_a->real() == 0.75);
}
