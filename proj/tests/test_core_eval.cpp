#include <doctest.h>

#include <cmath>
#include <random>

#include "thetascope/core_eval.hpp"

using namespace thetascope;
using core::CertifiedValue;
using core::Precision;

namespace {

// Expected values frozen from an independent 60-digit direct-summation
// oracle (mpmath).
constexpr double kTheta05at1 = 1.641632560655153866293843;
constexpr double kThetaDx05at1 = 0.8009367251072777029000806;
constexpr double kThetaMinusHalfAtMinus1 = 1.360381599530256807581758;

std::complex<double> C(double re, double im = 0.0) { return {re, im}; }

} // namespace

TEST_SUITE("core_eval") {

TEST_CASE("theta at x = 0 is exactly 1 with zero tail") {
    auto cv = core::eval_theta(0.7, C(0.0));
    CHECK(cv.value == C(1.0));
    CHECK(cv.tail_bound == 0.0);
    CHECK(cv.terms_used == 1);
}

TEST_CASE("theta at q = 0 is identically 1") {
    for (double xr : {-5.0, 0.0, 3.0}) {
        auto cv = core::eval_theta(0.0, C(xr, 1.5));
        CHECK(cv.value == C(1.0));
        CHECK(cv.tail_bound == 0.0);
    }
}

TEST_CASE("theta(0.5, 1) matches the summation oracle") {
    auto cv = core::eval_theta(0.5, C(1.0));
    CHECK(std::abs(cv.value.real() - kTheta05at1) < 1e-13);
    CHECK(cv.value.imag() == 0.0);
    CHECK(cv.tail_bound < 1e-12);
}

TEST_CASE("theta(-0.4, 1.96) sits near the Remark-1 zero") {
    auto cv = core::eval_theta(-0.4, C(1.96));
    CHECK(std::abs(cv.value) < 1e-2);
}

TEST_CASE("derivative series") {
    SUBCASE("only j = 1 survives at x = 0") {
        auto cv = core::eval_theta_dx(0.3, C(0.0));
        CHECK(cv.value == C(0.3));
        CHECK(cv.tail_bound == 0.0);
    }
    SUBCASE("dtheta/dx (0.5, 1) matches the oracle") {
        auto cv = core::eval_theta_dx(0.5, C(1.0));
        CHECK(std::abs(cv.value.real() - kThetaDx05at1) < 1e-13);
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(core::eval_theta(1.0, C(0.5)), std::domain_error);
    CHECK_THROWS_AS(core::eval_theta(-1.3, C(0.5)), std::domain_error);
    CHECK_THROWS_AS(core::eval_theta(0.5, C(std::nan(""), 0.0)), std::domain_error);
    CHECK_THROWS_AS(core::eval_truncation(0.5, C(1.0), -1), std::domain_error);
    // Peak term exceeds the double range: rejected, never returned non-finite.
    CHECK_THROWS_AS(core::eval_theta(0.9, C(1e200)), std::domain_error);
}

TEST_CASE("truncation partial sums") {
    CHECK(core::eval_truncation(0.98, C(1.32), 0) == C(1.0));
    // 1 + 0.5 + 0.125 + 0.015625, all exact in binary.
    CHECK(core::eval_truncation(0.5, C(1.0), 3) == C(1.640625));
    // Complex q at a root of unity.
    const std::complex<double> w = std::polar(1.0, 3.0 * M_PI / 4.0);
    auto v = core::eval_truncation(w, C(0.5), 200);
    CHECK(std::isfinite(v.real()));
}

TEST_CASE("truncation consistency: partial sum reproduces the certified value bitwise") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uq(-0.95, 0.95), ux(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double q = uq(rng);
        if (std::abs(q) > 0.95) continue;
        const auto x = C(ux(rng), ux(rng));
        auto cv = core::eval_theta(q, x);
        auto ts = core::eval_truncation(q, x, cv.terms_used - 1);
        CHECK(cv.value.real() == ts.real());
        CHECK(cv.value.imag() == ts.imag());
    }
}

TEST_CASE("tail soundness: doubling the terms moves the sum within the bound") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> uq(-0.95, 0.95), ux(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double q = uq(rng);
        const auto x = C(ux(rng), ux(rng));
        auto cv = core::eval_theta(q, x);
        auto s2 = core::eval_truncation(q, x, 2 * cv.terms_used - 1);
        // Final-rounding quantization of the two folded sums allows a few ulp.
        const double slack = 4.0 * 1.1e-16 * (1.0 + std::abs(s2));
        CHECK(std::abs(cv.value - s2) <= cv.tail_bound + slack);
    }
}

TEST_CASE("real symmetry is bitwise") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> uq(-0.99, 0.99), ux(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double q = uq(rng);
        const auto x = C(ux(rng), ux(rng));
        auto a = core::eval_theta(q, x);
        auto b = core::eval_theta(q, std::conj(x));
        CHECK(a.value.real() == b.value.real());
        CHECK(a.value.imag() == -b.value.imag());
    }
}

TEST_CASE("functional equation residual") {
    CHECK(core::functional_equation_residual(0.0, C(5.0)) == 0.0);
    CHECK(core::functional_equation_residual(0.6, C(1.0, 0.5)) < 1e-12);
    CHECK(core::functional_equation_residual(-0.8, C(-1.0)) < 1e-12);

    std::mt19937 rng(19);
    std::uniform_real_distribution<double> uq(-0.95, 0.95), ux(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double q = uq(rng);
        const auto x = C(ux(rng), ux(rng));
        CHECK(core::functional_equation_residual(q, x) <= 1e-11 * (1.0 + std::abs(x)));
    }
}

TEST_CASE("closed forms at the boundary") {
    CHECK(core::closed_form(-1.0, C(0.5)) == C(0.4));
    CHECK(core::closed_form(1.0, C(2.0)) == C(-1.0));
    CHECK_THROWS_AS(core::closed_form(0.5, C(2.0)), std::domain_error);

    bool caught = false;
    try {
        core::closed_form(-1.0, C(0.0, 1.0));
    } catch (const core::PoleError& e) {
        caught = true;
        CHECK(e.pole == C(0.0, 1.0));
    }
    CHECK(caught);
    CHECK_THROWS_AS(core::closed_form(1.0, C(1.0)), core::PoleError);
}

TEST_CASE("boundary coherence: theta approaches the q = -1 closed form") {
    for (auto x : {C(0.3, 0.2), C(0.5), C(-0.4, 0.4)}) {
        const auto cf = core::closed_form(-1.0, x);
        const double d1 = std::abs(core::eval_theta(-0.9, x).value - cf);
        const double d2 = std::abs(core::eval_theta(-0.99, x, Precision::extended).value - cf);
        CHECK(d2 < d1);
        CHECK(d1 < 0.2);
    }
}

TEST_CASE("theta at minus one") {
    SUBCASE("q = 0 gives 1") {
        CHECK(core::theta_at_minus_one(0.0).value == 1.0);
    }
    SUBCASE("q = -0.5 matches the oracle") {
        auto r = core::theta_at_minus_one(-0.5);
        CHECK(std::abs(r.value - kThetaMinusHalfAtMinus1) < 1e-12);
        CHECK(r.has_bracket);
    }
    SUBCASE("values in (1/2, 1) for q in (0,1)") {
        for (double q : {0.1, 0.5, 0.9, 0.99}) {
            auto r = core::theta_at_minus_one(q);
            CHECK(r.value > 0.5);
            CHECK(r.value < 1.0);
        }
    }
    SUBCASE("Leibniz bracketing for q in (-1, 0)") {
        std::mt19937 rng(23);
        std::uniform_real_distribution<double> uq(-0.99, -0.01);
        for (int i = 0; i < 60; ++i) {
            const double q = uq(rng);
            auto r = core::theta_at_minus_one(q);
            REQUIRE(r.has_bracket);
            CHECK(r.lower <= r.value + 1e-15);
            CHECK(r.value <= r.upper + 1e-15);
            CHECK(r.value > 0.0);
        }
    }
}

TEST_CASE("extended precision tightens the tail") {
    auto std_cv = core::eval_theta(0.5, C(1.0), Precision::standard);
    auto ext_cv = core::eval_theta(0.5, C(1.0), Precision::extended);
    CHECK(ext_cv.tail_bound < 1e-28);
    CHECK(ext_cv.terms_used > std_cv.terms_used);
    CHECK(std::abs(ext_cv.value.real() - kTheta05at1) < 1e-15);
}

} // TEST_SUITE
