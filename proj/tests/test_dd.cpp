#include <doctest.h>

#include <cmath>
#include <random>

#include "thetascope/cx.hpp"
#include "thetascope/dd.hpp"

using thetascope::Cx;
using thetascope::DD;

TEST_SUITE("dd") {

TEST_CASE("addition keeps bits a double loses") {
    DD a(1e16);
    a += DD(1.0);
    a -= DD(1e16);
    CHECK(to_double(a) == 1.0);
}

TEST_CASE("two_prod error term is exact") {
    const double x = 1.0 + std::ldexp(1.0, -30);
    DD p = thetascope::detail::two_prod(x, x);
    // x*x = 1 + 2^-29 + 2^-60; the low part must carry the 2^-60.
    CHECK(p.lo != 0.0);
    CHECK(to_double((DD(p.hi) + DD(p.lo)) - DD(1.0) - DD(std::ldexp(1.0, -29))) ==
          doctest::Approx(std::ldexp(1.0, -60)).epsilon(1e-10));
}

TEST_CASE("multiplication and division round-trip to ~30 digits") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        DD a(u(rng), u(rng) * 1e-18);
        DD b(u(rng));
        if (std::abs(b.hi) < 1e-3) continue;
        DD c = (a * b) / b;
        CHECK(std::abs(to_double(c - a)) <= 1e-29 * (1.0 + std::abs(a.hi)));
    }
}

TEST_CASE("sqrt squares back") {
    for (double v : {2.0, 3.0, 0.5, 123.456, 1e-8}) {
        DD r = sqrt(DD(v));
        CHECK(std::abs(to_double(r * r - DD(v))) <= 1e-30 * v);
    }
}

TEST_CASE("comparisons honor the low word") {
    DD a(1.0, 1e-20);
    DD b(1.0, 0.0);
    CHECK(a > b);
    CHECK(b < a);
    CHECK(a != b);
    CHECK(abs(-a) == a);
}

TEST_CASE("complex over dd multiplies like std::complex") {
    const Cx<DD> z{DD(1.25), DD(-0.5)};
    const Cx<DD> w{DD(0.75), DD(2.0)};
    const auto zw = z * w;
    CHECK(to_double(zw.re) == doctest::Approx(1.25 * 0.75 - (-0.5) * 2.0));
    CHECK(to_double(zw.im) == doctest::Approx(1.25 * 2.0 + (-0.5) * 0.75));
    const auto back = zw / w;
    CHECK(std::abs(to_double(back.re - z.re)) < 1e-30);
    CHECK(std::abs(to_double(back.im - z.im)) < 1e-30);
}

} // TEST_SUITE
