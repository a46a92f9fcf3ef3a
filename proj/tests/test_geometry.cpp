#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thetascope/geometry.hpp"

using namespace thetascope;
using geom::Precision;
using C = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
} // namespace

TEST_SUITE("geometry") {

TEST_CASE("q = 0 maps the whole circle to (1, 0)") {
    auto s = geom::sample_circle_image(0.0, 64);
    for (const auto& p : s.points) CHECK(p == C(1.0));
    auto prof = geom::curvature_profile(s);
    CHECK(prof.degenerate); // constant map has no usable parametrization speed
}

TEST_CASE("q = 1 image is the vertical line Re = 1/2") {
    auto s = geom::sample_circle_image(1.0, 512);
    REQUIRE(!s.points.empty());
    CHECK(!s.closed());
    for (const auto& p : s.points) CHECK(std::abs(p.real() - 0.5) < 1e-12);
}

TEST_CASE("q = -1 image approaches the asymptotes Y = +-(X - 1/2)") {
    auto s = geom::sample_circle_image(-1.0, 4096);
    int far_points = 0;
    for (const auto& p : s.points) {
        const double X = p.real(), Y = p.imag();
        if (std::abs(X) > 100.0) {
            ++far_points;
            CHECK(std::abs(std::abs(Y) / std::abs(X - 0.5) - 1.0) < 1e-3);
        }
    }
    CHECK(far_points > 0);
}

TEST_CASE("resolution precondition") {
    CHECK_THROWS_AS(geom::sample_circle_image(0.5, 32), std::domain_error);
}

TEST_CASE("conjugation symmetry of the sampled curve") {
    auto s = geom::sample_circle_image(0.37, 128);
    int matched = 0;
    for (std::size_t i = 1; i < s.phis.size(); ++i) {
        const double mirror = kTwoPi - s.phis[i];
        auto it = std::lower_bound(s.phis.begin(), s.phis.end(), mirror - 1e-9);
        if (it == s.phis.end() || std::abs(*it - mirror) > 1e-9) continue;
        const std::size_t j = static_cast<std::size_t>(it - s.phis.begin());
        ++matched;
        CHECK(std::abs(s.points[i] - std::conj(s.points[j])) < 1e-13);
    }
    CHECK(matched > 50);
}

TEST_CASE("refinement contract: chords stay below 2% of the diameter") {
    for (double q : {0.6, -0.6}) {
        auto s = geom::sample_circle_image(q, 64);
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (const auto& p : s.points) {
            xmin = std::min(xmin, p.real());
            xmax = std::max(xmax, p.real());
            ymin = std::min(ymin, p.imag());
            ymax = std::max(ymax, p.imag());
        }
        const double diam = std::hypot(xmax - xmin, ymax - ymin);
        for (std::size_t i = 0; i + 1 < s.points.size(); ++i)
            CHECK(std::abs(s.points[i + 1] - s.points[i]) <= 0.021 * diam);
    }
}

TEST_CASE("inflection counts at the pictured q values") {
    struct Want { double q; int inflections; };
    for (auto [q, inflections] :
         {Want{-0.2, 0}, Want{-0.53, 2}, Want{0.2, 0}, Want{0.7, 0}}) {
        auto s = geom::sample_circle_image(q, 512);
        auto prof = geom::curvature_profile(s);
        CHECK(prof.inflection_count == inflections);
        CHECK(!prof.degenerate);
    }
}

TEST_CASE("self-intersections at the pictured q values") {
    CHECK(geom::detect_self_intersections(geom::sample_circle_image(-0.2, 512)).empty());
    CHECK(geom::detect_self_intersections(geom::sample_circle_image(-0.53, 512)).empty());

    auto h7 = geom::detect_self_intersections(geom::sample_circle_image(-0.7, 512));
    REQUIRE(h7.size() == 1);
    // Frozen from the oracle: the crossing sits on the real axis at 1.48273802.
    CHECK(std::abs(h7[0].point.imag()) < 1e-8);
    CHECK(std::abs(h7[0].point.real() - 1.48273802019) < 1e-6);
    // The two crossing parameters are conjugate angles.
    CHECK(std::abs(h7[0].phi_a + h7[0].phi_b - kTwoPi) < 1e-6);

    auto h85 = geom::detect_self_intersections(geom::sample_circle_image(-0.85, 512));
    CHECK(h85.size() == 1);
}

TEST_CASE("axis crossings") {
    auto s7 = geom::sample_circle_image(0.7, 512);
    CHECK(geom::axis_crossings(s7).count == 0);

    // Near q = -1 the image dips left of the vertical axis; crossings come in
    // pairs on a closed curve.
    auto s85 = geom::sample_circle_image(-0.85, 512);
    auto ax = geom::axis_crossings(s85);
    CHECK(ax.count % 2 == 0);
    for (double a : ax.angles) {
        CHECK(a >= 0.0);
        CHECK(a < kTwoPi);
    }
}

TEST_CASE("classification anchors from the figures") {
    auto c02 = geom::classify_image(0.2);
    CHECK(c02.is_convex);
    CHECK(c02.surrounds_point_1_0);
    CHECK(c02.min_distance_to_origin > 0.5);

    auto c07 = geom::classify_image(0.7);
    CHECK(c07.is_convex);
    CHECK(c07.surrounds_point_1_0);

    auto cm02 = geom::classify_image(-0.2);
    CHECK(cm02.is_convex);

    auto cm053 = geom::classify_image(-0.53);
    CHECK(cm053.inflection_count == 2);
    CHECK(cm053.self_intersections.empty());
    CHECK(!cm053.is_convex);

    auto cm07 = geom::classify_image(-0.7);
    CHECK(cm07.self_intersections.size() == 1);
    CHECK(!cm07.is_convex);

    auto cm085 = geom::classify_image(-0.85);
    CHECK(cm085.self_intersections.size() == 1);
    CHECK(cm085.min_distance_to_origin > 0.0);
    CHECK(cm085.min_distance_to_origin < 0.05); // passes very close to the origin
}

TEST_CASE("images for q in (0,1) stay right of Re = 1/2") {
    for (double q : {0.2, 0.7}) {
        auto s = geom::sample_circle_image(q, 256);
        for (const auto& p : s.points) CHECK(p.real() > 0.5);
    }
}

TEST_CASE("nesting") {
    CHECK(geom::nesting_check(0.2, 0.7));
    CHECK(geom::nesting_check(0.3, 0.3)); // identical curves, by convention
    CHECK(geom::nesting_check(-0.2, -0.53));
    // Loop-excised outer curve still contains the small oval.
    CHECK(geom::nesting_check(-0.2, -0.7));
}

TEST_CASE("threshold searches bracket the shape transitions") {
    const double w = geom::threshold_search(geom::Feature::self_intersection, -0.53, -0.7);
    CHECK(w < -0.53);
    CHECK(w > -0.7);
    // The indicator flips across the returned q.
    CHECK(geom::classify_image(w - 2e-6).self_intersections.size() == 1);
    CHECK(geom::classify_image(w + 2e-6).self_intersections.empty());

    const double v = geom::threshold_search(geom::Feature::right_inflections, -0.2, -0.53);
    CHECK(v < -0.2);
    CHECK(v > -0.53);

    CHECK_THROWS_AS(geom::threshold_search(geom::Feature::self_intersection, -0.2, -0.3),
                    std::domain_error);
}

TEST_CASE("hyperbola residual at q = -1") {
    CHECK(geom::hyperbola_residual(4096) < 1e-12);
    CHECK(geom::hyperbola_residual(257) < 1e-12);
}

TEST_CASE("min distance to origin stays positive across q") {
    for (double q : {0.2, 0.7, -0.2, -0.53, -0.7, -0.85}) {
        auto cls = geom::classify_image(q);
        CHECK(cls.min_distance_to_origin > 0.0);
    }
}

TEST_CASE("csv emission") {
    auto s = geom::sample_circle_image(0.2, 64);
    std::ostringstream ss;
    geom::write_csv(s, ss);
    const std::string text = ss.str();
    CHECK(text.rfind("phi,re,im,d_re,d_im,curvature\n", 0) == 0);
    const auto lines = std::count(text.begin(), text.end(), '\n');
    CHECK(lines == static_cast<long>(s.phis.size()) + 1);
}

} // TEST_SUITE
