// Image of the circle |x| = radius under x -> theta(q, x): adaptive
// sampling with analytic tangents and signed curvature, and the derived
// classification (inflections, cusp indicator, self-intersections, axis
// crossings, nesting) probing the shape transitions as q varies.
#pragma once

#include <complex>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "thetascope/sampling.hpp"

namespace thetascope::geom {

using core::Precision;

struct CurveSample {
    double q = 0.0;        // in (-1,1), or exactly +-1 for the closed forms
    double radius = 1.0;
    Precision prec = Precision::standard;
    std::vector<double> phis;                       // strictly increasing in [0, 2pi)
    std::vector<std::complex<double>> points;       // theta values
    std::vector<std::complex<double>> tangents;     // d(theta)/d(phi)
    std::vector<double> curvatures;                 // signed curvature
    std::vector<std::pair<double, double>> clipped; // pole-adjacent gaps (q = +-1)
    bool closed() const { return clipped.empty(); }
};

struct CurvatureProfile {
    std::vector<double> curvatures;
    int inflection_count = 0;
    bool degenerate = false;          // |gamma'| below threshold somewhere
    double degenerate_angle = 0.0;    // cusp-suspected angle when degenerate
};

struct Crossing {
    double phi_a = 0.0, phi_b = 0.0;
    std::complex<double> point;
};

struct AxisCrossings {
    int count = 0;
    std::vector<double> angles;
    bool tangency_suspected = false;
};

struct CurveClassification {
    double q = 0.0;
    int inflection_count = 0;
    std::optional<double> has_cusp_near; // angle of the cusp indicator dip, if flagged
    std::vector<Crossing> self_intersections;
    int vertical_axis_crossings = 0;
    bool is_convex = false;
    bool surrounds_point_1_0 = false;
    double min_distance_to_origin = 0.0;
    double cusp_indicator = 0.0; // min |gamma'| / mean |gamma'|
};

enum class Feature { cusp, right_inflections, self_intersection, axis_tangency };

// Adaptive image of the unit circle: `resolution` uniform angles, arcs
// bisected while the chord exceeds 2% of the diameter estimate or the
// tangent turns by more than 10 degrees.  q = +-1 uses the closed forms
// with pole-adjacent arcs clipped and recorded.
CurveSample sample_circle_image(double q, int resolution,
                                Precision prec = Precision::standard,
                                Exec exec = default_exec());

// Signed curvature list plus the count of sign changes, with changes below
// the 1e-8 * max|kappa| noise floor suppressed.
CurvatureProfile curvature_profile(const CurveSample& sample);

// Polyline segment sweep excluding adjacent segments, each hit refined by
// bisection on both arcs to 1e-10 positional tolerance.
std::vector<Crossing> detect_self_intersections(const CurveSample& sample);

// Transversal sign changes of Re(point), bisected in phi to 1e-12.
AxisCrossings axis_crossings(const CurveSample& sample);

CurveClassification classify_image(double q, Precision prec = Precision::standard,
                                   int resolution = 512, Exec exec = default_exec());

// True iff every sampled point of the inner image winds nonzero with respect
// to the (loop-excised) outer image.
bool nesting_check(double q_inner, double q_outer,
                   Precision prec = Precision::standard);

// Bisection on q to 1e-6 of the change of the feature indicator.  The cusp
// indicator is graded: min |gamma'| / mean |gamma'| < 1e-3.
double threshold_search(Feature feature, double q_lo, double q_hi,
                        Precision prec = Precision::standard);

// max |(X - 1/2)^2 - Y^2 - 1/4| over the sampled q = -1 image, computed in
// double-double through the rational tangent half-angle parametrization.
double hyperbola_residual(int resolution);

// CSV emission: header then one "phi,re,im,d_re,d_im,curvature" row per sample.
void write_csv(const CurveSample& sample, std::ostream& os);

} // namespace thetascope::geom
