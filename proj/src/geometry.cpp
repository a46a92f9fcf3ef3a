#include "thetascope/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace thetascope::geom {

namespace {

using C = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kChordFraction = 0.02;
constexpr double kTurnLimit = 10.0 * kPi / 180.0;
constexpr double kPoleClip = 1e-6;
constexpr int kMaxRefineLevels = 18;
constexpr std::size_t kMaxSamples = 200000;

struct Node {
    double phi;
    C point;
    C tangent;   // d(theta)/d(phi)
    double curvature;
};

// gamma(phi) = theta(q, R e^{i phi}):
//   gamma'  = i x theta_x,
//   gamma'' = -x^2 theta_xx - x theta_x,     x = R e^{i phi},
//   kappa   = Im(conj(gamma') gamma'') / |gamma'|^3.
Node node_from_jet(double phi, double radius, const sampling::JetSample& js) {
    const C x = std::polar(radius, phi);
    const C g1 = C(0.0, 1.0) * x * js.fx;
    const C g2 = -x * x * js.fxx - x * js.fx;
    const double speed = std::abs(g1);
    double kappa = 0.0;
    if (speed > 1e-10)
        kappa = (std::conj(g1) * g2).imag() / (speed * speed * speed);
    return {phi, js.f, g1, kappa};
}

Node node_boundary(double phi, int q_sign) {
    const auto jet = core::detail::closed_form_jet_on_circle(q_sign, phi);
    const C x = std::polar(1.0, phi);
    const C f = to_std(jet.f);
    const C fx = to_std(jet.fx);
    const C fxx = to_std(jet.fxx);
    const C g1 = C(0.0, 1.0) * x * fx;
    const C g2 = -x * x * fxx - x * fx;
    const double speed = std::abs(g1);
    double kappa = 0.0;
    if (speed > 1e-10)
        kappa = (std::conj(g1) * g2).imag() / (speed * speed * speed);
    return {phi, f, g1, kappa};
}

std::vector<Node> eval_nodes(double q, double radius, const std::vector<double>& phis,
                             Precision prec, Exec exec) {
    std::vector<Node> nodes(phis.size());
    if (q == 1.0 || q == -1.0) {
        const int sign = q > 0 ? 1 : -1;
        parallel_for(exec, phis.size(), [&](std::size_t i) {
            nodes[i] = node_boundary(phis[i], sign);
        });
        return nodes;
    }
    auto jets = sampling::theta_jet_on_circle(q, radius, phis, prec, exec);
    for (std::size_t i = 0; i < phis.size(); ++i)
        nodes[i] = node_from_jet(phis[i], radius, jets[i]);
    return nodes;
}

double turning(const Node& a, const Node& b) {
    const double sa = std::abs(a.tangent), sb = std::abs(b.tangent);
    if (sa < 1e-12 || sb < 1e-12) return 0.0;
    const C r = b.tangent / a.tangent;
    return std::abs(std::atan2(r.imag(), r.real()));
}

// Pole-adjacent angles for the boundary closed forms.
std::vector<std::pair<double, double>> pole_gaps(double q) {
    if (q == 1.0) return {{-kPoleClip, kPoleClip}};
    if (q == -1.0)
        return {{kPi / 2.0 - kPoleClip, kPi / 2.0 + kPoleClip},
                {3.0 * kPi / 2.0 - kPoleClip, 3.0 * kPi / 2.0 + kPoleClip}};
    return {};
}

} // namespace

CurveSample sample_circle_image(double q, int resolution, Precision prec, Exec exec) {
    if (resolution < 64)
        throw std::domain_error("sample_circle_image: resolution must be >= 64");
    const bool boundary = (q == 1.0 || q == -1.0);
    if (!boundary) core::detail::require_q_open_interval(q);

    const auto gaps = pole_gaps(q);
    auto in_gap = [&](double phi) {
        for (const auto& g : gaps) {
            double lo = g.first, hi = g.second;
            if (phi > lo && phi < hi) return true;
            // The q = 1 gap wraps through 0.
            if (lo < 0.0 && phi > kTwoPi + lo) return true;
        }
        return false;
    };

    std::vector<double> phis;
    phis.reserve(static_cast<std::size_t>(resolution));
    for (int k = 0; k < resolution; ++k) {
        const double phi = kTwoPi * k / resolution;
        if (!in_gap(phi)) phis.push_back(phi);
    }

    std::vector<Node> nodes = eval_nodes(q, 1.0, phis, prec, exec);

    // Diameter estimate from the first pass; unbounded boundary branches are
    // capped so the chord contract stays meaningful near the poles.
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& n : nodes) {
        xmin = std::min(xmin, n.point.real());
        xmax = std::max(xmax, n.point.real());
        ymin = std::min(ymin, n.point.imag());
        ymax = std::max(ymax, n.point.imag());
    }
    double diam = std::hypot(xmax - xmin, ymax - ymin);
    if (boundary) diam = std::min(diam, 10.0);
    const double chord_limit = std::max(kChordFraction * diam, 1e-14);

    auto arc_crosses_gap = [&](double a, double b) {
        for (const auto& g : gaps)
            if (a < g.first && b > g.second) return true;
        return false;
    };
    auto needs_split = [&](const Node& a, const Node& b) {
        if (b.phi - a.phi < 1e-13) return false;
        if (arc_crosses_gap(a.phi, b.phi)) return false;
        if (std::abs(b.point - a.point) > chord_limit) return true;
        return turning(a, b) > kTurnLimit;
    };

    for (int level = 0; level < kMaxRefineLevels; ++level) {
        std::vector<double> mids;
        std::vector<std::size_t> where;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            if (needs_split(nodes[i], nodes[i + 1])) {
                mids.push_back(0.5 * (nodes[i].phi + nodes[i + 1].phi));
                where.push_back(i);
            }
        }
        if (mids.empty() || nodes.size() + mids.size() > kMaxSamples) break;
        auto fresh = eval_nodes(q, 1.0, mids, prec, exec);
        std::vector<Node> merged;
        merged.reserve(nodes.size() + fresh.size());
        std::size_t f = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            merged.push_back(nodes[i]);
            if (f < where.size() && where[f] == i) merged.push_back(fresh[f++]);
        }
        nodes.swap(merged);
    }

    CurveSample out;
    out.q = q;
    out.radius = 1.0;
    out.prec = prec;
    for (const auto& g : gaps)
        out.clipped.push_back({g.first < 0.0 ? kTwoPi + g.first : g.first,
                               g.second});
    out.phis.reserve(nodes.size());
    out.points.reserve(nodes.size());
    out.tangents.reserve(nodes.size());
    out.curvatures.reserve(nodes.size());
    for (const auto& n : nodes) {
        out.phis.push_back(n.phi);
        out.points.push_back(n.point);
        out.tangents.push_back(n.tangent);
        out.curvatures.push_back(n.curvature);
    }
    return out;
}

CurvatureProfile curvature_profile(const CurveSample& sample) {
    CurvatureProfile out;
    out.curvatures = sample.curvatures;

    double mean_speed = 0.0;
    for (const auto& t : sample.tangents) mean_speed += std::abs(t);
    mean_speed /= std::max<std::size_t>(sample.tangents.size(), 1);
    for (std::size_t i = 0; i < sample.tangents.size(); ++i) {
        if (std::abs(sample.tangents[i]) < std::max(1e-10, 1e-10 * mean_speed)) {
            out.degenerate = true;
            out.degenerate_angle = sample.phis[i];
        }
    }

    double max_kappa = 0.0;
    for (double k : out.curvatures) max_kappa = std::max(max_kappa, std::abs(k));
    const double floor = 1e-8 * max_kappa;

    std::vector<int> signs;
    for (double k : out.curvatures)
        if (std::abs(k) >= floor && k != 0.0) signs.push_back(k > 0.0 ? 1 : -1);
    int flips = 0;
    for (std::size_t i = 1; i < signs.size(); ++i)
        if (signs[i] != signs[i - 1]) ++flips;
    if (sample.closed() && signs.size() > 1 && signs.front() != signs.back()) ++flips;
    out.inflection_count = flips;
    return out;
}

namespace {

// Segment intersection with parameters in [0,1); returns false when parallel.
bool segments_cross(C p0, C p1, C q0, C q1, double& t, double& u) {
    const double rx = p1.real() - p0.real(), ry = p1.imag() - p0.imag();
    const double sx = q1.real() - q0.real(), sy = q1.imag() - q0.imag();
    const double denom = rx * sy - ry * sx;
    if (denom == 0.0) return false;
    const double dx = q0.real() - p0.real(), dy = q0.imag() - p0.imag();
    t = (dx * sy - dy * sx) / denom;
    u = (dx * ry - dy * rx) / denom;
    const double slack = 1e-12;
    return t >= -slack && t < 1.0 + slack && u >= -slack && u < 1.0 + slack;
}

C curve_point(const CurveSample& sample, double phi) {
    if (sample.q == 1.0 || sample.q == -1.0)
        return to_std(core::detail::closed_form_on_circle(sample.q > 0 ? 1 : -1, phi));
    auto vals = sampling::theta_on_circle(sample.q, C(0.0, 0.0), sample.radius,
                                          {phi}, sample.prec, Exec::serial);
    return vals[0].value;
}

// Consecutive samples separated by a clipped pole gap are not joined by the
// curve; segments across them are artifacts.  A wrapped gap (q = 1, pole at
// phi = 0) sits at the ends of the sample list, so no interior segment can
// span it.
bool spans_gap(const CurveSample& sample, double fa, double fb) {
    for (const auto& g : sample.clipped)
        if (g.first <= g.second && fa < g.first && fb > g.second) return true;
    return false;
}

} // namespace

std::vector<Crossing> detect_self_intersections(const CurveSample& sample) {
    const auto& P = sample.points;
    const auto& F = sample.phis;
    const std::size_t n = P.size();
    std::vector<Crossing> hits;
    if (n < 4) return hits;

    struct Seg { C a, b; double fa, fb; std::size_t idx; };
    std::vector<Seg> segs;
    segs.reserve(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (spans_gap(sample, F[i], F[i + 1])) continue;
        segs.push_back({P[i], P[i + 1], F[i], F[i + 1], i});
    }
    if (sample.closed()) segs.push_back({P[n - 1], P[0], F[n - 1], F[0] + kTwoPi, n - 1});

    const std::size_t m = segs.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1 && sample.closed()) continue; // adjacent around the seam
            double t, u;
            if (!segments_cross(segs[i].a, segs[i].b, segs[j].a, segs[j].b, t, u)) continue;

            // Bisection on both arcs down to 1e-10 positional tolerance.
            double a0 = segs[i].fa, a1 = segs[i].fb;
            double b0 = segs[j].fa, b1 = segs[j].fb;
            C pa0 = segs[i].a, pa1 = segs[i].b, pb0 = segs[j].a, pb1 = segs[j].b;
            for (int iter = 0; iter < 64; ++iter) {
                if (std::abs(pa1 - pa0) < 1e-10 && std::abs(pb1 - pb0) < 1e-10) break;
                const double am = 0.5 * (a0 + a1), bm = 0.5 * (b0 + b1);
                const C pam = curve_point(sample, std::fmod(am, kTwoPi));
                const C pbm = curve_point(sample, std::fmod(bm, kTwoPi));
                bool found = false;
                const C A[3] = {pa0, pam, pa1};
                const double FA[3] = {a0, am, a1};
                const C B[3] = {pb0, pbm, pb1};
                const double FB[3] = {b0, bm, b1};
                for (int ai = 0; ai < 2 && !found; ++ai) {
                    for (int bi = 0; bi < 2 && !found; ++bi) {
                        double tt, uu;
                        if (segments_cross(A[ai], A[ai + 1], B[bi], B[bi + 1], tt, uu)) {
                            pa0 = A[ai]; pa1 = A[ai + 1]; a0 = FA[ai]; a1 = FA[ai + 1];
                            pb0 = B[bi]; pb1 = B[bi + 1]; b0 = FB[bi]; b1 = FB[bi + 1];
                            found = true;
                        }
                    }
                }
                if (!found) break; // grazing polyline artifact, keep current box
            }
            double tt, uu;
            C where = 0.5 * (pa0 + pa1);
            if (segments_cross(pa0, pa1, pb0, pb1, tt, uu))
                where = pa0 + tt * (pa1 - pa0);
            hits.push_back({std::fmod(0.5 * (a0 + a1), kTwoPi),
                            std::fmod(0.5 * (b0 + b1), kTwoPi), where});
        }
    }

    // Merge duplicates from arcs meeting at shared sample points.
    std::vector<Crossing> unique;
    for (const auto& h : hits) {
        bool dup = false;
        for (const auto& u2 : unique)
            if (std::abs(h.point - u2.point) < 1e-7) { dup = true; break; }
        if (!dup) unique.push_back(h);
    }
    return unique;
}

AxisCrossings axis_crossings(const CurveSample& sample) {
    AxisCrossings out;
    const auto& P = sample.points;
    const auto& F = sample.phis;
    const std::size_t n = P.size();
    if (n < 2) return out;

    auto refine = [&](double fa, double fb, double ra, double rb) {
        for (int it = 0; it < 80 && fb - fa > 1e-12; ++it) {
            const double fm = 0.5 * (fa + fb);
            const double rm = curve_point(sample, std::fmod(fm, kTwoPi)).real();
            if ((ra < 0.0) != (rm < 0.0)) { fb = fm; rb = rm; }
            else { fa = fm; ra = rm; }
        }
        (void)rb;
        return 0.5 * (fa + fb);
    };

    const std::size_t last = sample.closed() ? n : n - 1;
    for (std::size_t i = 0; i < last; ++i) {
        const std::size_t j = (i + 1) % n;
        if (j != 0 && spans_gap(sample, F[i], F[j])) continue;
        const double ra = P[i].real(), rb = P[j].real();
        if (std::abs(ra) < 1e-12 && std::abs(rb) < 1e-12) {
            out.tangency_suspected = true;
            continue;
        }
        if ((ra < 0.0) != (rb < 0.0)) {
            const double fb = (j == 0) ? F[j] + kTwoPi : F[j];
            out.angles.push_back(std::fmod(refine(F[i], fb, ra, rb), kTwoPi));
            ++out.count;
        }
    }
    return out;
}

CurveClassification classify_image(double q, Precision prec, int resolution, Exec exec) {
    core::detail::require_q_open_interval(q);
    auto sample = sample_circle_image(q, resolution, prec, exec);

    CurveClassification cls;
    cls.q = q;

    auto prof = curvature_profile(sample);
    cls.inflection_count = prof.inflection_count;
    cls.self_intersections = detect_self_intersections(sample);
    cls.vertical_axis_crossings = axis_crossings(sample).count;
    cls.is_convex = cls.inflection_count == 0 && cls.self_intersections.empty();

    double min_d = std::numeric_limits<double>::infinity();
    for (const auto& p : sample.points) min_d = std::min(min_d, std::abs(p));
    cls.min_distance_to_origin = min_d;

    // Cusp indicator: minimum parametrization speed relative to its mean.
    double mean_speed = 0.0, min_speed = std::numeric_limits<double>::infinity();
    double min_speed_phi = 0.0;
    for (std::size_t i = 0; i < sample.tangents.size(); ++i) {
        const double s = std::abs(sample.tangents[i]);
        mean_speed += s;
        if (s < min_speed) { min_speed = s; min_speed_phi = sample.phis[i]; }
    }
    mean_speed /= std::max<std::size_t>(sample.tangents.size(), 1);
    cls.cusp_indicator = mean_speed > 0.0 ? min_speed / mean_speed : 0.0;
    if (cls.cusp_indicator < 1e-6) cls.has_cusp_near = min_speed_phi;

    // Winding of the sampled polyline around (1, 0).
    const C target(1.0, 0.0);
    double total = 0.0;
    const std::size_t n = sample.points.size();
    for (std::size_t i = 0; i < n; ++i) {
        const C a = sample.points[i] - target;
        const C b = sample.points[(i + 1) % n] - target;
        if (a == C(0.0) || b == C(0.0)) { total = 0.0; break; }
        const C r = b / a;
        total += std::atan2(r.imag(), r.real());
    }
    cls.surrounds_point_1_0 = std::lround(total / kTwoPi) != 0;
    return cls;
}

namespace {

// Winding of a closed polyline around a point.
int winding_of(const std::vector<C>& poly, C z) {
    double total = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const C a = poly[i] - z;
        const C b = poly[(i + 1) % n] - z;
        const double na = std::abs(a), nb = std::abs(b);
        if (na == 0.0 || nb == 0.0) return 1; // on the contour counts as inside
        const C r = b / a;
        total += std::atan2(r.imag(), r.real());
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

} // namespace

bool nesting_check(double q_inner, double q_outer, Precision prec) {
    if (q_inner == q_outer) return true; // identical curves, vacuously nested
    auto inner = sample_circle_image(q_inner, 512, prec);
    auto outer = sample_circle_image(q_outer, 512, prec);
    auto crossings = detect_self_intersections(outer);

    std::vector<C> contour;
    if (crossings.empty()) {
        contour = outer.points;
    } else {
        // Excise the loop: the crossing splits the curve into two closed
        // pieces; the shorter one (by chord length) is the loop.  Both
        // pieces are stitched in traversal order so they stay continuous.
        const auto& c = crossings.front();
        double lo = std::min(c.phi_a, c.phi_b), hi = std::max(c.phi_a, c.phi_b);
        std::vector<C> pieceIn, pieceOut;
        pieceIn.push_back(c.point);
        pieceOut.push_back(c.point);
        for (std::size_t i = 0; i < outer.phis.size(); ++i)
            if (outer.phis[i] > lo && outer.phis[i] < hi)
                pieceIn.push_back(outer.points[i]);
        for (std::size_t i = 0; i < outer.phis.size(); ++i)
            if (outer.phis[i] > hi) pieceOut.push_back(outer.points[i]);
        for (std::size_t i = 0; i < outer.phis.size(); ++i)
            if (outer.phis[i] < lo) pieceOut.push_back(outer.points[i]);
        auto arclen = [](const std::vector<C>& poly) {
            double L = 0.0;
            for (std::size_t i = 0; i + 1 < poly.size(); ++i) L += std::abs(poly[i + 1] - poly[i]);
            return L;
        };
        contour = arclen(pieceIn) >= arclen(pieceOut) ? pieceIn : pieceOut;
    }

    for (const auto& p : inner.points)
        if (winding_of(contour, p) == 0) return false;
    return true;
}

double threshold_search(Feature feature, double q_lo, double q_hi, Precision prec) {
    auto indicator = [&](double q) {
        auto cls = classify_image(q, prec);
        switch (feature) {
            case Feature::cusp: return cls.cusp_indicator < 1e-3;
            case Feature::right_inflections: return cls.inflection_count >= 2;
            case Feature::self_intersection: return !cls.self_intersections.empty();
            case Feature::axis_tangency: return cls.vertical_axis_crossings >= 4;
        }
        return false;
    };
    bool at_lo = indicator(q_lo), at_hi = indicator(q_hi);
    if (at_lo == at_hi)
        throw std::domain_error("threshold_search: feature indicator equal at both endpoints");
    double lo = q_lo, hi = q_hi;
    while (std::abs(hi - lo) > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (indicator(mid) == at_lo) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double hyperbola_residual(int resolution) {
    if (resolution < 1) throw std::domain_error("hyperbola_residual: resolution must be >= 1");
    // Points (X, Y) of the q = -1 image through the rational parametrization
    //   t = tan(phi/2):  X = -t^2/(1-t^2),  Y = -t/(1-t^2)
    // (reciprocal form in s = 1/t for |t| > 1), evaluated in double-double.
    const DD half(0.5), quarter(0.25), one(1.0);
    double worst = 0.0;
    for (int k = 0; k < resolution; ++k) {
        const double phi = kTwoPi * k / resolution;
        const double t = std::tan(0.5 * phi);
        DD X, Y;
        if (std::abs(t) <= 1.0) {
            if (std::abs(1.0 - t * t) < 1e-8) continue; // pole at phi = +-pi/2
            const DD td(t);
            const DD denom = one - td * td;
            X = -(td * td) / denom;
            Y = -td / denom;
        } else {
            const double s = 1.0 / t;
            const DD sd(s);
            const DD denom = one - sd * sd;
            if (std::abs(to_double(denom)) < 1e-8) continue;
            X = one / denom;
            Y = sd / denom;
        }
        const DD dx = X - half;
        const DD resid = dx * dx - Y * Y - quarter;
        worst = std::max(worst, std::abs(to_double(resid)));
    }
    return worst;
}

void write_csv(const CurveSample& sample, std::ostream& os) {
    os << "phi,re,im,d_re,d_im,curvature\n";
    char line[256];
    for (std::size_t i = 0; i < sample.phis.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      sample.phis[i], sample.points[i].real(), sample.points[i].imag(),
                      sample.tangents[i].real(), sample.tangents[i].imag(),
                      sample.curvatures[i]);
        os << line;
    }
}

} // namespace thetascope::geom
