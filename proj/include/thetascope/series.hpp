// Series kernels for the partial theta function and its x-derivatives,
// templated over the working scalar (double or DD).
//
// Terms are generated by the exact ratio recurrence t_{j+1} = t_j * q^{j+1} * x
// with the power q^{j+1} accumulated incrementally.  Once the consecutive-term
// ratio |q|^{j+1} |x| falls at or below the threshold r, the remaining tail is
// majorized by a geometric series, which is what the certified bounds report.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "thetascope/cx.hpp"
#include "thetascope/dd.hpp"

namespace thetascope::series {

inline constexpr double kRatioThreshold = 0.5;
inline constexpr double kEpsStandard = 1.1102230246251565e-16; // 2^-53
inline constexpr double kEpsExtended = 1e-31;
inline constexpr int kMaxTerms = 200000;
// Inflates FP-evaluated majorants so they stay true upper bounds.
inline constexpr double kBoundSafety = 1.0 + 1e-12;

template <class R>
struct SeriesValue {
    Cx<R> value{};
    double tail_bound = 0.0;
    int terms_used = 0;
};

// Compensated accumulation in double; DD addition is already accurate.
template <class R>
struct Accumulator {
    Cx<R> sum{};
    void add(Cx<R> t) { sum += t; }
    Cx<R> result() const { return sum; }
};

template <>
struct Accumulator<double> {
    double sr = 0.0, si = 0.0;   // running sums
    double cr = 0.0, ci = 0.0;   // Neumaier compensations
    static void step(double& s, double& c, double v) {
        double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    void add(Cx<double> t) {
        step(sr, cr, t.re);
        step(si, ci, t.im);
    }
    Cx<double> result() const { return {sr + cr, si + ci}; }
};

// theta(q, x) = sum_{j>=0} q^{j(j+1)/2} x^j with certified geometric tail
// |t_{N+1}| / (1 - r).  q may be complex (used at roots of unity); only |q|
// enters the bound.
template <class R>
SeriesValue<R> theta(Cx<R> q, Cx<R> x, double eps, double r = kRatioThreshold) {
    Accumulator<R> acc;
    Cx<R> t{R(1.0)};
    Cx<R> qp{R(1.0)};
    acc.add(t);

    const double aq = abs_estimate(q);
    const double ax = abs_estimate(x);
    double aq_pow = aq; // |q|^{j+1}

    int j = 0;
    double tail = 0.0;
    while (true) {
        const double step_ratio = aq_pow * ax;
        if (step_ratio <= r) {
            const double m_next = abs_estimate(t) * step_ratio;
            tail = m_next / (1.0 - r) * kBoundSafety;
            double scale = 1.0 + abs_estimate(acc.result());
            if (tail <= eps * scale) break;
        }
        if (j >= kMaxTerms) break;
        qp *= q;       // q^{j+1}
        t *= qp;
        t *= x;        // t_{j+1}
        acc.add(t);
        aq_pow *= aq;
        ++j;
    }
    return {acc.result(), tail, j + 1};
}

// d theta / dx = sum_{j>=1} j q^{j(j+1)/2} x^{j-1}.  The extra factor j is
// absorbed by tightening the ratio test; the reported tail uses the majorant
// |t_{N+1}| (N+2) / (1-r)^2.
template <class R>
SeriesValue<R> theta_dx(Cx<R> q, Cx<R> x, double eps, double r = kRatioThreshold) {
    const double ax = abs_estimate(x);
    if (ax == 0.0) {
        // Only the j = 1 term survives at x = 0.
        return {q, 0.0, 1};
    }
    Accumulator<R> acc;
    Cx<R> qp = q;       // q^{j}
    Cx<R> t = q;        // term j = 1
    acc.add(t);

    const double aq = abs_estimate(q);
    double aq_pow = aq * aq; // |q|^{j+1}

    int j = 1;
    double tail = 0.0;
    while (true) {
        const double step_ratio = aq_pow * ax * (double(j) + 1.0) / double(j);
        if (step_ratio * (double(j) + 2.0) / (double(j) + 1.0) <= r) {
            const double m_next = abs_estimate(t) * step_ratio;
            tail = m_next * (double(j) + 2.0) / ((1.0 - r) * (1.0 - r)) * kBoundSafety;
            double scale = 1.0 + abs_estimate(acc.result());
            if (tail <= eps * scale) break;
        }
        if (j >= kMaxTerms) break;
        qp *= q;                            // q^{j+1}
        t *= qp;
        t *= x;
        t = t * (R((double(j) + 1.0) / double(j)));
        acc.add(t);
        aq_pow *= aq;
        ++j;
    }
    return {acc.result(), tail, j};
}

// Exact partial sum of n+1 terms; identical term recurrence and accumulation
// order as theta(), so it reproduces a certified value bit for bit when n is
// terms_used - 1.
template <class R>
Cx<R> truncation(Cx<R> q, Cx<R> x, int n) {
    Accumulator<R> acc;
    Cx<R> t{R(1.0)};
    Cx<R> qp{R(1.0)};
    acc.add(t);
    for (int j = 1; j <= n; ++j) {
        qp *= q;
        t *= qp;
        t *= x;
        acc.add(t);
    }
    return acc.result();
}

// theta, theta_x, theta_xx in one pass over shared powers (x != 0).
// The stopping rule enforces ratio <= r for all three series at once, so the
// plain geometric bound applies to each.
template <class R>
struct JetValue {
    Cx<R> f, fx, fxx;
    double tail_f = 0.0, tail_fx = 0.0, tail_fxx = 0.0;
    int terms_used = 0;
};

template <class R>
JetValue<R> theta_jet(Cx<R> q, Cx<R> x, double eps, double r = kRatioThreshold) {
    Accumulator<R> a0, a1, a2;
    Cx<R> t{R(1.0)};   // q^{T_j} x^j
    Cx<R> qp{R(1.0)};
    a0.add(t);

    const double aq = abs_estimate(q);
    const double ax = abs_estimate(x);
    double aq_pow = aq;

    JetValue<R> out;
    int j = 0;
    Cx<R> t1{}, t2{};
    while (true) {
        const double aqx = aq_pow * ax;
        // Worst consecutive-term ratio among the three series is the
        // second derivative's (j+2)/j * |q|^{j+1} |x|; guard with it.
        const double worst = (j >= 1) ? aqx * (double(j) + 2.0) / double(j) : 1.0;
        if (j >= 1 && worst <= r) {
            const double m0 = abs_estimate(t) * aqx;
            const double m1 = m0 * (double(j) + 1.0) / ax;
            const double m2 = m1 * double(j) / ax;
            const double g = kBoundSafety / (1.0 - r);
            out.tail_f = m0 * g;
            out.tail_fx = m1 * g;
            out.tail_fxx = m2 * g;
            const double s0 = 1.0 + abs_estimate(a0.result());
            const double s1 = 1.0 + abs_estimate(a1.result());
            const double s2 = 1.0 + abs_estimate(a2.result());
            if (out.tail_f <= eps * s0 && out.tail_fx <= eps * s1 && out.tail_fxx <= eps * s2)
                break;
        }
        if (j >= kMaxTerms) break;
        qp *= q;
        t *= qp;
        t *= x;
        ++j;
        // j q^{T_j} x^{j-1} and j(j-1) q^{T_j} x^{j-2} share the base term.
        t1 = (t / x) * R(double(j));
        a1.add(t1);
        if (j >= 2) {
            t2 = (t1 / x) * R(double(j) - 1.0);
            a2.add(t2);
        }
        a0.add(t);
        aq_pow *= aq;
    }
    out.f = a0.result();
    out.fx = a1.result();
    out.fxx = a2.result();
    out.terms_used = j + 1;
    return out;
}

} // namespace thetascope::series
