#include "thetascope/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace thetascope::poly {

namespace {

using C = std::complex<double>;

// p(z) and p'(z) by direct Horner plus the magnitude sum for the relative
// residual.  Only safe for |z| <= 1 plus a margin; large z goes through the
// reversed form.
struct EvalResult {
    C p, dp;
    double mag_sum; // sum |a_j| |z|^j (or the reversed analogue)
};

EvalResult horner_direct(const std::vector<C>& a, C z) {
    const int n = static_cast<int>(a.size()) - 1;
    C p = a[n], dp = 0.0;
    double mag = std::abs(a[n]);
    const double az = std::abs(z);
    for (int j = n - 1; j >= 0; --j) {
        dp = dp * z + p;
        p = p * z + a[j];
        mag = mag * az + std::abs(a[j]);
    }
    return {p, dp, mag};
}

// With w = 1/z and g(w) = sum a_{n-k} w^k:
//   p(z)  = z^n g(w),
//   p'(z) = z^{n-1} (n g(w) - w g'(w)),
// so the Newton ratio is p/p' = z g / (n g - w g').
struct ReversedResult {
    C g, dg;
    double mag_sum; // sum |a_{n-k}| |w|^k
};

ReversedResult horner_reversed(const std::vector<C>& a, C w) {
    // g(w) = a_n + a_{n-1} w + ... + a_0 w^n, so Horner consumes a_0..a_n.
    const int n = static_cast<int>(a.size()) - 1;
    C g = a[0], dg = 0.0;
    double mag = std::abs(a[0]);
    const double aw = std::abs(w);
    for (int k = 1; k <= n; ++k) {
        dg = dg * w + g;
        g = g * w + a[k];
        mag = mag * aw + std::abs(a[k]);
    }
    return {g, dg, mag};
}

// Newton ratio p/p' and relative residual at z, overflow-safe.
void newton_ratio(const std::vector<C>& a, C z, C& ratio, double& rel_res) {
    const int n = static_cast<int>(a.size()) - 1;
    if (std::abs(z) <= 1.0) {
        auto e = horner_direct(a, z);
        rel_res = e.mag_sum > 0.0 ? std::abs(e.p) / e.mag_sum : 0.0;
        ratio = (e.dp == C(0.0)) ? C(0.0) : e.p / e.dp;
    } else {
        const C w = 1.0 / z;
        auto e = horner_reversed(a, w);
        rel_res = e.mag_sum > 0.0 ? std::abs(e.g) / e.mag_sum : 0.0;
        const C denom = double(n) * e.g - w * e.dg;
        ratio = (denom == C(0.0)) ? C(0.0) : z * e.g / denom;
    }
}

std::vector<C> strip(const std::vector<C>& coeffs) {
    std::vector<C> a = coeffs;
    while (a.size() > 1 && std::abs(a.back()) == 0.0) a.pop_back();
    return a;
}

} // namespace

double relative_residual(const std::vector<C>& coeffs, C z) {
    auto a = strip(coeffs);
    if (a.size() <= 1) return 0.0;
    C ratio;
    double rel;
    newton_ratio(a, z, ratio, rel);
    return rel;
}

std::vector<C> initial_points(const std::vector<C>& coeffs) {
    auto a = strip(coeffs);
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<C> starts;
    if (n < 1) return starts;

    // Upper convex hull of (j, log|a_j|) over nonzero coefficients.
    struct Pt { int j; double logm; };
    std::vector<Pt> pts;
    for (int j = 0; j <= n; ++j) {
        const double m = std::abs(a[j]);
        if (m > 0.0) pts.push_back({j, std::log(m)});
    }
    std::vector<Pt> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& p1 = hull[hull.size() - 2];
            const auto& p2 = hull[hull.size() - 1];
            // Keep the hull upper: p2 must lie strictly above segment p1-p.
            const double cross = (double(p2.j) - p1.j) * (p.logm - p1.logm) -
                                 (double(p.j) - p1.j) * (p2.logm - p1.logm);
            if (cross >= 0.0) hull.pop_back(); else break;
        }
        hull.push_back(p);
    }

    // One circle of k2-k1 starts per hull edge, radius (|a_k1|/|a_k2|)^{1/(k2-k1)}.
    const double golden = 2.39996322972865332; // angular offset decorrelates annuli
    int edge = 0;
    for (std::size_t e = 1; e < hull.size(); ++e, ++edge) {
        const int k1 = hull[e - 1].j, k2 = hull[e].j;
        const int cnt = k2 - k1;
        const double radius = std::exp((hull[e - 1].logm - hull[e].logm) / cnt);
        for (int l = 0; l < cnt; ++l) {
            const double ang = 2.0 * M_PI * (l + 0.5) / cnt + 0.4 + golden * edge;
            starts.push_back(std::polar(radius, ang));
        }
    }
    return starts;
}

RootSet aberth_roots(const std::vector<C>& coeffs, Exec exec,
                     int max_iterations, double tol) {
    RootSet out;
    auto a = strip(coeffs);
    const int n = static_cast<int>(a.size()) - 1;
    out.effective_degree = n;
    if (n < 1) { out.converged = true; return out; }
    for (auto& c : a)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::domain_error("aberth_roots: non-finite coefficient");

    // Zero roots split off exactly when the constant term vanishes; the
    // iteration runs on the deflated polynomial and they are appended after.
    const std::vector<C> full = a;
    std::size_t zero_roots = 0;
    while (zero_roots < a.size() - 1 && std::abs(a[zero_roots]) == 0.0) ++zero_roots;
    if (zero_roots > 0)
        a.erase(a.begin(), a.begin() + static_cast<long>(zero_roots));

    std::vector<C> z = initial_points(a);
    std::vector<C> z_next(z.size());
    std::vector<char> done(z.size(), 0);

    const double eps = std::numeric_limits<double>::epsilon();
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        bool all_done = true;
        parallel_for(exec, z.size(), [&](std::size_t i) {
            if (done[i]) { z_next[i] = z[i]; return; }
            C ratio;
            double rel;
            newton_ratio(a, z[i], ratio, rel);
            if (rel <= 4.0 * eps) {
                // Residual at rounding level: the Newton ratio is noise.
                z_next[i] = z[i];
                done[i] = 1;
                return;
            }
            C repulse(0.0);
            for (std::size_t k = 0; k < z.size(); ++k) {
                if (k == i) continue;
                const C d = z[i] - z[k];
                if (d != C(0.0)) repulse += 1.0 / d;
            }
            const C denom = 1.0 - ratio * repulse;
            const C corr = (denom == C(0.0)) ? ratio : ratio / denom;
            z_next[i] = z[i] - corr;
            if (std::abs(corr) <= tol * (std::abs(z[i]) + 1e-300))
                done[i] = 1;
        });
        z.swap(z_next);
        for (auto f : done)
            if (!f) { all_done = false; break; }
        if (all_done) break;
    }

    out.roots = z;
    out.roots.insert(out.roots.end(), zero_roots, C(0.0));
    out.iterations = iter;
    out.converged = std::all_of(done.begin(), done.end(), [](char f) { return f != 0; });
    std::sort(out.roots.begin(), out.roots.end(), [](C p, C q) {
        const double ap = std::abs(p), aq = std::abs(q);
        if (ap != aq) return ap < aq;
        if (p.real() != q.real()) return p.real() < q.real();
        return p.imag() < q.imag();
    });
    out.residuals.resize(out.roots.size());
    for (std::size_t i = 0; i < out.roots.size(); ++i) {
        C ratio;
        newton_ratio(full, out.roots[i], ratio, out.residuals[i]);
    }
    return out;
}

} // namespace thetascope::poly
