// Times the serial reference path against the OpenMP path for the two hot
// kernels (circle sampling and Aberth iteration) and verifies they agree
// bit for bit.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <vector>

#include "thetascope/polyroots.hpp"
#include "thetascope/sampling.hpp"

using namespace thetascope;
using core::Precision;

namespace {

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <class F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now();
        f();
        best = std::min(best, now() - t0);
    }
    return best;
}

std::vector<double> angles(int n) {
    std::vector<double> phis(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) phis[static_cast<std::size_t>(k)] = 2.0 * M_PI * k / n;
    return phis;
}

double max_abs_diff(const std::vector<core::CertifiedValue>& a,
                    const std::vector<core::CertifiedValue>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i].value - b[i].value));
    return worst;
}

} // namespace

int main() {
    std::printf("%-44s %10s %10s %8s %10s\n", "kernel", "serial ms", "openmp ms",
                "speedup", "max |diff|");

    struct SampleCase {
        const char* name;
        double q;
        int n;
        Precision prec;
    };
    const SampleCase cases[] = {
        {"theta on circle, q=0.7, n=4096", 0.7, 4096, Precision::standard},
        {"theta on circle, q=-0.95, n=2048, extended", -0.95, 2048, Precision::extended},
        {"theta on circle, q=0.98, n=2048, extended", 0.98, 2048, Precision::extended},
    };
    for (const auto& c : cases) {
        const auto phis = angles(c.n);
        std::vector<core::CertifiedValue> rs, rp;
        const double ts = time_best_of(3, [&] {
            rs = sampling::theta_on_circle(c.q, {0.0, 0.0}, 1.0, phis, c.prec, Exec::serial);
        });
        const double tp = time_best_of(3, [&] {
            rp = sampling::theta_on_circle(c.q, {0.0, 0.0}, 1.0, phis, c.prec, Exec::parallel);
        });
        std::printf("%-44s %10.3f %10.3f %8.2fx %10.2e\n", c.name, ts * 1e3, tp * 1e3,
                    ts / tp, max_abs_diff(rs, rp));
    }

    {
        std::vector<std::complex<double>> coeffs(257);
        double cc = 1.0, qp = 1.0;
        coeffs[0] = 1.0;
        for (int j = 1; j <= 256; ++j) {
            qp *= 0.98;
            cc *= qp;
            coeffs[static_cast<std::size_t>(j)] = cc;
        }
        poly::RootSet rs, rp;
        const double ts = time_best_of(3, [&] { rs = poly::aberth_roots(coeffs, Exec::serial); });
        const double tp = time_best_of(3, [&] { rp = poly::aberth_roots(coeffs, Exec::parallel); });
        double worst = 0.0;
        for (std::size_t i = 0; i < rs.roots.size(); ++i)
            worst = std::max(worst, std::abs(rs.roots[i] - rp.roots[i]));
        std::printf("%-44s %10.3f %10.3f %8.2fx %10.2e\n",
                    "Aberth roots of theta_256 at q=0.98", ts * 1e3, tp * 1e3, ts / tp,
                    worst);
    }
    return 0;
}
