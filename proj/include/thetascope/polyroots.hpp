// Aberth-Ehrlich simultaneous root finding for complex-coefficient
// polynomials.  Shared by the truncation-root and roots-of-unity paths.
//
// The update is Jacobi-style (every correction reads the previous iterate),
// which keeps the serial and OpenMP paths bit-identical.
#pragma once

#include <complex>
#include <vector>

#include "thetascope/parallel.hpp"

namespace thetascope::poly {

struct RootSet {
    std::vector<std::complex<double>> roots;
    std::vector<double> residuals; // relative residuals |p(z)| / sum |a_j||z|^j
    bool converged = false;
    int iterations = 0;
    int effective_degree = 0; // degree after stripping underflowed leading coefficients
};

// Relative residual of p at z, evaluated through the reversed polynomial
// when |z| > 1 so huge roots never overflow.
double relative_residual(const std::vector<std::complex<double>>& coeffs,
                         std::complex<double> z);

// All roots of sum_j coeffs[j] x^j.  Leading coefficients that underflow to
// zero in double are stripped (the polynomial double can represent is of the
// reduced degree); the result records the effective degree.
RootSet aberth_roots(const std::vector<std::complex<double>>& coeffs,
                     Exec exec = default_exec(),
                     int max_iterations = 400,
                     double tol = 1e-13);

// Starting points on the Newton-polygon circles (Bini's rule): one radius
// per upper-convex-hull edge of (j, log |a_j|).
std::vector<std::complex<double>> initial_points(const std::vector<std::complex<double>>& coeffs);

} // namespace thetascope::poly
