// The bilateral sum Theta*(q,x) = theta(q,x) + theta(q,1/x)/x and its
// factorization by the Jacobi triple product
//   prod_{m>=1} (1 - q^m)(1 + x q^m)(1 + q^{m-1}/x).
#pragma once

#include <complex>

#include "thetascope/core_eval.hpp"

namespace thetascope::jacobi {

struct TripleProductResult {
    std::complex<double> value;
    int factors_used = 0;
    double tail_bound = 0.0; // relative bound on the omitted infinite tail
};

// Theta* realized as theta(q,x) + theta(q,1/x)/x, never as the bilateral
// sum; the two certified tails combine into the reported bound.
core::CertifiedValue eval_theta_star(double q, std::complex<double> x);

// Partial product over m = 1..M with M chosen so the majorized relative
// tail is at most tol.
TripleProductResult triple_product(double q, std::complex<double> x, double tol);

// |triple_product - eval_theta_star| with both sides at tight tolerance.
double identity_residual(double q, std::complex<double> x);

} // namespace thetascope::jacobi
