// Data-parallel evaluation of theta along circles in the x-plane.  These are
// the hot loops behind disk certification and curve sampling; each has a
// serial reference path and an OpenMP path over identical arithmetic.
#pragma once

#include <complex>
#include <vector>

#include "thetascope/core_eval.hpp"
#include "thetascope/parallel.hpp"

namespace thetascope::sampling {

// theta(q, center + radius e^{i phi}) for each phi.
std::vector<core::CertifiedValue> theta_on_circle(
    double q, std::complex<double> center, double radius,
    const std::vector<double>& phis, core::Precision prec,
    Exec exec = default_exec());

// Value, first and second x-derivative on the origin-centered circle.
struct JetSample {
    std::complex<double> f, fx, fxx;
    double tail_f = 0.0, tail_fx = 0.0, tail_fxx = 0.0;
};

std::vector<JetSample> theta_jet_on_circle(
    double q, double radius, const std::vector<double>& phis,
    core::Precision prec, Exec exec = default_exec());

} // namespace thetascope::sampling
