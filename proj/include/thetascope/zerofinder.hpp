// Zero localization for theta(q, .) and zero-free-disk certification by the
// argument principle, plus the supporting bounds: Enestrom-Kakeya, the
// 1/sqrt|q| disk bound, and the certified truncation tail budget.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "thetascope/core_eval.hpp"
#include "thetascope/parallel.hpp"
#include "thetascope/polyroots.hpp"

namespace thetascope::zeros {

using core::Precision;

class DegenerateDerivativeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ZeroRecord {
    enum class Source { truncation_root, continuation, user_seed };
    double q = 0.0;
    std::complex<double> location;
    double residual = 0.0; // |theta(q, location)|
    int newton_steps = 0;
    Source source = Source::user_seed;
    std::vector<double> step_sizes; // refinement history, one entry per Newton step
    Cx<DD> location_ext;            // carries the extended-precision location
};

struct DiskCertificate {
    enum class Status { certified, inconclusive };
    double q = 0.0;
    double radius = 0.0;
    int winding = 0;
    double min_modulus_lb = 0.0; // min over samples of |theta| minus its tail
    long samples = 0;
    Status status = Status::inconclusive;
};

struct TailBudget {
    double t0_bound = 0.0;
    double first_omitted = 0.0;
    double ratio = 0.0;
};

struct TruncationRoots {
    double q = 0.0;
    int n = 0;
    int effective_degree = 0; // degree representable in double after underflow
    bool converged = false;
    std::vector<std::complex<double>> roots;
    std::vector<double> residuals; // relative residuals of theta_n at each root
};

// All roots of the degree-n truncation theta_n(q, .) by simultaneous
// iteration.  Coefficients below the double underflow threshold are dropped;
// effective_degree records how many roots that leaves.
TruncationRoots truncation_roots(double q, int n, Exec exec = default_exec());

// Newton refinement x <- x - theta/theta_x on certified evaluations until
// the step is below 1e-13 (1 + |x|), or 1e-28 (1 + |x|) in extended mode.
ZeroRecord refine_zero(double q, std::complex<double> seed,
                       Precision prec = Precision::standard);

// Extended-seed entry point: a double seed cannot carry the ~1e-34 scale
// separation between a truncation root and the series zero, this overload
// can.
ZeroRecord refine_zero(double q, Cx<DD> seed, Precision prec);

// Double-double Newton polish of a truncation root against theta_n itself.
Cx<DD> polish_truncation_root(double q, int n, std::complex<double> seed);

// Argument-principle zero count on |x| = radius: adaptive sampling until
// every arc turns the argument by less than pi/3 and the certified modulus
// lower bound stays positive.
DiskCertificate count_zeros_in_disk(double q, double radius,
                                    Precision prec = Precision::standard,
                                    Exec exec = default_exec());

// Radius-1 wrapper asserting Theorem-1 shape output (winding 0 expected).
DiskCertificate certify_unit_disk(double q, Precision prec = Precision::standard,
                                  Exec exec = default_exec());

// Winding on a radius-1e-6 circle about a converged zero.
int zero_multiplicity(double q, std::complex<double> zero_location,
                      Precision prec = Precision::standard);

// min_j |a_{j-1}/a_j| over the truncation coefficients, which is 1/q.
double enestrom_kakeya_bound(double q, int n);

// 1 - sum_{j>=1} |q|^{j^2/2}, a lower bound for |theta| on |x| = 1/sqrt|q|;
// valid (and positive) for 0 < |q| <= 0.4.
double sqrt_disk_bound(double q);

// first_omitted = |q|^{(n+1)(n+2)/2} x^{n+1}, ratio = 1/(|q|^{n+2} x),
// t0_bound = first_omitted / (1 - 1/ratio); computed in the log domain.
TailBudget tail_budget(double q, double x_modulus, int n);

// Predictor-corrector continuation of a zero from q_start to q_end with
// adaptive step halving on corrector failure.
struct TrackResult {
    std::vector<ZeroRecord> records;
    bool reached_end = false;
    std::string note;
};
TrackResult track_zero(double q_start, double q_end, std::complex<double> seed,
                       int steps, Precision prec = Precision::standard);

} // namespace thetascope::zeros
