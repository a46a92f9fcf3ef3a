// Certified evaluation of the partial theta function
//   theta(q, x) = sum_{j>=0} q^{j(j+1)/2} x^j,   -1 < q < 1,
// its x-derivative, exact truncations, the closed forms at q = +-1 and the
// special value theta(q, -1).
#pragma once

#include <complex>
#include <stdexcept>

#include "thetascope/series.hpp"

namespace thetascope::core {

enum class Precision { standard, extended };

// A value together with a rigorous bound on the truncation tail and the
// number of series terms that produced it.
struct CertifiedValue {
    std::complex<double> value;
    double tail_bound = 0.0;
    int terms_used = 0;
};

// Thrown by closed_form at x = 1 (q = 1) and x = +-i (q = -1).
class PoleError : public std::domain_error {
public:
    PoleError(const std::string& msg, std::complex<double> where)
        : std::domain_error(msg), pole(where) {}
    std::complex<double> pole;
};

// |q| < 1 and x finite, or a domain error.
CertifiedValue eval_theta(double q, std::complex<double> x,
                          Precision prec = Precision::standard);

// Derivative series sum_{j>=1} j q^{j(j+1)/2} x^{j-1}.
CertifiedValue eval_theta_dx(double q, std::complex<double> x,
                             Precision prec = Precision::standard);

// Exact partial sum of n+1 terms.  Complex q is accepted (roots of unity).
std::complex<double> eval_truncation(double q, std::complex<double> x, int n);
std::complex<double> eval_truncation(std::complex<double> q, std::complex<double> x, int n);

// |theta(q,x) - 1 - q x theta(q,qx)|, both sides evaluated in extended
// precision so the reported residual is dominated by the certified tails.
double functional_equation_residual(double q, std::complex<double> x);

// theta(1,x) = 1/(1-x), theta(-1,x) = (1-x)/(1+x^2); q must be exactly +-1.
std::complex<double> closed_form(double q, std::complex<double> x);

// theta(q,-1).  For q in (-1,0) the sum splits into two alternating series
// whose partial sums bracket the value; the bracket is reported.
struct ThetaAtMinusOne {
    double value = 0.0;
    bool has_bracket = false;
    double lower = 0.0;
    double upper = 0.0;
};
ThetaAtMinusOne theta_at_minus_one(double q, Precision prec = Precision::standard);

namespace detail {

// Standard mode is promoted to double-double when |q| > 0.95; the near -1
// circle images pass very close to the origin and plain double rounding
// would swamp the certified tails there.
inline bool promote_standard(double q) { return std::abs(q) > 0.95; }

void require_q_open_interval(double q);
void require_finite(std::complex<double> x);

// Stable closed-form values and jets on the unit circle at angle phi,
// computed through half-angle forms so the pole-adjacent cancellation in
// 1 - e^{i phi} never happens.
Cx<double> closed_form_on_circle(int q_sign, double phi);
struct ClosedFormJet {
    Cx<double> f, fx, fxx;
};
ClosedFormJet closed_form_jet_on_circle(int q_sign, double phi);

} // namespace detail

} // namespace thetascope::core
