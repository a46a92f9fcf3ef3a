// Numerator polynomials of theta(omega, .) at primitive roots of unity:
// for omega of odd order n the coefficient sequence omega^{j(j+1)/2} is
// n-periodic and theta(omega,x) = P(x)/(1-x^n); for even n it is 2n-periodic
// and theta(omega,x) = Q(x)/(1-x^{2n}).  Both numerators are self-reciprocal
// and have at least one root strictly inside the unit disk.
#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "thetascope/zerofinder.hpp"

namespace thetascope::unity {

// Raised when a computation would falsify the interior-root lemma.
class ContradictionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PrimitiveRoot {
    int n = 0;
    int k = 0;
    std::complex<double> value; // e^{2 pi i k / n}
};

struct UnityNumerator {
    PrimitiveRoot root;
    int period = 0;                  // n (odd), 2n (even), n (antiperiodic block)
    bool antiperiodic_block = false; // block form: coefficients flip sign after n steps
    std::vector<std::complex<double>> coeffs; // coeffs[j] = omega^{j(j+1)/2}
};

PrimitiveRoot make_primitive_root(int n, int k);

// Full-period numerator (P for n odd, Q for n even).
UnityNumerator build_numerator(int n, int k);

// The degree n-1 block sum_{j=0}^{n-1} omega^{j(j+1)/2} x^j for even n,
// where the coefficient sequence is antiperiodic; its rational form carries
// denominator 1 + x^n.
UnityNumerator build_antiperiodic_block(int n, int k);

// max_j |coeffs[j] - coeffs[period-1-j]|; self-reciprocity makes this ~0.
double check_self_reciprocal(const UnityNumerator& num);

// Minimum-modulus root of the numerator; throws ContradictionError if no
// root has modulus < 1 - 1e-9.
std::complex<double> interior_root(const UnityNumerator& num,
                                   Exec exec = default_exec());

// |direct sum of theta(omega, x) - P(x)/denominator| for |x| <= 0.9, where
// the denominator is 1 - x^period (or 1 + x^period for the block form).
double rational_form_residual(const UnityNumerator& num, std::complex<double> x);

// Which denominator sign matches the direct sum at x: +1 for 1 - x^period,
// -1 for 1 + x^period.
int resolve_denominator_sign(const UnityNumerator& num, std::complex<double> x);

// Zero of theta(rho * omega, .) near the interior root, for rho in [0.9, 1):
// Newton on the certified series at complex q.  The record's q field holds
// rho; the phase is 2 pi k / n.
zeros::ZeroRecord rouche_neighborhood_zero(int n, int k, double rho);

} // namespace thetascope::unity
