#include "thetascope/jacobi.hpp"

#include <cmath>

namespace thetascope::jacobi {

namespace {

void require_nonzero(std::complex<double> x) {
    if (x == std::complex<double>(0.0, 0.0))
        throw std::domain_error("jacobi: x must be nonzero");
}

} // namespace

core::CertifiedValue eval_theta_star(double q, std::complex<double> x) {
    core::detail::require_q_open_interval(q);
    core::detail::require_finite(x);
    require_nonzero(x);
    auto a = core::eval_theta(q, x);
    auto b = core::eval_theta(q, 1.0 / x);
    const double inv_ax = 1.0 / std::abs(x);
    core::CertifiedValue out;
    out.value = a.value + b.value / x;
    out.tail_bound = a.tail_bound + b.tail_bound * inv_ax;
    out.terms_used = a.terms_used + b.terms_used;
    return out;
}

TripleProductResult triple_product(double q, std::complex<double> x, double tol) {
    core::detail::require_q_open_interval(q);
    core::detail::require_finite(x);
    require_nonzero(x);
    if (!(tol > 0.0)) throw std::domain_error("triple_product: tol must be > 0");

    const double aq = std::abs(q);
    const double ax = std::abs(x);

    // Past an index M with every remaining factor's |z| <= 1/2, the log-sum
    // majorant |log(1+z)| <= 2|z| turns the product tail into geometric sums:
    //   sum_{m>M} 2 (|q|^m + |x||q|^m + |q|^{m-1}/|x|)
    //     = 2 (1 + |x| + 1/(|q||x|)) |q|^{M+1} / (1 - |q|).
    auto tail_at = [&](int m_done) {
        if (aq == 0.0) return 0.0;
        const double qn = std::pow(aq, m_done + 1);
        const double coef = 1.0 + ax + 1.0 / (aq * ax);
        return std::expm1(2.0 * coef * qn / (1.0 - aq));
    };

    std::complex<double> prod(1.0, 0.0);
    std::complex<double> qm(1.0, 0.0);   // q^{m-1}
    const std::complex<double> qc(q, 0.0);
    const std::complex<double> inv_x = 1.0 / x;

    int m = 0;
    double rel_tail = 0.0;
    const int max_factors = 100000;
    while (m < max_factors) {
        ++m;
        const std::complex<double> factor =
            (1.0 - qm * qc) * (1.0 + x * qm * qc) * (1.0 + qm * inv_x);
        prod *= factor;
        qm *= qc;
        // Factor moduli past m are bounded by |q|^m, |x||q|^m, |q|^{m-1}/|x|.
        const double biggest = std::max({aq, ax * aq, 1.0 / ax}) * std::pow(aq, m);
        if (biggest <= 0.5) {
            rel_tail = tail_at(m);
            if (rel_tail <= tol) break;
        }
    }
    return {prod, m, rel_tail};
}

double identity_residual(double q, std::complex<double> x) {
    auto star = eval_theta_star(q, x);
    auto prod = triple_product(q, x, 1e-13);
    return std::abs(prod.value - star.value);
}

} // namespace thetascope::jacobi
