#include "thetascope/core_eval.hpp"

#include <cmath>

namespace thetascope::core {

namespace detail {

void require_q_open_interval(double q) {
    if (!(std::abs(q) < 1.0))
        throw std::domain_error("theta: q must satisfy |q| < 1");
}

void require_finite(std::complex<double> x) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
        throw std::domain_error("theta: x must be finite");
}

} // namespace detail

namespace {

CertifiedValue checked(CertifiedValue cv) {
    if (!std::isfinite(cv.value.real()) || !std::isfinite(cv.value.imag()) ||
        !std::isfinite(cv.tail_bound))
        throw std::domain_error("theta: evaluation exceeds the double range at this (q, x)");
    return cv;
}

template <class R>
CertifiedValue run_theta(double q, std::complex<double> x, double eps) {
    auto sv = series::theta<R>(Cx<R>{R(q)}, widen<R>(x), eps);
    return checked({to_std(sv.value), sv.tail_bound, sv.terms_used});
}

template <class R>
CertifiedValue run_theta_dx(double q, std::complex<double> x, double eps) {
    auto sv = series::theta_dx<R>(Cx<R>{R(q)}, widen<R>(x), eps);
    return checked({to_std(sv.value), sv.tail_bound, sv.terms_used});
}

} // namespace

CertifiedValue eval_theta(double q, std::complex<double> x, Precision prec) {
    detail::require_q_open_interval(q);
    detail::require_finite(x);
    if (prec == Precision::extended)
        return run_theta<DD>(q, x, series::kEpsExtended);
    if (detail::promote_standard(q))
        return run_theta<DD>(q, x, series::kEpsStandard);
    return run_theta<double>(q, x, series::kEpsStandard);
}

CertifiedValue eval_theta_dx(double q, std::complex<double> x, Precision prec) {
    detail::require_q_open_interval(q);
    detail::require_finite(x);
    if (prec == Precision::extended)
        return run_theta_dx<DD>(q, x, series::kEpsExtended);
    if (detail::promote_standard(q))
        return run_theta_dx<DD>(q, x, series::kEpsStandard);
    return run_theta_dx<double>(q, x, series::kEpsStandard);
}

std::complex<double> eval_truncation(double q, std::complex<double> x, int n) {
    return eval_truncation(std::complex<double>(q, 0.0), x, n);
}

std::complex<double> eval_truncation(std::complex<double> q, std::complex<double> x, int n) {
    if (n < 0) throw std::domain_error("eval_truncation: n must be >= 0");
    detail::require_finite(q);
    detail::require_finite(x);
    return to_std(series::truncation<double>(from_std(q), from_std(x), n));
}

double functional_equation_residual(double q, std::complex<double> x) {
    detail::require_q_open_interval(q);
    detail::require_finite(x);
    const Cx<DD> qd{DD(q)};
    const Cx<DD> xd = widen<DD>(x);
    auto lhs = series::theta<DD>(qd, xd, series::kEpsExtended);
    auto rhs = series::theta<DD>(qd, qd * xd, series::kEpsExtended);
    Cx<DD> resid = lhs.value - (Cx<DD>{DD(1.0)} + qd * xd * rhs.value);
    return scalar_to_double(abs(resid));
}

std::complex<double> closed_form(double q, std::complex<double> x) {
    detail::require_finite(x);
    if (q == 1.0) {
        if (x == std::complex<double>(1.0, 0.0))
            throw PoleError("closed_form: pole of 1/(1-x) at x = 1", x);
        return 1.0 / (1.0 - x);
    }
    if (q == -1.0) {
        std::complex<double> denom = 1.0 + x * x;
        if (denom == std::complex<double>(0.0, 0.0))
            throw PoleError("closed_form: pole of (1-x)/(1+x^2) at x = +-i", x);
        return (1.0 - x) / denom;
    }
    throw std::domain_error("closed_form: q must be exactly +1 or -1");
}

namespace {

// theta(q,-1) for q in (0,1): a single alternating series with decreasing
// terms 1 - q + q^3 - q^6 + ...
template <class R>
ThetaAtMinusOne minus_one_positive(double q, double eps) {
    R sum(1.0);
    R term(1.0);
    R qp(1.0);
    const R qq(q);
    double sign = -1.0;
    for (int j = 1; j < series::kMaxTerms; ++j) {
        qp *= qq;       // q^j
        term *= qp;     // q^{j(j+1)/2}
        sum += R(sign) * term;
        if (std::abs(scalar_to_double(term)) < eps) break;
        sign = -sign;
    }
    ThetaAtMinusOne out;
    out.value = scalar_to_double(sum);
    return out;
}

// theta(q,-1) for q in (-1,0): with u = -q the sum splits as
//   (1 - u^3 + u^10 - u^21 + ...) + (u - u^6 + u^15 - u^28 + ...),
// two Leibniz series whose partial sums bracket their limits.  Exponent
// steps are 4m+3 and 4m+5, accumulated as powers.
template <class R>
ThetaAtMinusOne minus_one_negative(double q, double eps) {
    const R u(-q);
    const R u4 = u * u * u * u;

    R low(0.0), high(0.0), total(0.0);

    // seriesA: terms u^{m(2m+1)}, m >= 0, signs +,-,+,...
    // seriesB: terms u^{(m+1)(2m+1)}, m >= 0, signs +,-,+,...
    for (int which = 0; which < 2; ++which) {
        R term = (which == 0) ? R(1.0) : u;
        R step = (which == 0) ? u * u * u : u * u * u * u * u; // u^3 resp. u^5
        R partial(0.0);
        R lo(0.0), hi(0.0);
        double sign = 1.0;
        for (int m = 0; m < series::kMaxTerms; ++m) {
            partial += R(sign) * term;
            if (sign > 0) hi = partial; else lo = partial;
            if (std::abs(scalar_to_double(term)) < eps) {
                // Converged: pinch the bracket onto the partial sum.
                if (sign > 0) lo = partial - term; else hi = partial + term;
                break;
            }
            term *= step;
            step *= u4;
            sign = -sign;
        }
        low += lo;
        high += hi;
        total += partial;
    }

    ThetaAtMinusOne out;
    out.value = scalar_to_double(total);
    out.has_bracket = true;
    out.lower = scalar_to_double(low);
    out.upper = scalar_to_double(high);
    return out;
}

} // namespace

ThetaAtMinusOne theta_at_minus_one(double q, Precision prec) {
    detail::require_q_open_interval(q);
    const bool ext = prec == Precision::extended || detail::promote_standard(q);
    const double eps = ext ? 1e-33 : 1e-18;
    if (q >= 0.0)
        return ext ? minus_one_positive<DD>(q, eps) : minus_one_positive<double>(q, eps);
    return ext ? minus_one_negative<DD>(q, eps) : minus_one_negative<double>(q, eps);
}

namespace detail {

namespace {

// 1 - e^{i phi} = 2 sin(phi/2) (sin(phi/2), -cos(phi/2)): cancellation-free.
Cx<double> one_minus_circle(double phi) {
    const double s = std::sin(0.5 * phi);
    const double c = std::cos(0.5 * phi);
    return {2.0 * s * s, -2.0 * s * c};
}

// 1 + e^{2 i phi} = 2 cos(phi) (cos(phi), sin(phi)).
Cx<double> one_plus_square_circle(double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {2.0 * c * c, 2.0 * c * s};
}

} // namespace

Cx<double> closed_form_on_circle(int q_sign, double phi) {
    const Cx<double> x{std::cos(phi), std::sin(phi)};
    const Cx<double> u = one_minus_circle(phi);
    if (q_sign > 0)
        return Cx<double>{1.0} / u;
    return u / one_plus_square_circle(phi);
}

ClosedFormJet closed_form_jet_on_circle(int q_sign, double phi) {
    const Cx<double> x{std::cos(phi), std::sin(phi)};
    const Cx<double> u = one_minus_circle(phi); // 1 - x
    ClosedFormJet jet;
    if (q_sign > 0) {
        const Cx<double> inv = Cx<double>{1.0} / u;
        jet.f = inv;
        jet.fx = inv * inv;
        jet.fxx = jet.fx * inv * 2.0;
        return jet;
    }
    const Cx<double> v = one_plus_square_circle(phi); // 1 + x^2
    const Cx<double> x2 = x * x;
    jet.f = u / v;
    jet.fx = (x2 - x * 2.0 - Cx<double>{1.0}) / (v * v);
    jet.fxx = (x2 * x - x2 * 3.0 - x * 3.0 + Cx<double>{1.0}) * (-2.0) / (v * v * v);
    return jet;
}

} // namespace detail

} // namespace thetascope::core
