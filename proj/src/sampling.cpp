#include "thetascope/sampling.hpp"

#include <cmath>

namespace thetascope::sampling {

namespace {

template <class R>
core::CertifiedValue eval_one(double q, std::complex<double> center,
                              double radius, double phi, double eps) {
    const std::complex<double> x =
        center + std::polar(radius, phi);
    auto sv = series::theta<R>(Cx<R>{R(q)}, widen<R>(x), eps);
    return {to_std(sv.value), sv.tail_bound, sv.terms_used};
}

} // namespace

std::vector<core::CertifiedValue> theta_on_circle(
    double q, std::complex<double> center, double radius,
    const std::vector<double>& phis, core::Precision prec, Exec exec) {
    core::detail::require_q_open_interval(q);
    const bool ext = prec == core::Precision::extended || core::detail::promote_standard(q);
    const double eps = ext ? series::kEpsExtended : series::kEpsStandard;

    std::vector<core::CertifiedValue> out(phis.size());
    parallel_for(exec, phis.size(), [&](std::size_t i) {
        out[i] = ext ? eval_one<DD>(q, center, radius, phis[i], eps)
                     : eval_one<double>(q, center, radius, phis[i], eps);
    });
    return out;
}

std::vector<JetSample> theta_jet_on_circle(
    double q, double radius, const std::vector<double>& phis,
    core::Precision prec, Exec exec) {
    core::detail::require_q_open_interval(q);
    const bool ext = prec == core::Precision::extended || core::detail::promote_standard(q);
    const double eps = ext ? series::kEpsExtended : series::kEpsStandard;

    std::vector<JetSample> out(phis.size());
    parallel_for(exec, phis.size(), [&](std::size_t i) {
        const std::complex<double> x = std::polar(radius, phis[i]);
        JetSample js;
        if (ext) {
            auto j = series::theta_jet<DD>(Cx<DD>{DD(q)}, widen<DD>(x), eps);
            js = {to_std(j.f), to_std(j.fx), to_std(j.fxx),
                  j.tail_f, j.tail_fx, j.tail_fxx};
        } else {
            auto j = series::theta_jet<double>(Cx<double>{q}, from_std(x), eps);
            js = {to_std(j.f), to_std(j.fx), to_std(j.fxx),
                  j.tail_f, j.tail_fx, j.tail_fxx};
        }
        out[i] = js;
    });
    return out;
}

} // namespace thetascope::sampling
