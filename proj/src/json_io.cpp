#include "thetascope/json_io.hpp"

namespace thetascope::io {

json complex_json(std::complex<double> z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

json certified_json(const core::CertifiedValue& cv) {
    return json{{"value", complex_json(cv.value)},
                {"tail_bound", cv.tail_bound},
                {"terms_used", cv.terms_used}};
}

json disk_json(const zeros::DiskCertificate& cert) {
    return json{{"q", cert.q},
                {"radius", cert.radius},
                {"winding", cert.winding},
                {"min_modulus_lb", cert.min_modulus_lb},
                {"samples", cert.samples},
                {"status", cert.status == zeros::DiskCertificate::Status::certified
                               ? "certified"
                               : "inconclusive"}};
}

namespace {

const char* source_name(zeros::ZeroRecord::Source s) {
    switch (s) {
        case zeros::ZeroRecord::Source::truncation_root: return "truncation_root";
        case zeros::ZeroRecord::Source::continuation: return "continuation";
        case zeros::ZeroRecord::Source::user_seed: return "user_seed";
    }
    return "user_seed";
}

} // namespace

json zero_record_json(const zeros::ZeroRecord& rec) {
    return json{{"q", rec.q},
                {"location", complex_json(rec.location)},
                {"residual", rec.residual},
                {"newton_steps", rec.newton_steps},
                {"source", source_name(rec.source)}};
}

json truncation_roots_json(const zeros::TruncationRoots& tr) {
    json roots = json::array();
    for (std::size_t i = 0; i < tr.roots.size(); ++i) {
        roots.push_back(json{{"re", tr.roots[i].real()},
                             {"im", tr.roots[i].imag()},
                             {"modulus", std::abs(tr.roots[i])},
                             {"residual", tr.residuals[i]}});
    }
    return json{{"q", tr.q},
                {"n", tr.n},
                {"effective_degree", tr.effective_degree},
                {"converged", tr.converged},
                {"roots", std::move(roots)}};
}

json tail_budget_json(const zeros::TailBudget& tb) {
    return json{{"t0_bound", tb.t0_bound},
                {"first_omitted", tb.first_omitted},
                {"ratio", tb.ratio}};
}

json track_json(const zeros::TrackResult& tr) {
    json recs = json::array();
    for (const auto& r : tr.records) recs.push_back(zero_record_json(r));
    return json{{"reached_end", tr.reached_end},
                {"note", tr.note},
                {"records", std::move(recs)}};
}

json triple_product_json(const jacobi::TripleProductResult& tp) {
    return json{{"value", complex_json(tp.value)},
                {"factors_used", tp.factors_used},
                {"tail_bound", tp.tail_bound}};
}

json unity_json(const unity::UnityNumerator& num) {
    json coeffs = json::array();
    for (const auto& c : num.coeffs) coeffs.push_back(complex_json(c));
    return json{{"n", num.root.n},
                {"k", num.root.k},
                {"omega", complex_json(num.root.value)},
                {"period", num.period},
                {"antiperiodic_block", num.antiperiodic_block},
                {"coeffs", std::move(coeffs)}};
}

json classification_json(const geom::CurveClassification& cls) {
    json crossings = json::array();
    for (const auto& c : cls.self_intersections) {
        crossings.push_back(json{{"phi_a", c.phi_a},
                                 {"phi_b", c.phi_b},
                                 {"re", c.point.real()},
                                 {"im", c.point.imag()}});
    }
    json cusp = nullptr;
    if (cls.has_cusp_near) cusp = *cls.has_cusp_near;
    return json{{"q", cls.q},
                {"inflection_count", cls.inflection_count},
                {"has_cusp_near", cusp},
                {"cusp_indicator", cls.cusp_indicator},
                {"self_intersections", std::move(crossings)},
                {"vertical_axis_crossings", cls.vertical_axis_crossings},
                {"is_convex", cls.is_convex},
                {"surrounds_point_1_0", cls.surrounds_point_1_0},
                {"min_distance_to_origin", cls.min_distance_to_origin}};
}

json theta_at_minus_one_json(const core::ThetaAtMinusOne& v) {
    json bracket = nullptr;
    if (v.has_bracket) bracket = json{{"lower", v.lower}, {"upper", v.upper}};
    return json{{"value", v.value}, {"bracket", std::move(bracket)}};
}

json curve_sample_json(const geom::CurveSample& sample) {
    json rows = json::array();
    for (std::size_t i = 0; i < sample.phis.size(); ++i) {
        rows.push_back(json{{"phi", sample.phis[i]},
                            {"re", sample.points[i].real()},
                            {"im", sample.points[i].imag()},
                            {"d_re", sample.tangents[i].real()},
                            {"d_im", sample.tangents[i].imag()},
                            {"curvature", sample.curvatures[i]}});
    }
    json clipped = json::array();
    for (const auto& g : sample.clipped)
        clipped.push_back(json{{"from", g.first}, {"to", g.second}});
    return json{{"q", sample.q},
                {"radius", sample.radius},
                {"clipped", std::move(clipped)},
                {"samples", std::move(rows)}};
}

} // namespace thetascope::io
