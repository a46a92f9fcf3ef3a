// JSON views of the result types, with fixed key order so identical inputs
// produce byte-identical documents.
#pragma once

#include <json.hpp>

#include "thetascope/core_eval.hpp"
#include "thetascope/geometry.hpp"
#include "thetascope/jacobi.hpp"
#include "thetascope/roots_of_unity.hpp"
#include "thetascope/zerofinder.hpp"

namespace thetascope::io {

using json = nlohmann::ordered_json;

json complex_json(std::complex<double> z);
json certified_json(const core::CertifiedValue& cv);
json disk_json(const zeros::DiskCertificate& cert);
json zero_record_json(const zeros::ZeroRecord& rec);
json truncation_roots_json(const zeros::TruncationRoots& tr);
json tail_budget_json(const zeros::TailBudget& tb);
json track_json(const zeros::TrackResult& tr);
json triple_product_json(const jacobi::TripleProductResult& tp);
json unity_json(const unity::UnityNumerator& num);
json classification_json(const geom::CurveClassification& cls);
json theta_at_minus_one_json(const core::ThetaAtMinusOne& v);
json curve_sample_json(const geom::CurveSample& sample);

} // namespace thetascope::io
