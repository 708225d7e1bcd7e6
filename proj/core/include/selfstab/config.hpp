#pragma once

#include <nlohmann/json_fwd.hpp>

#include "selfstab/alpha_model.hpp"
#include "selfstab/point_process.hpp"
#include "selfstab/truncation.hpp"

namespace selfstab {

/// Alpha model from its run-config JSON form, e.g.
///   {"kind":"constant","value":0.7}
///   {"kind":"cosine","c0":0.57,"c1":0.4}
///   {"kind":"rational","c0":0.15,"c1":0.8,"c2":5}
///   {"kind":"custom","expr":"0.5+0.1*sin(z)","a":0.4,"b":0.6,"M":0.7}
/// Custom evaluators must declare a, b and M (throws MissingBound).
AlphaModel alpha_model_from_json(const nlohmann::json& j);

StripSpec strip_spec_from_json(const nlohmann::json& j);

nlohmann::json plan_to_json(const TruncationPlan& plan);

}  // namespace selfstab
