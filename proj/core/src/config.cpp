#include "selfstab/config.hpp"

#include <nlohmann/json.hpp>

#include "selfstab/errors.hpp"
#include "selfstab/expr.hpp"

namespace selfstab {

namespace {

double require_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ParseError(std::string("alpha model config: missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

}  // namespace

AlphaModel alpha_model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ParseError("alpha model config: expected object with string field 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") return AlphaModel::constant(require_number(j, "value"));
  if (kind == "cosine")
    return AlphaModel::cosine(require_number(j, "c0"), require_number(j, "c1"));
  if (kind == "rational")
    return AlphaModel::rational(require_number(j, "c0"), require_number(j, "c1"),
                                require_number(j, "c2"));
  if (kind == "custom") {
    if (!j.contains("expr") || !j.at("expr").is_string())
      throw ParseError("alpha model config: custom kind needs string field 'expr'");
    if (!j.contains("M"))
      throw MissingBound("alpha model config: custom evaluator must declare M");
    Expr e = Expr::parse(j.at("expr").get<std::string>());
    return AlphaModel::custom([e](double z) { return e(z); }, require_number(j, "a"),
                              require_number(j, "b"), require_number(j, "M"),
                              "custom(" + e.text() + ")");
  }
  throw ParseError("alpha model config: unknown kind '" + kind + "'");
}

StripSpec strip_spec_from_json(const nlohmann::json& j) {
  StripSpec spec;
  spec.t0 = require_number(j, "t0");
  spec.t1 = require_number(j, "t1");
  spec.K = require_number(j, "K");
  spec.N = require_number(j, "N");
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

nlohmann::json plan_to_json(const TruncationPlan& plan) {
  return nlohmann::json{{"epsilon", plan.epsilon},
                        {"K", plan.K},
                        {"N", plan.N},
                        {"bound", plan.bound}};
}

}  // namespace selfstab
