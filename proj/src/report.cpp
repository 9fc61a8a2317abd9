#include "plb/report.hpp"

#include <cmath>

namespace plb {

void add_real_with_log(Json& j, const std::string& name, double log_value) {
  const double value = std::exp(log_value);
  j[name] = std::isfinite(value) ? value : 0.0;
  if (std::abs(log_value) > 300.0) j[name + "_log"] = log_value;
}

Json bound_report_to_json(const BoundReport& r) {
  Json j;
  j["theorem_tag"] = to_string(r.theorem_tag);
  j["p"] = r.p;
  j["alpha"] = r.alpha ? Json(*r.alpha) : Json(nullptr);
  j["K"] = r.K ? Json(*r.K) : Json(nullptr);
  j["beta"] = r.beta ? Json(*r.beta) : Json(nullptr);
  j["optimal_q"] = r.optimal_q;
  j["optimal_alpha"] = r.optimal_alpha ? Json(*r.optimal_alpha) : Json(nullptr);
  j["log_rhs"] = r.log_rhs;
  add_real_with_log(j, "lower_bound_lambda", -r.log_rhs);
  Json factors = Json::array();
  for (const auto& [name, value] : r.factors)
    factors.push_back(Json{{"name", name}, {"log_value", value}});
  j["factors"] = factors;
  return j;
}

BoundReport bound_report_from_json(const Json& j) {
  BoundReport r;
  r.theorem_tag = theorem_tag_from_string(j.at("theorem_tag").get<std::string>());
  r.p = j.at("p").get<double>();
  if (!j.at("alpha").is_null()) r.alpha = j.at("alpha").get<double>();
  if (!j.at("K").is_null()) r.K = j.at("K").get<double>();
  if (!j.at("beta").is_null()) r.beta = j.at("beta").get<double>();
  r.optimal_q = j.at("optimal_q").get<double>();
  if (!j.at("optimal_alpha").is_null())
    r.optimal_alpha = j.at("optimal_alpha").get<double>();
  r.log_rhs = j.at("log_rhs").get<double>();
  r.lower_bound_lambda = j.at("lower_bound_lambda").get<double>();
  for (const auto& f : j.at("factors"))
    r.factors.emplace_back(f.at("name").get<std::string>(),
                           f.at("log_value").get<double>());
  return r;
}

}  // namespace plb
