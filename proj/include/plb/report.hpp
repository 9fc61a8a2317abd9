#ifndef PLB_REPORT_HPP
#define PLB_REPORT_HPP

#include <string>

#include <json.hpp>

#include "plb/spectral_bounds.hpp"

namespace plb {

using Json = nlohmann::ordered_json;

/// Insert value under `name`; when |log of the magnitude| exceeds 300 the
/// decimal alone is useless (it underflows or overflows), so `name_log` is
/// emitted next to it and the decimal collapses to 0 where unrepresentable.
void add_real_with_log(Json& j, const std::string& name, double log_value);

/// BoundReport <-> JSON with fields in declaration order. Values whose
/// magnitude leaves the representable range follow the value/value_log
/// convention above.
Json bound_report_to_json(const BoundReport& report);
BoundReport bound_report_from_json(const Json& j);

}  // namespace plb

#endif
