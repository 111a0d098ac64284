#pragma once

#include <string>

#include <json.hpp>

#include "stsflow/crc.hpp"
#include "stsflow/flows.hpp"
#include "stsflow/johnson.hpp"
#include "stsflow/rational.hpp"
#include "stsflow/sts.hpp"

namespace stsflow {

using json = nlohmann::ordered_json;

// Vectors carry exact values as strings ("5" or "5/3").
json rat_vec_to_json(const RatVec& v);
RatVec rat_vec_from_json(const json& j);
json int_vec_to_json(const IntVec& v);
IntVec int_vec_from_json(const json& j);

json certificate_to_json(const FlowCertificate& cert);
FlowCertificate certificate_from_json(const json& j);

json crc_report_to_json(const CrcReport& report);
json param_tuple_to_json(const ParamTuple& t);

// Full bound report for m(1, J(n,k)): upper construction, threshold, lower
// bound and exactness when applicable, closed form for k = 3 beyond the
// threshold.
json bound_report_json(long long n, long long k);

}  // namespace stsflow
