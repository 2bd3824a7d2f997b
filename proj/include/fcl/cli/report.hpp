#pragma once

#include <string>

#include "fcl/classify/classify.hpp"
#include "fcl/curvature/identities.hpp"
#include "fcl/geodesics/geodesics.hpp"
#include "json.hpp"

namespace fcl {

inline constexpr int kReportSchema = 1;

// {symbol, name, variance, shape, data}; data row-major.
nlohmann::json tensor_block(const std::string& symbol, const std::string& name, const Tensor<double>& t);

// obj[key] = v when finite, else null plus obj[key + "_reason"].
void put_number(nlohmann::json& obj, const std::string& key, double v, const std::string& reason = "non-finite");

nlohmann::json error_json(const Error& e);
nlohmann::json point_json(const BasePoint& p);
nlohmann::json identity_json(const IdentityReport& r);
nlohmann::json classification_json(const ClassificationRecord& r);
nlohmann::json path_json(const GeodesicPath& path);
nlohmann::json diagnostics_json(const GeodesicDiagnostics& d);

}  // namespace fcl
