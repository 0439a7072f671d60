#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ksw/bounds.hpp"
#include "ksw/metrics.hpp"

namespace ksw {

struct ExperimentReport;

/// Decimal rendering with 17 significant digits; byte-deterministic across
/// runs on one platform, round-trips doubles exactly.
std::string fmt17(double v);

nlohmann::ordered_json to_json(const BoundResult& r);
nlohmann::ordered_json to_json(const MetricEstimate& e);
nlohmann::ordered_json to_json(const ExperimentReport& rep);

}  // namespace ksw
