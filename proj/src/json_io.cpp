#include "ksw/json_io.hpp"

#include <cstdio>

#include "ksw/experiments.hpp"

namespace ksw {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json to_json(const BoundResult& r) {
  nlohmann::ordered_json j;
  j["formula_id"] = r.formula_id;
  j["m"] = r.m;
  j["d_m"] = fmt17(r.d_m);
  j["alpha"] = fmt17(r.alpha);
  j["raw_bound"] = fmt17(r.raw_bound);
  j["bound"] = fmt17(r.bound);
  j["valid"] = r.valid;
  j["validity_threshold"] = fmt17(r.validity_threshold);
  j["notes"] = r.notes;
  return j;
}

nlohmann::ordered_json to_json(const MetricEstimate& e) {
  nlohmann::ordered_json j;
  j["value"] = fmt17(e.value);
  switch (e.kind) {
    case EstimateKind::exact:
      j["kind"] = "exact";
      break;
    case EstimateKind::monte_carlo:
      j["kind"] = "monte_carlo";
      break;
    case EstimateKind::witness_lower_bound:
      j["kind"] = "witness_lower_bound";
      break;
  }
  j["stderr"] = e.stderr_value ? nlohmann::ordered_json(fmt17(*e.stderr_value))
                               : nlohmann::ordered_json(nullptr);
  j["n"] = e.n_samples ? nlohmann::ordered_json(*e.n_samples)
                       : nlohmann::ordered_json(nullptr);
  j["seed"] = e.seed ? nlohmann::ordered_json(*e.seed) : nlohmann::ordered_json(nullptr);
  return j;
}

nlohmann::ordered_json to_json(const ExperimentReport& rep) {
  nlohmann::ordered_json j;
  j["experiment"] = rep.experiment;
  j["params"] = rep.params;
  j["n"] = rep.n;
  j["dm_input"] = fmt17(rep.dm_input);
  j["exact_dK"] = to_json(rep.exact_dK);
  j["exact_dW"] =
      rep.exact_dW ? to_json(*rep.exact_dW) : nlohmann::ordered_json(nullptr);
  j["bound"] = to_json(rep.bound);
  j["inequality_holds"] = rep.inequality_holds;
  j["margin"] = fmt17(rep.margin);
  j["notes"] = rep.notes;
  return j;
}

}  // namespace ksw
