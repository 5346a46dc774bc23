#pragma once

#include <iostream>
#include <string>

#include "json.hpp"
#include "wpg/boundary.hpp"
#include "wpg/dims.hpp"
#include "wpg/measures.hpp"
#include "wpg/simulate.hpp"

namespace wpg {

using nlohmann::json;

// --- CSV -------------------------------------------------------------------

template <class S>
void write_dims_csv(std::ostream& os, const DimensionTable<S>& dims) {
  os << "h,t,value\n";
  for (int n = 0; n <= dims.max_level(); ++n)
    for (int h = 0; h <= n; ++h)
      os << h << "," << (n - h) << "," << scalar_traits<S>::to_string(dims.at(h, n - h)) << "\n";
}

template <class S>
void write_phi_csv(std::ostream& os, const Phi<S>& phi) {
  os << "h,t,phi\n";
  for (int n = 0; n <= phi.max_level(); ++n)
    for (int h = 0; h <= n; ++h)
      os << h << "," << (n - h) << "," << scalar_traits<S>::to_string(phi.at(h, n - h)) << "\n";
}

// Rows "z,weight" followed by a trailing metadata row "bound,<value>".
void write_zdist_csv(std::ostream& os, const ZDistribution& dist);

void write_endpoint_csv(std::ostream& os, const EndpointHistogram& hist);

// --- JSON ------------------------------------------------------------------

template <class S>
json phi_to_json(const Phi<S>& phi) {
  json params = json::object();
  for (const auto& [k, v] : phi.provenance.params) params[k] = v;
  json values = json::array();
  for (int n = 0; n <= phi.max_level(); ++n)
    for (int h = 0; h <= n; ++h)
      values.push_back({{"h", h},
                        {"t", n - h},
                        {"phi", scalar_traits<S>::to_string(phi.at(h, n - h))}});
  return json{{"family", phi.provenance.family},
              {"params", params},
              {"N", phi.max_level()},
              {"mode", scalar_traits<S>::exact ? "exact" : "float"},
              {"support", phi.support.describe()},
              {"values", values}};
}

json boundary_report_to_json(const BoundaryReport& rep);

template <class S>
json phi_check_to_json(const PhiCheckReport<S>& rep) {
  json j{{"max_recursion_residual", scalar_traits<S>::to_string(rep.max_recursion_residual)},
         {"max_level_sum_error", scalar_traits<S>::to_string(rep.max_level_sum_error)},
         {"exact_zero", rep.exact_ok()}};
  if (rep.negativity_witness)
    j["negativity_witness"] = {{"h", rep.negativity_witness->h}, {"t", rep.negativity_witness->t}};
  return j;
}

// --- simulation jobs ---------------------------------------------------------

// Wire format of a simulation job:
// {"process": "...", "params": {...}, "n": ..., "replicates": ..., "seed": ...,
//  "statistic": "endpoint"|"scaled"|"z"|"blocks", "scaler": "n"|"logn"|"pow",
//  "pow_alpha": ...}
struct SimJob {
  ProcessSpec process;
  int n = 1;
  long long replicates = 1;
  uint64_t seed = 0;
  std::string statistic = "endpoint";
  Scaler scaler = Scaler::N;
  double pow_alpha = 0.5;
  bool parallel = true;
};

SimJob job_from_json(const json& j);
json job_to_json(const SimJob& job);

// Runs the job and returns the result document. Deterministic given the job
// (including under parallel execution).
json run_job(const SimJob& job);

}  // namespace wpg
