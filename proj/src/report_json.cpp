#include "capdisc/report_json.hpp"

namespace capdisc {

nlohmann::json to_json(const RadiusSpec& radius) {
  if (radius.exact) return {{"p", radius.exact->p}, {"q", radius.exact->q}};
  return {{"real", radius.value}};
}

nlohmann::json to_json(const DiscrepancyReport& report) {
  nlohmann::json doc{{"space", report.space},
                     {"radius", to_json(report.radius)},
                     {"L", report.truncation},
                     {"value", report.value},
                     {"tail_estimate", report.tail_estimate},
                     {"n_points", report.n_points}};
  if (report.seed) doc["seed"] = *report.seed;
  if (report.terms) {
    auto terms = nlohmann::json::array();
    for (const SeriesTerm& t : *report.terms)
      terms.push_back({{"m", t.m}, {"q_m", t.q_m}, {"phi_m", t.phi_m}, {"term", t.term}});
    doc["terms"] = std::move(terms);
  }
  return doc;
}

nlohmann::json to_json(const McEstimate& estimate) {
  return {{"estimate", estimate.estimate},
          {"stderr", estimate.stderr_est},
          {"samples", estimate.samples},
          {"seed", estimate.seed}};
}

nlohmann::json to_json(const RateStudyResult& result) {
  auto rows = nlohmann::json::array();
  for (const RateStudyRow& row : result.rows)
    rows.push_back(
        {{"N", row.n}, {"value", row.value}, {"L", row.truncation}, {"tail", row.tail}});
  return {{"space", result.space},
          {"generator", result.generator},
          {"radius", nlohmann::json{{"p", result.radius.p}, {"q", result.radius.q}}},
          {"seed", result.seed},
          {"rows", std::move(rows)},
          {"fitted_exponent", result.fitted_exponent},
          {"fitted_intercept", result.fitted_intercept}};
}

nlohmann::json to_json(const ScanResult& result) {
  auto radii = nlohmann::json::array();
  for (const RadiusPQ& r : result.radii) radii.push_back({{"p", r.p}, {"q", r.q}});
  return {{"space", result.space},
          {"n_points", result.n_points},
          {"H", result.h},
          {"radii", std::move(radii)},
          {"values", result.values},
          {"argmax", result.argmax},
          {"max_value", result.max_value},
          {"normalized_score", result.normalized_score}};
}

nlohmann::json to_json(const Classification& classification) {
  nlohmann::json doc{{"verdict", verdict_name(classification.verdict)}};
  if (classification.witness)
    doc["witness"] = {{"p", classification.witness->p}, {"q", classification.witness->q}};
  if (classification.exceptional_ratio)
    doc["exceptional_ratio"] = {{"num", classification.exceptional_ratio->first},
                                {"den", classification.exceptional_ratio->second}};
  return doc;
}

}  // namespace capdisc
