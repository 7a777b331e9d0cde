#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "q1d/audit.hpp"
#include "q1d/infotheory.hpp"

// Serialization of claim and entropy reports. CSV floats are written with
// 17 significant digits in scientific notation so identical runs produce
// byte-identical files; JSON numbers use the library's shortest-round-trip
// formatting. Consumers of reporting.hpp need the vendored nlohmann/json
// header on their include path.

namespace q1d {

inline constexpr const char* kReportSchemaVersion = "1";

// Fixed-width scientific float, 17 significant digits.
inline std::string csv_float(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

namespace detail {

// CSV fields carry no quoting, so free-form text must not smuggle commas in.
inline std::string csv_sanitize(std::string text) {
  for (char& c : text)
    if (c == ',' || c == '\n') c = ';';
  return text;
}

}  // namespace detail

inline nlohmann::json to_json(const ClaimReport& claim) {
  return {{"claim_id", claim.claim_id},
          {"n_values", claim.n_values},
          {"residual", claim.residual},
          {"tolerance", claim.tolerance},
          {"passed", claim.passed},
          {"details", claim.details}};
}

inline nlohmann::json to_json(const EntropyReport& report) {
  nlohmann::json j{
      {"n", report.n},
      {"s_rho", report.s_rho},
      {"s_gamma_numeric", report.s_gamma_numeric},
      {"bbm_sum", report.bbm_sum},
      {"bbm_bound", report.bbm_bound},
      {"satisfied", report.satisfied},
      {"margin", report.margin},
      {"source", report.source == MomentumEntropySource::stc ? "stc" : "correct"}};
  if (report.s_gamma_analytic)
    j["s_gamma_analytic"] = *report.s_gamma_analytic;
  else
    j["s_gamma_analytic"] = nullptr;
  return j;
}

// Top-level report document: {version, config, claims, entropies}.
inline nlohmann::json make_report_document(const nlohmann::json& config,
                                           const std::vector<ClaimReport>& claims,
                                           const std::vector<EntropyReport>& entropies) {
  nlohmann::json doc;
  doc["version"] = kReportSchemaVersion;
  doc["config"] = config;
  doc["claims"] = nlohmann::json::array();
  for (const auto& claim : claims) doc["claims"].push_back(to_json(claim));
  doc["entropies"] = nlohmann::json::array();
  for (const auto& report : entropies) doc["entropies"].push_back(to_json(report));
  return doc;
}

inline std::string claims_csv_header() {
  return "claim_id,n_values,residual,tolerance,passed,details";
}

inline std::string claim_csv_row(const ClaimReport& claim) {
  std::string ns;
  for (std::size_t i = 0; i < claim.n_values.size(); ++i) {
    if (i) ns += ';';
    ns += std::to_string(claim.n_values[i]);
  }
  return claim.claim_id + "," + ns + "," + csv_float(claim.residual) + "," +
         csv_float(claim.tolerance) + "," + (claim.passed ? "1" : "0") + "," +
         detail::csv_sanitize(claim.details);
}

inline std::string entropy_csv_header() {
  return "n,source,s_rho,s_gamma_numeric,s_gamma_analytic,bbm_sum,bbm_bound,margin,"
         "satisfied";
}

inline std::string entropy_csv_row(const EntropyReport& report) {
  return std::to_string(report.n) + "," +
         (report.source == MomentumEntropySource::stc ? "stc" : "correct") + "," +
         csv_float(report.s_rho) + "," + csv_float(report.s_gamma_numeric) + "," +
         (report.s_gamma_analytic ? csv_float(*report.s_gamma_analytic) : std::string()) +
         "," + csv_float(report.bbm_sum) + "," + csv_float(report.bbm_bound) + "," +
         csv_float(report.margin) + "," + (report.satisfied ? "1" : "0");
}

}  // namespace q1d
