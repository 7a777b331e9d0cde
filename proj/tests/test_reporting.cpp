#include <catch2/catch_amalgamated.hpp>

#include <string>

#include <json.hpp>

#include "q1d/audit.hpp"
#include "q1d/infotheory.hpp"
#include "q1d/reporting.hpp"

using namespace q1d;

TEST_CASE("csv_float: 17 significant digits, stable text") {
  CHECK(csv_float(0.5) == "5.0000000000000000e-01");
  CHECK(csv_float(-1.0) == "-1.0000000000000000e+00");
  CHECK(csv_float(2.0 / 3.0) == "6.6666666666666663e-01");
  // 17 significant digits round-trip any double
  const double v = 0.63661977236758134;
  CHECK(std::stod(csv_float(v)) == v);
}

TEST_CASE("claim report JSON carries every field") {
  ClaimReport claim;
  claim.claim_id = "fourier_consistency";
  claim.n_values = {1, 2};
  claim.residual = 3.5e-10;
  claim.tolerance = 1e-8;
  claim.passed = true;
  claim.details = "max at p = 5";
  const nlohmann::json j = to_json(claim);
  CHECK(j["claim_id"] == "fourier_consistency");
  CHECK(j["n_values"] == nlohmann::json({1, 2}));
  CHECK(j["residual"] == 3.5e-10);
  CHECK(j["tolerance"] == 1e-8);
  CHECK(j["passed"] == true);
  CHECK(j["details"] == "max at p = 5");
}

TEST_CASE("entropy report JSON: analytic entry is null for the rival source") {
  EntropyReport report;
  report.n = 1;
  report.s_rho = 1.1544313298030657;
  report.s_gamma_numeric = 0.55750476086256944;
  report.bbm_sum = 1.7119360906656352;
  report.bbm_bound = 2.1447298858494002;
  report.satisfied = false;
  report.margin = report.bbm_sum - report.bbm_bound;
  report.source = MomentumEntropySource::stc;
  const nlohmann::json j = to_json(report);
  CHECK(j["source"] == "stc");
  CHECK(j["s_gamma_analytic"].is_null());
  CHECK(j["satisfied"] == false);

  report.source = MomentumEntropySource::correct;
  report.s_gamma_analytic = 1.2241714275292361;
  CHECK(to_json(report)["s_gamma_analytic"] == 1.2241714275292361);
}

TEST_CASE("report document has the pinned top-level schema") {
  ClaimReport claim;
  claim.claim_id = "stc_normalization";
  claim.n_values = {1};
  claim.residual = 1e-12;
  claim.tolerance = 1e-9;
  claim.passed = true;
  claim.details = "half-line integral = 1, whole-line integral = 2";

  EntropyReport entropy;
  entropy.n = 1;
  entropy.s_gamma_analytic = 1.2241714275292361;

  const nlohmann::json doc =
      make_report_document({{"command", "verify"}}, {claim}, {entropy});
  CHECK(doc.contains("version"));
  CHECK(doc.contains("config"));
  CHECK(doc["claims"].is_array());
  CHECK(doc["entropies"].is_array());
  CHECK(doc["claims"].size() == 1);
  CHECK(doc["entropies"].size() == 1);
  CHECK(doc["config"]["command"] == "verify");

  // round-trip through text
  const nlohmann::json parsed = nlohmann::json::parse(doc.dump(2));
  CHECK(parsed == doc);
}

TEST_CASE("CSV rows: no commas leak out of free-form details") {
  ClaimReport claim;
  claim.claim_id = "stc_normalization";
  claim.n_values = {1, 7};
  claim.residual = 2e-12;
  claim.tolerance = 1e-9;
  claim.passed = true;
  claim.details = "half-line = 1, whole-line = 2";
  const std::string row = claim_csv_row(claim);
  CHECK(std::count(row.begin(), row.end(), ',') == 5);
  CHECK(row.find("1;7") != std::string::npos);

  EntropyReport entropy;
  entropy.n = 2;
  entropy.source = MomentumEntropySource::stc;
  const std::string erow = entropy_csv_row(entropy);
  CHECK(erow.substr(0, 6) == "2,stc,");
  CHECK(std::count(erow.begin(), erow.end(), ',') == 8);
}
