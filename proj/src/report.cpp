#include "lambdahull/harness.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace lambdahull {
namespace {

using nlohmann::json;

// JSON has no infinities; keep the report parseable.
json real(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

json record_json(const TrialRecord& r) {
  return json{{"theorem", r.theorem},
              {"trial", r.trial},
              {"seed", r.seed},
              {"n", r.n},
              {"lambda", real(r.lambda)},
              {"param", real(r.param)},
              {"contacts", r.contacts},
              {"quantity", r.quantity},
              {"K_value", real(r.k_value)},
              {"extremal_value", real(r.extremal_value)},
              {"margin", real(r.margin)},
              {"stderr", real(r.std_error)},
              {"status", to_string(r.status)},
              {"note", r.note}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string config_to_json(const VerifyConfig& cfg) {
  json j{{"trials", cfg.trials},
         {"seed", cfg.seed},
         {"v1_samples", cfg.v1_samples},
         {"v1_grid", cfg.v1_grid},
         {"volume_samples", cfg.volume_samples},
         {"mixed_samples", cfg.mixed_samples},
         {"lemma_m_samples", cfg.lemma_m_samples},
         {"contacts", cfg.contacts},
         {"j_list", cfg.j_list},
         {"solver",
          {{"tol", cfg.solver.tol},
           {"gap_tol", cfg.solver.gap_tol},
           {"max_iters", cfg.solver.max_iters},
           {"multistarts", cfg.solver.multistarts},
           {"ascent_step_tol", cfg.solver.ascent_step_tol}}}};
  return j.dump();
}

std::string report_to_json(const VerificationReport& report, bool with_timing) {
  json recs = json::array();
  for (const auto& r : report.records) recs.push_back(record_json(r));
  json j{{"theorem", report.theorem},
         {"config", json::parse(report.config.empty() ? "{}" : report.config)},
         {"summary",
          {{"records", report.records.size()},
           {"pass", report.count(Status::Pass)},
           {"warn", report.count(Status::Warn)},
           {"fail", report.count(Status::Fail)},
           {"error", report.count(Status::Error)},
           {"min_margin", real(report.min_margin())},
           {"exit_code", report.exit_code()}}},
         {"records", recs}};
  if (with_timing) j["timing"] = {{"wall_time", report.wall_time}};
  return j.dump(2);
}

std::string report_to_csv(const VerificationReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "theorem,trial,seed,n,lambda,param,contacts,quantity,K_value,extremal_value,margin,"
        "stderr,pass\n";
  for (const auto& r : report.records)
    os << csv_field(r.theorem) << ',' << r.trial << ',' << r.seed << ',' << r.n << ','
       << r.lambda << ',' << r.param << ',' << r.contacts << ',' << csv_field(r.quantity) << ','
       << r.k_value << ',' << r.extremal_value << ',' << r.margin << ',' << r.std_error << ','
       << to_string(r.status) << '\n';
  return os.str();
}

}  // namespace lambdahull
