#include "cli/json_io.hpp"

#include <cmath>
#include <string>

namespace convexpmf::cli {
namespace {

using nlohmann::json;

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json array_of(std::span<const double> v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

template <typename T>
T field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

json to_json(const CertificateReport& report) {
  return json{{"passed", report.passed()},
              {"dj_min_off_support", number(report.dj_min_off_support)},
              {"dj_max_abs_on_support", number(report.dj_max_abs_on_support)},
              {"H_min_slack", number(report.H_min_slack)},
              {"H_equality_residual_at_kinks", number(report.H_equality_residual_at_kinks)},
              {"mass_residual", number(report.mass_residual)},
              {"consistency_residual", number(report.consistency_residual)},
              {"structure_ok", report.structure_ok},
              {"failures", report.failures}};
}

json to_json(const FitResult& fit, const EmpiricalPmf& empirical, bool with_certificate) {
  json mixture = json::object();
  for (const auto& [j, w] : fit.mixture.weights()) mixture[std::to_string(j)] = number(w);
  json trace = json::array();
  for (const auto& t : fit.trace) {
    trace.push_back({{"iteration", t.iteration},
                     {"L", t.L},
                     {"active_set_size", t.active_set_size},
                     {"objective", number(t.objective)}});
  }
  json doc{{"schema_version", kSchemaVersion},
           {"n", empirical.n()},
           {"empirical", array_of(empirical.pmf().probs())},
           {"fitted", array_of(fit.pmf.probs())},
           {"mixture", std::move(mixture)},
           {"objective", number(fit.objective)},
           {"final_L", fit.final_L},
           {"trace", std::move(trace)}};
  if (with_certificate) doc["certificate"] = to_json(fit.certificate);
  return doc;
}

json to_json(const CampaignResult& campaign) {
  json rows = json::array();
  for (const auto& r : campaign.rows) {
    rows.push_back({{"distribution", r.distribution},
                    {"param", r.param},
                    {"n", r.n},
                    {"estimator", r.estimator},
                    {"functional", r.functional},
                    {"value", number(r.value)},
                    {"mc_stderr", number(r.mc_stderr)}});
  }
  json experiments = json::array();
  for (const auto& e : campaign.experiments) {
    json sizes = json::array();
    for (const auto& s : e.sizes) {
      sizes.push_back({{"n", s.n},
                       {"dominance_violations", s.dominance_violations},
                       {"strict_dominance_violations", s.strict_dominance_violations},
                       {"certificate_failures", s.certificate_failures},
                       {"nonconvex_fraction", number(s.nonconvex_fraction)}});
    }
    experiments.push_back({{"distribution", e.distribution.to_string()},
                           {"replicates", e.replicates},
                           {"sizes", std::move(sizes)}});
  }
  return json{{"schema_version", kSchemaVersion},
              {"rows", std::move(rows)},
              {"experiments", std::move(experiments)},
              {"failures", campaign.failures}};
}

FitDocument parse_fit_document(const json& doc) {
  if (!doc.is_object()) throw SchemaError("fit document must be a JSON object");
  if (field<int>(doc, "schema_version") != kSchemaVersion) {
    throw SchemaError("unsupported schema_version");
  }
  FitDocument out;
  out.fitted = field<std::vector<double>>(doc, "fitted");
  out.final_L = field<int>(doc, "final_L");
  out.objective = field<double>(doc, "objective");
  const auto mixture = field<json>(doc, "mixture");
  if (!mixture.is_object()) throw SchemaError("field 'mixture' must be an object");
  for (const auto& [key, value] : mixture.items()) {
    int j = 0;
    try {
      std::size_t used = 0;
      j = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw SchemaError("mixture key '" + key + "' is not an integer");
    }
    if (j < 1) throw SchemaError("mixture key '" + key + "' must be >= 1");
    if (!value.is_number()) throw SchemaError("mixture weight for '" + key + "' is not a number");
    out.weights[j] = value.get<double>();
  }
  for (double p : out.fitted) {
    if (!std::isfinite(p)) throw SchemaError("fitted pmf contains a non-finite entry");
  }
  return out;
}

}  // namespace convexpmf::cli
