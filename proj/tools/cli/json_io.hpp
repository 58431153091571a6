#pragma once

#include <stdexcept>

#include <json.hpp>

#include "convexpmf/diagnostics.hpp"
#include "convexpmf/simulation.hpp"
#include "convexpmf/solver.hpp"

namespace convexpmf::cli {

inline constexpr int kSchemaVersion = 1;

/// JSON that does not match the fit schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Object keys are emitted in sorted order and doubles in shortest
// round-trip form, so equal inputs serialize to identical bytes.

nlohmann::json to_json(const CertificateReport& report);
nlohmann::json to_json(const FitResult& fit, const EmpiricalPmf& empirical, bool with_certificate);
nlohmann::json to_json(const CampaignResult& campaign);

/// Fit document as read back for certification. Mixture weights are kept
/// as parsed, including any negative values.
struct FitDocument {
  std::vector<double> fitted;
  MixtureWeights weights;
  int final_L = 0;
  double objective = 0.0;
};

/// Throws SchemaError.
FitDocument parse_fit_document(const nlohmann::json& doc);

}  // namespace convexpmf::cli
