#pragma once

#include "cohcert/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cohcert::certify {

/// One certified identity or inequality. `anchor` names the mathematical
/// property being checked; `lhs`/`rhs` are the worst observed pair.
struct CheckRecord {
  std::string name;
  std::string anchor;
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  double runtime_s = 0.0;  // reported outside the deterministic body
  std::string detail;
};

struct CertifyConfig {
  int dim = 2;
  int count = 25;
  std::uint64_t seed = 7;
  std::vector<double> epsilons = {0.01, 0.05, 0.1};
  /// When set, replaces every check tolerance (0 documents the numerical
  /// floor by failing checks that hold only to finite precision).
  std::optional<double> tol_override;
  int threads = 1;
};

struct CertificationReport {
  CertifyConfig config;
  std::vector<CheckRecord> checks;
  bool aggregate_pass = false;
  double max_solver_gap = 0.0;        // normalized by 1 + |value|
  double max_solver_residual = 0.0;
  long solver_count = 0;
};

/// Run the full certification battery: quantifier chain, pure-state closed
/// forms, the optimal-overlap construction, the adjoint unit-diagonal law,
/// the discrimination game, monotonicity batteries, smoothing consistency,
/// the one-shot bounds, and the average-increase search. Deterministic for
/// a fixed config (check runtimes excluded).
CertificationReport certify_suite(const CertifyConfig& config);

/// Deterministic report body (byte-identical across runs for one config).
nlohmann::json report_body_json(const CertificationReport& report);
/// Per-check wall-clock times; serialized separately from the body.
nlohmann::json report_timings_json(const CertificationReport& report);

}  // namespace cohcert::certify
