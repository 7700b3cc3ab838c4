#pragma once

#include "cohcert/channels.hpp"
#include "cohcert/linalg.hpp"
#include "cohcert/sdp.hpp"
#include "cohcert/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace cohcert::measures {

using linalg::DensityMatrix;
using linalg::PureState;

struct MeasureOptions {
  double rank_tol = 1e-8;
  double sdp_tol = 1e-8;
  /// Use the pure-state closed forms (and their analytic witnesses) when the
  /// input has unit purity within 1e-12.
  bool prefer_closed_forms = true;
};

/// All quantifiers of one state, in bits (c_l1 and roc dimensionless), with
/// the optimizing witnesses: tau (unit-diagonal PSD) and sigma (incoherent).
struct CoherenceReport {
  double c_max = 0.0;
  double c_min = 0.0;
  double c_r = 0.0;
  double c_l1 = 0.0;
  double roc = 0.0;
  Matrix tau_witness;
  RealVector sigma_witness;  // diagonal of the optimal incoherent state
  bool pure_state_closed_form_used = false;
  double rank_tol = 1e-8;
  double sdp_gap = 0.0;
};

CoherenceReport coherence_report(const DensityMatrix& rho, const MeasureOptions& opt = {});

double c_max(const DensityMatrix& rho, double tol = 1e-8);
sdp::CmaxCertificate c_max_certificate(const DensityMatrix& rho, double tol = 1e-8);
double roc(const DensityMatrix& rho, double tol = 1e-8);
/// -log2 of the largest diagonal entry of the support projector. The
/// minimization over incoherent states is attained at a basis state because
/// the objective is linear on the diagonal simplex.
double c_min(const DensityMatrix& rho, double rank_tol = 1e-8);
double c_r(const DensityMatrix& rho);
double c_l1(const DensityMatrix& rho);

struct PureClosedForms {
  double c_max = 0.0;
  double c_min = 0.0;
  double geometric_overlap = 0.0;  // max_i |psi_i|^2
};
PureClosedForms pure_closed_forms(const PureState& psi);

/// (2^{-c_min}, 1 - 2^{-c_min}): an upper bound on the best incoherent
/// overlap max_sigma F(rho, sigma)^2 and the induced geometric-coherence
/// lower bound.
std::pair<double, double> c_min_overlap_bound(const DensityMatrix& rho,
                                              double rank_tol = 1e-8);

struct SmoothResult {
  double epsilon = 0.0;
  double value = 0.0;  // bits
  /// Subnormalized smoothed state (max variant) or the effect operator A
  /// (min variant).
  Matrix witness;
  bool witness_is_state = true;
  double gap = 0.0;
};

/// min over trace-norm-ball perturbations of the max-relative quantifier;
/// epsilon = 0 bypasses to the exact solve. The reported value is floored at
/// zero (large balls reach subnormalized incoherent operators whose raw
/// objective drops below one).
SmoothResult smooth_c_max(const DensityMatrix& rho, double epsilon, double tol = 1e-8);

/// max over effects 0 <= A <= I with Tr(A rho) >= 1 - epsilon of
/// -log2 max_i A_ii; the inner minimization over incoherent states reduces
/// to basis states by linearity. epsilon = 0 returns the support-projector
/// value exactly.
SmoothResult smooth_c_min(const DensityMatrix& rho, double epsilon, double tol = 1e-8);

struct ConvexRoofResult {
  double value = 0.0;  // bits, upper estimate
  /// Ensemble realizing the estimate: (weight, normalized pure state).
  std::vector<std::pair<double, Vector>> ensemble;
  int restarts_used = 0;
};

/// Upper estimate of the convex-roof extension by seeded local search over
/// ensemble decompositions (isometry parametrization of the fixed
/// purification). Exact on pure inputs; never claims global optimality.
ConvexRoofResult convex_roof_cmax_upper(const DensityMatrix& rho, int restarts,
                                        std::uint64_t seed);

struct CminViolation {
  PureState psi;
  channels::KrausChannel channel;
  std::vector<double> branch_probs;
  std::vector<double> branch_c_min;
  double average_c_min_after = 0.0;
  double c_min_before = 0.0;
  double margin = 0.0;
  std::uint64_t seed = 0;
  int trials_used = 0;
};

/// Seeded search for a pure state and an incoherent-Kraus channel whose
/// selective application increases the min-relative quantifier on average.
/// Throws SearchError when the trial budget is exhausted.
CminViolation cmin_io_violation_demo(std::uint64_t seed, int trials = 500,
                                     double margin = 1e-3);

/// True iff c_max(sum_i p_i rho_i) <= max_i c_max(rho_i) + tol.
bool quasi_convexity_check(const std::vector<DensityMatrix>& states,
                           const std::vector<double>& weights, double tol = 1e-7);

}  // namespace cohcert::measures
