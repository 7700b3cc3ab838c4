#pragma once

#include "cohcert/channels.hpp"
#include "cohcert/linalg.hpp"
#include "cohcert/types.hpp"

#include <optional>
#include <vector>

namespace cohcert::oneshot {

using channels::ChoiMatrix;
using linalg::DensityMatrix;

struct ScanEntry {
  int m = 0;
  bool feasible = false;
  /// Best achievable overlap (distillation) or fidelity (cost) at this M.
  double best_value = 0.0;
  double gap = 0.0;
};

struct OneShotResult {
  double epsilon = 0.0;
  int m_star = 1;        // M = 1 encodes the trivial target
  double log_m = 0.0;    // bits
  std::optional<ChoiMatrix> certificate;  // achieving map at m_star
  std::vector<ScanEntry> scan;            // full profile, no monotonicity assumed
};

/// Largest M such that some MIO channel pushes rho onto the M-dimensional
/// uniform superposition with overlap at least 1 - epsilon. Every M in
/// 2..m_max is scanned; M = 1 is always feasible.
OneShotResult one_shot_distill_mio(const DensityMatrix& rho, double epsilon, int m_max,
                                   double tol = 1e-8);

/// Smallest M such that some MIO channel prepares rho from the
/// M-dimensional uniform superposition with fidelity^2 at least 1 - epsilon.
/// Mixed targets use the positive-block fidelity program; pure targets use
/// the linear overlap.
OneShotResult one_shot_cost_mio(const DensityMatrix& rho, double epsilon, int m_max,
                                double tol = 1e-8);

struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 1e-6;
  bool holds = false;
  double epsilon = 0.0;
};

/// Smoothed max quantifier at 2 sqrt(eps) lower-bounds the one-shot cost.
BoundReport check_cost_bound(const DensityMatrix& rho, double epsilon, int m_max = 8,
                             double tol = 1e-8);

/// One-shot distillation is upper-bounded by the smoothed min quantifier.
BoundReport check_distill_bound(const DensityMatrix& rho, double epsilon, int m_max = 8,
                                double tol = 1e-8);

struct SweepRecord {
  int n = 0;
  double epsilon = 0.0;
  double value_max_over_n = 0.0;  // smoothed max quantifier per copy
  double value_min_over_n = 0.0;  // smoothed min quantifier per copy
  double c_r_target = 0.0;
  double unsmoothed_max_over_n = 0.0;
  double unsmoothed_min_over_n = 0.0;
  double gap_max = 0.0;  // |value_max_over_n - c_r_target|
  double gap_min = 0.0;
};

/// Per-copy smoothed quantifiers of tensor powers for n = 1..n_max, with the
/// per-copy unsmoothed chain asserted:
///   c_min(rho^n)/n <= c_r(rho) <= c_max(rho^n)/n + 1e-7
/// (the middle term uses entropy additivity). No ordering is asserted for
/// the smoothed values; the gaps are reported for trend inspection.
std::vector<SweepRecord> regularized_sweep(const DensityMatrix& rho, double epsilon,
                                           int n_max, double tol = 1e-8);

}  // namespace cohcert::oneshot
