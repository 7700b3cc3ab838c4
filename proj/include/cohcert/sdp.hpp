#pragma once

#include "cohcert/linalg.hpp"
#include "cohcert/types.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cohcert::sdp {

/// Variable block kinds. Box01 blocks satisfy 0 <= X <= I and are lowered
/// internally to a PSD pair (X, I - X).
enum class BlockKind { Psd, Box01 };

struct Block {
  int dim = 0;
  BlockKind kind = BlockKind::Psd;
};

enum class Sense { Eq, Le, Ge };

/// Scalar linear constraint sum_k <coeff[k], X_k> (sense) bound. Coefficient
/// matrices must be Hermitian; an empty (0x0) matrix means "block absent".
struct Constraint {
  std::vector<Matrix> coeff;
  double bound = 0.0;
  Sense sense = Sense::Eq;
};

struct SdpProblem {
  std::vector<Block> blocks;
  std::vector<Matrix> objective;  // one Hermitian matrix per block
  std::vector<Constraint> constraints;
  bool maximize = false;

  /// Index of the block appended by add_block.
  int add_block(int dim, BlockKind kind = BlockKind::Psd);
  void set_objective(int block, Matrix coeff);
  /// Constraint touching a single block.
  void add_constraint(int block, Matrix coeff, Sense sense, double bound);
  /// Constraint touching several blocks, given as (block, coeff) pairs.
  void add_constraint(const std::vector<std::pair<int, Matrix>>& terms, Sense sense,
                      double bound);
};

enum class SolveStatus { Optimal, Infeasible, IterLimit };

struct SdpSolution {
  SolveStatus status = SolveStatus::IterLimit;
  std::vector<Matrix> primal;  // per declared block
  std::vector<double> dual;    // per declared constraint (Farkas ray if Infeasible)
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;                 // |primal_value - dual_value|
  double max_primal_residual = 0.0; // worst |<A_i, X> - b_i| (slack-adjusted)
  double min_block_eig = 0.0;       // most negative eigenvalue across blocks
  int iterations = 0;
};

struct SolveOptions {
  double tol_gap = 1e-8;
  double tol_feas = 1e-8;
  int max_iter = 200;
  /// Optional CSV trace: "iter,mu,pobj,dobj,prim_res,dual_res".
  std::ostream* trace = nullptr;
};

/// Per-solve statistics hook; when registered, every solve reports its final
/// gap/residual/status here. Used by the certification suites to audit all
/// solves in a run.
struct SolveStats {
  double gap = 0.0;
  double gap_normalized = 0.0;  // gap / (1 + max(|pv|, |dv|))
  double primal_residual = 0.0;
  double min_block_eig = 0.0;
  SolveStatus status = SolveStatus::Optimal;
};
void set_stats_collector(std::function<void(const SolveStats&)> collector);
void clear_stats_collector();

/// Dense primal-dual path-following interior point with Nesterov-Todd
/// scaling on Hermitian blocks. Deterministic for identical inputs.
SdpSolution solve_sdp(const SdpProblem& problem, const SolveOptions& options = {});

/// Certificate pair for the max-relative-entropy program
///   min { sum_i s_i : diag(s) >= rho }  =  max { Tr(rho tau) : tau >= 0,
///                                              diag(tau) = I }.
struct CmaxCertificate {
  RealVector s;    // length d; sigma* = diag(s) / sum(s)
  Matrix tau;      // PSD, unit diagonal
  double value = 0.0;  // sum_i s_i = Tr(rho tau) = 2^{C_max}
  double gap = 0.0;
};

/// Solve the specialized pair above. The primal optimum is attained at a
/// diagonal sigma (only the dephasing of sigma enters the constraint and the
/// trace is dephasing-invariant), so the primal variables reduce to the d
/// reals s_i; the engine works on the unit-diagonal side and recovers s from
/// the multipliers.
CmaxCertificate solve_cmax_pair(const linalg::DensityMatrix& rho, double tol = 1e-8);

/// Relaxed-input variant: any Hermitian PSD matrix (used by smoothing and by
/// the positive-homogeneity tests on subnormalized inputs).
CmaxCertificate solve_cmax_pair(const Matrix& rho_like, double tol = 1e-8);

/// Strictly feasible primal start s0_i = 2 lambda_max(rho): diag(s0) - rho
/// is positive definite for any state.
RealVector strictly_feasible_start(const linalg::DensityMatrix& rho);

/// Hermitian basis of d x d matrices: E_ii, then (E_ij + E_ji) and
/// i(E_ij - E_ji) for i < j. <H, X> enumerates diag, 2 Re X_ij, 2 Im X_ij.
std::vector<Matrix> hermitian_basis(int dim);

}  // namespace cohcert::sdp
