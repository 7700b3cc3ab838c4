#pragma once

#include "cohcert/channels.hpp"
#include "cohcert/linalg.hpp"
#include "cohcert/types.hpp"

#include <cstdint>
#include <vector>

namespace cohcert::games {

using channels::KrausChannel;
using linalg::DensityMatrix;

/// Collection of completely positive trace-nonincreasing subchannels whose
/// sum is trace preserving. Discrimination means guessing which branch
/// occurred.
class Instrument {
 public:
  Instrument(int dim_in, int dim_out, std::vector<std::vector<Matrix>> branch_kraus,
             double tol = 1e-8);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  int branches() const { return static_cast<int>(branch_kraus_.size()); }
  const std::vector<std::vector<Matrix>>& branch_kraus() const { return branch_kraus_; }
  /// Concatenation of all branch Kraus operators.
  KrausChannel total() const;
  /// Unnormalized branch output E_a(rho).
  Matrix branch_output(int a, const Matrix& rho) const;

 private:
  int dim_in_;
  int dim_out_;
  std::vector<std::vector<Matrix>> branch_kraus_;
};

/// Positive effects summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<Matrix> effects, double tol = 1e-8);

  int dim() const { return static_cast<int>(effects_[0].rows()); }
  int size() const { return static_cast<int>(effects_.size()); }
  const std::vector<Matrix>& effects() const { return effects_; }
  double sum_residual() const;
  double min_eig() const;

 private:
  std::vector<Matrix> effects_;
};

struct GameResult {
  double p_succ = 0.0;
  double p_ico = 0.0;
  double ratio = 0.0;
  double c_max_bits = 0.0;
  Povm povm_witness;
  std::vector<double> branch_probs;
  double sdp_gap = 0.0;
};

/// The d-branch instrument built from the optimal-overlap channel conjugated
/// by the Fourier family of diagonal unitaries U_k; its incoherent baseline
/// is exactly 1/d and the input state achieves the full 2^{c_max} advantage.
Instrument build_cmax_instrument(const DensityMatrix& rho, double tol = 1e-8);

/// d rank-1 effects U_k |Psi+><Psi+| U_k^dag (a projective Fourier basis).
Povm canonical_povm(int d);

/// sum_a Tr(E_a(rho) M_a).
double p_succ_fixed(const Instrument& inst, const Povm& povm, const DensityMatrix& rho);

/// Optimal discrimination probability over all POVMs (an SDP), with the
/// maximizing POVM.
std::pair<double, Povm> p_succ_opt(const Instrument& inst, const DensityMatrix& rho,
                                   double tol = 1e-8);

/// Best success probability over incoherent inputs. The objective is a
/// maximum of linear functionals of the state, so the optimum over the
/// diagonal simplex sits at a basis state.
double p_succ_ico(const Instrument& inst, double tol = 1e-8);

/// Build the instrument for rho, compute the achieved advantage ratio, and
/// certify |ratio - 2^{c_max}| <= tol_ratio. Additionally audits
/// `audit_instruments` random dephasing-covariant instruments against the
/// upper bound p_succ <= 2^{c_max} p_ico. Violations throw
/// CertificationError.
GameResult advantage_ratio(const DensityMatrix& rho, double tol_ratio = 1e-5,
                           int audit_instruments = 2, std::uint64_t audit_seed = 17);

/// Phase-discrimination instrument: branch k applies the diagonal unitary
/// with phase phi_k, weighted by its prior.
Instrument build_phase_instrument(int dim, const std::vector<double>& phases,
                                  const std::vector<double>& priors);

struct SimResult {
  long trials = 0;
  long successes = 0;
  double frequency = 0.0;
  double p_exact = 0.0;
  double stderr_exact = 0.0;  // sqrt(p (1-p) / trials)
  double ci_low = 0.0;        // 95% normal interval around the frequency
  double ci_high = 0.0;
};

/// Monte Carlo play by inverse-CDF sampling over the exact branch and
/// outcome distributions; deterministic per seed.
SimResult simulate_game(const Instrument& inst, const Povm& povm, const DensityMatrix& rho,
                        long trials, std::uint64_t seed);

}  // namespace cohcert::games
