#pragma once

#include "cohcert/types.hpp"

#include <cstdint>
#include <utility>

namespace cohcert::linalg {

/// Deterministic random source: splitmix64 plus a hand-rolled Box-Muller so
/// that streams are bit-identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Uniform double in [0, 1) with 53 significant bits.
  double uniform();
  /// Standard normal variate.
  double gaussian();
  /// Complex normal with unit total variance (real and imaginary parts
  /// each N(0, 1/2)).
  Complex complex_gaussian();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Derive an independent child seed (for partitioned work).
  std::uint64_t fork();

 private:
  std::uint64_t next_raw();

  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

class DensityMatrix;

/// Normalized pure state amplitudes.
class PureState {
 public:
  explicit PureState(Vector amplitudes, double tol_norm = 1e-8);

  int dim() const { return static_cast<int>(amp_.size()); }
  const Vector& amplitudes() const { return amp_; }
  DensityMatrix to_density() const;

 private:
  Vector amp_;
};

/// Hermitian, positive semidefinite, unit-trace matrix. A subnormalized
/// variant (trace <= 1) is allowed only where smoothing needs it.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix mat, bool allow_subnormalized = false,
                         Tolerances tol = {});

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& mat() const { return mat_; }
  bool subnormalized() const { return subnormalized_; }

  /// Wrap a matrix that is valid by construction (e.g. the output of a
  /// trace-preserving channel applied to a valid state). Hermitizes but
  /// skips the eigenvalue check.
  static DensityMatrix trusted(Matrix mat, bool subnormalized = false);

 private:
  DensityMatrix() = default;
  Matrix mat_;
  bool subnormalized_ = false;
};

struct EigResult {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns, H = V diag(values) V^dag
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Deterministic: fixed sweep order, no pivot randomness. Throws InputError
/// for non-square or non-Hermitian input.
EigResult hermitian_eig(const Matrix& h, double tol_herm = 1e-9);

/// Projection onto the diagonal in the reference basis.
Matrix dephase(const Matrix& m);

/// Uhlmann fidelity F(rho, sigma) = Tr|sqrt(rho) sqrt(sigma)|, in [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Sum of singular values.
double trace_norm(const Matrix& a);

/// Trace norm of a Hermitian matrix via its eigenvalues (cross-check path).
double trace_norm_hermitian(const Matrix& a);

/// Orthogonal projector onto the support of rho. Eigenvalues above
/// rank_tol * lambda_max count toward the rank.
Matrix support_projector(const DensityMatrix& rho, double rank_tol = 1e-8);

/// Von Neumann entropy in bits, 0 log 0 := 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// Kronecker product, row-major index convention (i, a) -> i * cols(b) + a.
Matrix kron(const Matrix& a, const Matrix& b);

/// n-fold tensor power; throws InputError when dim^n exceeds the cap.
DensityMatrix tensor_power(const DensityMatrix& rho, int n);

/// Ginibre-factor construction G G^dag / Tr, deterministic per seed.
DensityMatrix random_density_matrix(int dim, int rank, std::uint64_t seed);

/// Haar-direction pure state, deterministic per seed.
PureState random_pure_state(int dim, std::uint64_t seed);

/// max |m(i,j) - conj(m(j,i))| over all entries.
double hermiticity_residual(const Matrix& m);

/// Best-effort numerical symmetrization (m + m^dag)/2.
Matrix hermitize(const Matrix& m);

}  // namespace cohcert::linalg
