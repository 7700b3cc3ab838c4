#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cohcert {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Largest supported Hilbert-space dimension (also bounds d^n in tensor
/// powers and d*M in the one-shot Choi programs).
inline constexpr int kDimensionCap = 64;

/// Shared numerical tolerances. Hermiticity and positivity checks are
/// relative to the largest magnitude involved; `recon_scale` multiplies the
/// dimension for eigendecomposition residual bounds.
struct Tolerances {
  double herm = 1e-9;
  double psd = 1e-9;
  double trace = 1e-8;
  double recon_scale = 1e-10;
  double rank = 1e-8;
  double incoherent = 1e-9;
};

/// Invalid user input (malformed matrices, bad dimensions, bad flags).
/// The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical solver breakdown or iteration-limit failure. Exit code 3.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A certified identity failed to hold within tolerance. Exit code 1.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A seeded search exhausted its trial budget without finding an instance.
class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cohcert
