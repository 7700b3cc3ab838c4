#include "cohcert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

namespace cohcert::linalg {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double Rng::uniform() { return static_cast<double>(next_raw() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::next_raw() { return splitmix64(state_); }

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(th);
  have_spare_ = true;
  return r * std::cos(th);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im) / std::sqrt(2.0);
}

std::uint64_t Rng::below(std::uint64_t n) { return n == 0 ? 0 : next_raw() % n; }

std::uint64_t Rng::fork() { return next_raw(); }

double hermiticity_residual(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

PureState::PureState(Vector amplitudes, double tol_norm) : amp_(std::move(amplitudes)) {
  if (amp_.size() == 0) throw InputError("PureState: empty amplitude vector");
  const double n2 = amp_.squaredNorm();
  if (std::abs(n2 - 1.0) > tol_norm)
    throw InputError("PureState: amplitudes not normalized, |psi|^2 = " + std::to_string(n2));
  if (!amp_.allFinite()) throw InputError("PureState: non-finite amplitude");
}

DensityMatrix PureState::to_density() const {
  return DensityMatrix::trusted(amp_ * amp_.adjoint());
}

DensityMatrix::DensityMatrix(Matrix mat, bool allow_subnormalized, Tolerances tol)
    : mat_(std::move(mat)), subnormalized_(allow_subnormalized) {
  if (mat_.rows() != mat_.cols() || mat_.rows() == 0)
    throw InputError("DensityMatrix: matrix must be square and nonempty");
  if (mat_.rows() > kDimensionCap)
    throw InputError("DensityMatrix: dimension exceeds cap " + std::to_string(kDimensionCap));
  if (!mat_.allFinite()) throw InputError("DensityMatrix: non-finite entry");
  const double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
  if (hermiticity_residual(mat_) > tol.herm * scale)
    throw InputError("DensityMatrix: matrix is not Hermitian within tolerance");
  mat_ = hermitize(mat_);
  const EigResult eig = hermitian_eig(mat_, tol.herm);
  const double lmax = eig.values(eig.values.size() - 1);
  const double lmin = eig.values(0);
  if (lmin < -tol.psd * std::max(lmax, 1.0))
    throw InputError("DensityMatrix: matrix is not positive semidefinite within tolerance");
  const double tr = mat_.real().trace();
  if (allow_subnormalized) {
    if (tr > 1.0 + tol.trace) throw InputError("DensityMatrix: trace exceeds 1");
  } else if (std::abs(tr - 1.0) > tol.trace) {
    throw InputError("DensityMatrix: trace differs from 1 by " + std::to_string(tr - 1.0));
  }
}

DensityMatrix DensityMatrix::trusted(Matrix mat, bool subnormalized) {
  DensityMatrix d;
  d.mat_ = hermitize(mat);
  d.subnormalized_ = subnormalized;
  return d;
}

EigResult hermitian_eig(const Matrix& h, double tol_herm) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw InputError("hermitian_eig: matrix must be square and nonempty");
  const int d = static_cast<int>(h.rows());
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (hermiticity_residual(h) > tol_herm * scale)
    throw InputError("hermitian_eig: matrix is not Hermitian within tolerance");

  Matrix a = hermitize(h);
  Matrix v = Matrix::Identity(d, d);
  const double fro = std::max(a.norm(), 1e-300);

  // Cyclic-by-row Jacobi sweeps. Quadratic convergence; the sweep count is
  // generous and never reached in practice for d <= 64.
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-14 * fro) break;

    for (int p = 0; p < d; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const Complex gamma = a(p, q);
        const double ag = std::abs(gamma);
        if (ag <= 1e-18 * fro) continue;
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double xi = (beta - alpha) / (2.0 * ag);
        const double sgn = (xi >= 0.0) ? 1.0 : -1.0;
        const double t = sgn / (std::abs(xi) + std::hypot(1.0, xi));
        const double c = 1.0 / std::hypot(1.0, t);
        const Complex s = (t * c) * (gamma / ag);

        // A <- U^dag A U with U == I except U(p,p)=U(q,q)=c, U(p,q)=s,
        // U(q,p)=-conj(s); V accumulates column rotations.
        for (int k = 0; k < d; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - std::conj(s) * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = std::conj(s) * apk + c * aqk;
        }
        for (int k = 0; k < d; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - std::conj(s) * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
        a(p, q) = Complex(0, 0);
        a(q, p) = Complex(0, 0);
      }
    }
  }

  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigResult out;
  out.values = RealVector(d);
  out.vectors = Matrix(d, d);
  for (int i = 0; i < d; ++i) {
    out.values(i) = a(order[i], order[i]).real();
    out.vectors.col(i) = v.col(order[i]);
  }
  return out;
}

Matrix dephase(const Matrix& m) {
  if (m.rows() != m.cols()) throw InputError("dephase: matrix must be square");
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  out.diagonal() = m.diagonal();
  return out;
}

namespace {

Matrix psd_sqrt(const Matrix& m) {
  const EigResult e = hermitian_eig(m, 1e-6);
  Matrix s = Matrix::Zero(m.rows(), m.cols());
  for (int i = 0; i < e.values.size(); ++i) {
    const double lam = std::max(e.values(i), 0.0);
    s += std::sqrt(lam) * (e.vectors.col(i) * e.vectors.col(i).adjoint());
  }
  return s;
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw InputError("fidelity: dimension mismatch");
  const Matrix sr = psd_sqrt(rho.mat());
  const Matrix b = hermitize(sr * sigma.mat() * sr);
  const EigResult e = hermitian_eig(b, 1e-6);
  double f = 0.0;
  for (int i = 0; i < e.values.size(); ++i) f += std::sqrt(std::max(e.values(i), 0.0));
  return std::clamp(f, 0.0, 1.0);
}

double trace_norm(const Matrix& a) {
  const Matrix g = hermitize(a.adjoint() * a);
  const EigResult e = hermitian_eig(g, 1e-6);
  double t = 0.0;
  for (int i = 0; i < e.values.size(); ++i) t += std::sqrt(std::max(e.values(i), 0.0));
  return t;
}

double trace_norm_hermitian(const Matrix& a) {
  const EigResult e = hermitian_eig(a);
  return e.values.cwiseAbs().sum();
}

Matrix support_projector(const DensityMatrix& rho, double rank_tol) {
  const EigResult e = hermitian_eig(rho.mat());
  const double lmax = e.values(e.values.size() - 1);
  Matrix pi = Matrix::Zero(rho.dim(), rho.dim());
  for (int i = 0; i < e.values.size(); ++i) {
    if (e.values(i) > rank_tol * lmax)
      pi += e.vectors.col(i) * e.vectors.col(i).adjoint();
  }
  return hermitize(pi);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const EigResult e = hermitian_eig(rho.mat());
  double s = 0.0;
  for (int i = 0; i < e.values.size(); ++i) {
    const double lam = e.values(i);
    if (lam > 0.0) s -= lam * std::log2(lam);
  }
  return std::max(s, 0.0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityMatrix tensor_power(const DensityMatrix& rho, int n) {
  if (n < 1) throw InputError("tensor_power: n must be >= 1");
  double dims = 1.0;
  for (int i = 0; i < n; ++i) {
    dims *= rho.dim();
    if (dims > kDimensionCap)
      throw InputError("tensor_power: dim^n exceeds cap " + std::to_string(kDimensionCap));
  }
  Matrix out = rho.mat();
  for (int i = 1; i < n; ++i) out = kron(out, rho.mat());
  return DensityMatrix::trusted(out);
}

DensityMatrix random_density_matrix(int dim, int rank, std::uint64_t seed) {
  if (dim < 1 || dim > kDimensionCap) throw InputError("random_density_matrix: bad dimension");
  if (rank < 1 || rank > dim) throw InputError("random_density_matrix: rank must be in [1, dim]");
  Rng rng(seed);
  Matrix g(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = rng.complex_gaussian();
  Matrix m = g * g.adjoint();
  m /= m.real().trace();
  return DensityMatrix::trusted(hermitize(m));
}

PureState random_pure_state(int dim, std::uint64_t seed) {
  if (dim < 1 || dim > kDimensionCap) throw InputError("random_pure_state: bad dimension");
  Rng rng(seed);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
  const double n = v.norm();
  if (n < 1e-12) return random_pure_state(dim, seed + 1);
  return PureState(v / n);
}

}  // namespace cohcert::linalg
