#include "cohcert/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace cohcert::channels {

using linalg::EigResult;
using linalg::hermitian_eig;
using linalg::hermitize;
using linalg::Rng;

KrausChannel::KrausChannel(int dim_in, int dim_out, std::vector<Matrix> kraus,
                           double tol_complete)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  if (dim_in_ < 1 || dim_out_ < 1 || dim_in_ > kDimensionCap || dim_out_ > kDimensionCap)
    throw InputError("KrausChannel: bad dimensions");
  if (kraus_.empty()) throw InputError("KrausChannel: empty Kraus list");
  for (const Matrix& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_)
      throw InputError("KrausChannel: Kraus operator dimension mismatch");
    if (!k.allFinite()) throw InputError("KrausChannel: non-finite Kraus entry");
  }
  if (completeness_residual() > tol_complete)
    throw InputError("KrausChannel: Kraus operators are not trace preserving");
}

double KrausChannel::completeness_residual() const {
  Matrix acc = Matrix::Zero(dim_in_, dim_in_);
  for (const Matrix& k : kraus_) acc += k.adjoint() * k;
  return (acc - Matrix::Identity(dim_in_, dim_in_)).cwiseAbs().maxCoeff();
}

ChoiMatrix::ChoiMatrix(int dim_in, int dim_out, Matrix mat, double tol)
    : dim_in_(dim_in), dim_out_(dim_out), mat_(std::move(mat)) {
  if (dim_in_ < 1 || dim_out_ < 1 || dim_in_ * dim_out_ > kDimensionCap * kDimensionCap)
    throw InputError("ChoiMatrix: bad dimensions");
  const int n = dim_in_ * dim_out_;
  if (mat_.rows() != n || mat_.cols() != n) throw InputError("ChoiMatrix: dimension mismatch");
  const double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
  if (linalg::hermiticity_residual(mat_) > tol * scale)
    throw InputError("ChoiMatrix: matrix is not Hermitian");
  mat_ = hermitize(mat_);
  const EigResult e = hermitian_eig(mat_, 1e-6);
  if (e.values(0) < -tol * std::max(1.0, e.values(e.values.size() - 1)))
    throw InputError("ChoiMatrix: matrix is not positive semidefinite");
  // partial trace over the output must be the input identity
  for (int i = 0; i < dim_in_; ++i) {
    for (int j = 0; j < dim_in_; ++j) {
      const Complex t = block(i, j).trace();
      const Complex want = (i == j) ? Complex(1, 0) : Complex(0, 0);
      if (std::abs(t - want) > tol)
        throw InputError("ChoiMatrix: channel is not trace preserving");
    }
  }
}

Matrix ChoiMatrix::block(int i, int j) const {
  return mat_.block(i * dim_out_, j * dim_out_, dim_out_, dim_out_);
}

Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& x) {
  if (kraus.empty()) throw InputError("apply_kraus: empty Kraus list");
  Matrix out = Matrix::Zero(kraus[0].rows(), kraus[0].rows());
  for (const Matrix& k : kraus) out += k * x * k.adjoint();
  return out;
}

Matrix apply_matrix(const KrausChannel& ch, const Matrix& x) {
  if (x.rows() != ch.dim_in() || x.cols() != ch.dim_in())
    throw InputError("apply: state dimension mismatch");
  return apply_kraus(ch.kraus(), x);
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  return DensityMatrix::trusted(hermitize(apply_matrix(ch, rho.mat())),
                                rho.subnormalized());
}

Matrix adjoint_apply(const KrausChannel& ch, const Matrix& x) {
  if (x.rows() != ch.dim_out() || x.cols() != ch.dim_out())
    throw InputError("adjoint_apply: operator dimension mismatch");
  Matrix out = Matrix::Zero(ch.dim_in(), ch.dim_in());
  for (const Matrix& k : ch.kraus()) out += k.adjoint() * x * k;
  return out;
}

ChoiMatrix to_choi(const KrausChannel& ch) {
  const int din = ch.dim_in(), dout = ch.dim_out();
  Matrix j = Matrix::Zero(din * dout, din * dout);
  for (const Matrix& k : ch.kraus()) {
    Vector w(din * dout);
    for (int i = 0; i < din; ++i) w.segment(i * dout, dout) = k.col(i);
    j += w * w.adjoint();
  }
  return ChoiMatrix(din, dout, hermitize(j));
}

KrausChannel from_choi(const ChoiMatrix& j, double rank_tol) {
  const int din = j.dim_in(), dout = j.dim_out();
  const EigResult e = hermitian_eig(j.mat(), 1e-6);
  const double lmax = std::max(e.values(e.values.size() - 1), 0.0);
  std::vector<Matrix> kraus;
  for (int n = 0; n < e.values.size(); ++n) {
    const double lam = e.values(n);
    if (lam <= rank_tol * std::max(lmax, 1.0)) continue;
    Matrix k(dout, din);
    for (int i = 0; i < din; ++i) k.col(i) = e.vectors.col(n).segment(i * dout, dout);
    kraus.push_back(std::sqrt(lam) * k);
  }
  if (kraus.empty()) throw InputError("from_choi: Choi matrix has no positive spectrum");
  return KrausChannel(din, dout, std::move(kraus), 1e-6);
}

double choi_tp_residual(const ChoiMatrix& j) {
  double res = 0.0;
  for (int i = 0; i < j.dim_in(); ++i) {
    for (int k = 0; k < j.dim_in(); ++k) {
      const Complex want = (i == k) ? Complex(1, 0) : Complex(0, 0);
      res = std::max(res, std::abs(j.block(i, k).trace() - want));
    }
  }
  return res;
}

ClassCheck is_mio(const ChoiMatrix& j, double tol) {
  double res = 0.0;
  for (int i = 0; i < j.dim_in(); ++i) {
    const Matrix b = j.block(i, i);
    const Matrix off = b - linalg::dephase(b);
    res = std::max(res, off.cwiseAbs().maxCoeff());
  }
  return {res <= tol, res};
}

namespace {

// Column (and optionally row) sparsity: at most one above-tol entry.
ClassCheck sparsity_check(const KrausChannel& ch, bool rows_too, double tol) {
  double res = 0.0;
  for (const Matrix& k : ch.kraus()) {
    for (int c = 0; c < k.cols(); ++c) {
      double top = 0.0, second = 0.0;
      for (int r = 0; r < k.rows(); ++r) {
        const double a = std::abs(k(r, c));
        if (a > top) {
          second = top;
          top = a;
        } else if (a > second) {
          second = a;
        }
      }
      res = std::max(res, second);
    }
    if (rows_too) {
      for (int r = 0; r < k.rows(); ++r) {
        double top = 0.0, second = 0.0;
        for (int c = 0; c < k.cols(); ++c) {
          const double a = std::abs(k(r, c));
          if (a > top) {
            second = top;
            top = a;
          } else if (a > second) {
            second = a;
          }
        }
        res = std::max(res, second);
      }
    }
  }
  return {res <= tol, res};
}

}  // namespace

ClassCheck is_io(const KrausChannel& ch, double tol) { return sparsity_check(ch, false, tol); }

ClassCheck is_sio(const KrausChannel& ch, double tol) { return sparsity_check(ch, true, tol); }

ClassCheck is_dio(const KrausChannel& ch, double tol) {
  const int d = ch.dim_in();
  double res = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Matrix unit = Matrix::Zero(d, d);
      unit(i, j) = 1.0;
      const Matrix img = apply_kraus(ch.kraus(), unit);
      const Matrix lhs = linalg::dephase(img);
      const Matrix rhs = (i == j) ? img : Matrix::Zero(img.rows(), img.cols());
      res = std::max(res, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return {res <= tol, res};
}

ClassCheck is_dio_choi(const ChoiMatrix& j, double tol) {
  double res = 0.0;
  for (int i = 0; i < j.dim_in(); ++i) {
    for (int k = 0; k < j.dim_in(); ++k) {
      const Matrix b = j.block(i, k);
      if (i == k) {
        res = std::max(res, (b - linalg::dephase(b)).cwiseAbs().maxCoeff());
      } else {
        res = std::max(res, b.diagonal().cwiseAbs().maxCoeff());
      }
    }
  }
  return {res <= tol, res};
}

ChannelClassReport classify(const KrausChannel& ch, double tol) {
  ChannelClassReport rep;
  rep.io = is_io(ch, tol);
  rep.sio = is_sio(ch, tol);
  rep.dio = is_dio(ch, tol);
  rep.mio = is_mio(to_choi(ch), tol);
  return rep;
}

PureState maximally_coherent(int d, const std::vector<double>& phases) {
  if (d < 1 || d > kDimensionCap) throw InputError("maximally_coherent: bad dimension");
  if (!phases.empty() && static_cast<int>(phases.size()) != d)
    throw InputError("maximally_coherent: phase count must equal dimension");
  Vector v(d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    const double th = phases.empty() ? 0.0 : phases[j];
    v(j) = amp * std::exp(Complex(0, th));
  }
  return PureState(v);
}

Matrix diagonal_unitary(const std::vector<double>& phases) {
  if (phases.empty()) throw InputError("diagonal_unitary: empty phase list");
  const int d = static_cast<int>(phases.size());
  Matrix u = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) u(j, j) = std::exp(Complex(0, phases[j]));
  return u;
}

KrausChannel optimal_overlap_channel(const DensityMatrix& rho,
                                     const sdp::CmaxCertificate& cert, double tol) {
  const int d = rho.dim();
  if (cert.tau.rows() != d || cert.tau.cols() != d)
    throw InputError("optimal_overlap_channel: certificate dimension mismatch");
  for (int i = 0; i < d; ++i) {
    if (std::abs(cert.tau(i, i).real() - 1.0) > tol)
      throw InputError("optimal_overlap_channel: certificate tau is not unit diagonal");
  }
  const EigResult e = hermitian_eig(cert.tau / static_cast<double>(d), 1e-6);
  if (e.values(0) < -tol)
    throw InputError("optimal_overlap_channel: certificate tau is not positive semidefinite");

  std::vector<Matrix> kraus;
  for (int i = 0; i < d; ++i) {
    const double lam = std::max(e.values(i), 0.0);
    if (lam <= 1e-14) continue;
    Matrix m = Matrix::Zero(d, d);
    for (int jj = 0; jj < d; ++jj)
      m(jj, jj) = std::sqrt(d * lam) * std::conj(e.vectors(jj, i));
    kraus.push_back(std::move(m));
  }
  return KrausChannel(d, d, std::move(kraus), 1e-6);
}

namespace {

KrausChannel random_any(int dim, int kraus_count, Rng& rng) {
  std::vector<Matrix> g(kraus_count);
  Matrix s = Matrix::Zero(dim, dim);
  for (int k = 0; k < kraus_count; ++k) {
    g[k] = Matrix(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g[k](i, j) = rng.complex_gaussian();
    s += g[k].adjoint() * g[k];
  }
  const EigResult e = hermitian_eig(hermitize(s), 1e-6);
  Matrix isqrt = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double lam = std::max(e.values(i), 1e-30);
    isqrt += (1.0 / std::sqrt(lam)) * (e.vectors.col(i) * e.vectors.col(i).adjoint());
  }
  std::vector<Matrix> kraus(kraus_count);
  for (int k = 0; k < kraus_count; ++k) kraus[k] = g[k] * isqrt;
  return KrausChannel(dim, dim, std::move(kraus), 1e-6);
}

KrausChannel random_sparse(int dim, int kraus_count, bool permutation_rows, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    // column j of Kraus k holds one amplitude at a random row; per-column
    // normalization across k restores trace preservation exactly
    std::vector<Matrix> kraus(kraus_count, Matrix::Zero(dim, dim));
    std::vector<std::vector<int>> row_of(kraus_count, std::vector<int>(dim));
    for (int k = 0; k < kraus_count; ++k) {
      if (permutation_rows) {
        std::vector<int> perm(dim);
        for (int j = 0; j < dim; ++j) perm[j] = j;
        for (int j = dim - 1; j > 0; --j)
          std::swap(perm[j], perm[static_cast<int>(rng.below(j + 1))]);
        row_of[k] = perm;
      } else {
        for (int j = 0; j < dim; ++j) row_of[k][j] = static_cast<int>(rng.below(dim));
      }
    }
    bool ok = true;
    for (int j = 0; j < dim && ok; ++j) {
      std::vector<Complex> amps(kraus_count);
      double norm2 = 0.0;
      for (int k = 0; k < kraus_count; ++k) {
        amps[k] = rng.complex_gaussian();
        norm2 += std::norm(amps[k]);
      }
      if (norm2 < 1e-12) {
        ok = false;
        break;
      }
      const double inv = 1.0 / std::sqrt(norm2);
      for (int k = 0; k < kraus_count; ++k) kraus[k](row_of[k][j], j) = amps[k] * inv;
    }
    if (!ok) continue;
    return KrausChannel(dim, dim, std::move(kraus), 1e-6);
  }
  throw SolverError("random_channel: sparse generation failed");
}

// Phase twirl of a random Choi matrix: keeps the diagonal and the
// (i,i),(j,j) skeleton. This is the projection onto phase-covariant
// channels, a subset of the dephasing-covariant class.
KrausChannel random_dio(int dim, int kraus_count, Rng& rng) {
  const KrausChannel any = random_any(dim, std::max(kraus_count, 2), rng);
  const ChoiMatrix j = to_choi(any);
  const int n = dim * dim;
  Matrix t = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a) t(a, a) = j.mat()(a, a);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k)
      t(i * dim + i, k * dim + k) = j.mat()(i * dim + i, k * dim + k);
  return from_choi(ChoiMatrix(dim, dim, hermitize(t)));
}

// Supporting-hyperplane point of the MIO spectrahedron: maximize overlap
// with a random Choi target subject to PSD + TP + MIO.
KrausChannel random_mio(int dim, int kraus_count, Rng& rng) {
  const KrausChannel any = random_any(dim, std::max(kraus_count, 2), rng);
  const Matrix target = to_choi(any).mat();
  const int n = dim * dim;

  sdp::SdpProblem p;
  const int jb = p.add_block(n);
  p.maximize = true;
  p.set_objective(jb, target);

  // trace preservation: Tr(block(i, j)) = delta_ij
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      if (i == j) {
        Matrix a = Matrix::Zero(n, n);
        for (int o = 0; o < dim; ++o) a(i * dim + o, i * dim + o) = 1.0;
        p.add_constraint(jb, std::move(a), sdp::Sense::Eq, 1.0);
      } else {
        Matrix re = Matrix::Zero(n, n), im = Matrix::Zero(n, n);
        for (int o = 0; o < dim; ++o) {
          re(i * dim + o, j * dim + o) = 1.0;
          re(j * dim + o, i * dim + o) = 1.0;
          im(i * dim + o, j * dim + o) = Complex(0, 1);
          im(j * dim + o, i * dim + o) = Complex(0, -1);
        }
        p.add_constraint(jb, std::move(re), sdp::Sense::Eq, 0.0);
        p.add_constraint(jb, std::move(im), sdp::Sense::Eq, 0.0);
      }
    }
  }
  // MIO: E(|i><i|) diagonal
  for (int i = 0; i < dim; ++i) {
    for (int a = 0; a < dim; ++a) {
      for (int b = a + 1; b < dim; ++b) {
        Matrix re = Matrix::Zero(n, n), im = Matrix::Zero(n, n);
        re(i * dim + a, i * dim + b) = 1.0;
        re(i * dim + b, i * dim + a) = 1.0;
        im(i * dim + a, i * dim + b) = Complex(0, 1);
        im(i * dim + b, i * dim + a) = Complex(0, -1);
        p.add_constraint(jb, std::move(re), sdp::Sense::Eq, 0.0);
        p.add_constraint(jb, std::move(im), sdp::Sense::Eq, 0.0);
      }
    }
  }

  const sdp::SdpSolution sol = solve_sdp(p);
  if (sol.status != sdp::SolveStatus::Optimal)
    throw SolverError("random_channel: MIO projection solve failed");
  // interior-point iterates are strictly positive definite, so the solution
  // is a valid Choi matrix as-is (TP and MIO hold to solver tolerance)
  return from_choi(ChoiMatrix(dim, dim, hermitize(sol.primal[0])));
}

}  // namespace

KrausChannel random_channel(int dim, int kraus_count, ChannelClass cls, std::uint64_t seed) {
  if (dim < 1 || dim > kDimensionCap) throw InputError("random_channel: bad dimension");
  if (kraus_count < 1) throw InputError("random_channel: kraus_count must be >= 1");
  Rng rng(seed);
  switch (cls) {
    case ChannelClass::Any:
      return random_any(dim, kraus_count, rng);
    case ChannelClass::Io:
      return random_sparse(dim, kraus_count, false, rng);
    case ChannelClass::Sio:
      return random_sparse(dim, kraus_count, true, rng);
    case ChannelClass::Dio:
      return random_dio(dim, kraus_count, rng);
    case ChannelClass::Mio:
      return random_mio(dim, kraus_count, rng);
  }
  throw InputError("random_channel: unknown class");
}

}  // namespace cohcert::channels
