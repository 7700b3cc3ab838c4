#include "cohcert/oneshot.hpp"

#include "cohcert/measures.hpp"
#include "cohcert/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace cohcert::oneshot {

using linalg::hermitize;
using linalg::kron;

namespace {

constexpr double kFeasSlack = 1e-9;

// Choi block of a map from din to dout, with trace preservation and the
// incoherent-image condition (every basis state maps to a diagonal state)
// added as scalar constraints.
int add_choi_block(sdp::SdpProblem& p, int din, int dout) {
  const int n = din * dout;
  const int jb = p.add_block(n);
  for (int i = 0; i < din; ++i) {
    for (int j = i; j < din; ++j) {
      if (i == j) {
        Matrix a = Matrix::Zero(n, n);
        for (int o = 0; o < dout; ++o) a(i * dout + o, i * dout + o) = 1.0;
        p.add_constraint(jb, std::move(a), sdp::Sense::Eq, 1.0);
      } else {
        Matrix re = Matrix::Zero(n, n), im = Matrix::Zero(n, n);
        for (int o = 0; o < dout; ++o) {
          re(i * dout + o, j * dout + o) = 1.0;
          re(j * dout + o, i * dout + o) = 1.0;
          im(i * dout + o, j * dout + o) = Complex(0, 1);
          im(j * dout + o, i * dout + o) = Complex(0, -1);
        }
        p.add_constraint(jb, std::move(re), sdp::Sense::Eq, 0.0);
        p.add_constraint(jb, std::move(im), sdp::Sense::Eq, 0.0);
      }
    }
  }
  for (int i = 0; i < din; ++i) {
    for (int a = 0; a < dout; ++a) {
      for (int b = a + 1; b < dout; ++b) {
        Matrix re = Matrix::Zero(n, n), im = Matrix::Zero(n, n);
        re(i * dout + a, i * dout + b) = 1.0;
        re(i * dout + b, i * dout + a) = 1.0;
        im(i * dout + a, i * dout + b) = Complex(0, 1);
        im(i * dout + b, i * dout + a) = Complex(0, -1);
        p.add_constraint(jb, std::move(re), sdp::Sense::Eq, 0.0);
        p.add_constraint(jb, std::move(im), sdp::Sense::Eq, 0.0);
      }
    }
  }
  return jb;
}

Matrix uniform_superposition_projector(int m) {
  Vector v = Vector::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
  return v * v.adjoint();
}

void check_dims(int din, int dout) {
  if (din * dout > kDimensionCap * kDimensionCap || din > kDimensionCap ||
      dout > kDimensionCap || static_cast<long>(din) * dout > kDimensionCap)
    throw InputError("oneshot: Choi dimension din*dout exceeds cap");
}

}  // namespace

OneShotResult one_shot_distill_mio(const DensityMatrix& rho, double epsilon, int m_max,
                                   double tol) {
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw InputError("one_shot_distill_mio: epsilon must be in (0, 1)");
  if (m_max < 1) throw InputError("one_shot_distill_mio: m_max must be >= 1");
  const int d = rho.dim();

  OneShotResult res;
  res.epsilon = epsilon;
  // M = 1: the trivial one-dimensional target is reached by discarding the
  // input; its Choi over a d -> 1 map is the identity on the input space
  res.scan.push_back({1, true, 1.0, 0.0});
  res.m_star = 1;
  res.certificate = ChoiMatrix(d, 1, Matrix::Identity(d, d));

  for (int m = 2; m <= m_max; ++m) {
    check_dims(d, m);
    sdp::SdpProblem p;
    const int jb = add_choi_block(p, d, m);
    p.maximize = true;
    p.set_objective(jb, kron(rho.mat().transpose(), uniform_superposition_projector(m)));
    sdp::SolveOptions opt;
    opt.tol_gap = tol;
    opt.tol_feas = tol;
    const sdp::SdpSolution sol = solve_sdp(p, opt);
    if (sol.status != sdp::SolveStatus::Optimal)
      throw SolverError("one_shot_distill_mio: solver failure at M = " + std::to_string(m));
    const bool feasible = sol.primal_value >= 1.0 - epsilon - kFeasSlack;
    res.scan.push_back({m, feasible, sol.primal_value, sol.gap});
    if (feasible && m > res.m_star) {
      res.m_star = m;
      res.certificate = ChoiMatrix(d, m, hermitize(sol.primal[0]));
    }
  }
  res.log_m = std::log2(static_cast<double>(res.m_star));
  return res;
}

OneShotResult one_shot_cost_mio(const DensityMatrix& rho, double epsilon, int m_max,
                                double tol) {
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw InputError("one_shot_cost_mio: epsilon must be in (0, 1)");
  if (m_max < 1) throw InputError("one_shot_cost_mio: m_max must be >= 1");
  const int d = rho.dim();

  // pure targets admit the linear overlap form F^2 = <psi| X |psi>
  const double purity = (rho.mat() * rho.mat()).real().trace();
  std::optional<Matrix> pure_proj;
  if (std::abs(purity - 1.0) <= 1e-12) {
    const linalg::EigResult e = linalg::hermitian_eig(rho.mat());
    const Vector psi = e.vectors.col(d - 1);
    pure_proj = psi * psi.adjoint();
  }

  OneShotResult res;
  res.epsilon = epsilon;
  res.m_star = 0;

  for (int m = 1; m <= m_max; ++m) {
    check_dims(m, d);
    const int n = m * d;
    sdp::SdpProblem p;
    const int jb = add_choi_block(p, m, d);
    const Matrix psi_m_t = uniform_superposition_projector(m).transpose();
    double best = 0.0, gap = 0.0;
    bool feasible = false;
    sdp::SolveOptions opt;
    opt.tol_gap = tol;
    opt.tol_feas = tol;

    if (pure_proj) {
      p.maximize = true;
      p.set_objective(jb, kron(psi_m_t, *pure_proj));
      const sdp::SdpSolution sol = solve_sdp(p, opt);
      if (sol.status != sdp::SolveStatus::Optimal)
        throw SolverError("one_shot_cost_mio: solver failure at M = " + std::to_string(m));
      best = sol.primal_value;  // fidelity squared
      gap = sol.gap;
      feasible = best >= 1.0 - epsilon - kFeasSlack;
      if (feasible && res.m_star == 0) {
        res.m_star = m;
        res.certificate = ChoiMatrix(m, d, hermitize(sol.primal[0]));
      }
    } else {
      // fidelity block: G = [[rho, R], [R^dag, X]] >= 0 with
      // X = E(Psi_M) linear in the Choi block; max (Tr R + Tr R^dag) / 2
      const int gb = p.add_block(2 * d);
      p.maximize = true;
      Matrix k = Matrix::Zero(2 * d, 2 * d);
      k.block(0, d, d, d) = 0.5 * Matrix::Identity(d, d);
      k.block(d, 0, d, d) = 0.5 * Matrix::Identity(d, d);
      p.set_objective(gb, std::move(k));
      for (const Matrix& h : sdp::hermitian_basis(d)) {
        Matrix top = Matrix::Zero(2 * d, 2 * d);
        top.block(0, 0, d, d) = h;
        const double rhs = (h.conjugate().cwiseProduct(rho.mat())).sum().real();
        p.add_constraint(gb, std::move(top), sdp::Sense::Eq, rhs);
        Matrix bottom = Matrix::Zero(2 * d, 2 * d);
        bottom.block(d, d, d, d) = h;
        p.add_constraint({{gb, std::move(bottom)}, {jb, Matrix(-kron(psi_m_t, h))}},
                         sdp::Sense::Eq, 0.0);
      }
      const sdp::SdpSolution sol = solve_sdp(p, opt);
      if (sol.status != sdp::SolveStatus::Optimal)
        throw SolverError("one_shot_cost_mio: solver failure at M = " + std::to_string(m));
      best = sol.primal_value * sol.primal_value;  // fidelity -> fidelity squared
      gap = sol.gap;
      feasible = best >= 1.0 - epsilon - kFeasSlack;
      if (feasible && res.m_star == 0) {
        res.m_star = m;
        res.certificate = ChoiMatrix(m, d, hermitize(sol.primal[0]));
      }
    }
    res.scan.push_back({m, feasible, best, gap});
  }
  if (res.m_star == 0)
    throw SolverError("one_shot_cost_mio: no feasible M up to m_max (increase m_max)");
  res.log_m = std::log2(static_cast<double>(res.m_star));
  return res;
}

BoundReport check_cost_bound(const DensityMatrix& rho, double epsilon, int m_max, double tol) {
  if (epsilon <= 0.0 || 2.0 * std::sqrt(epsilon) >= 2.0)
    throw InputError("check_cost_bound: need 0 < eps and 2 sqrt(eps) < 2");
  BoundReport rep;
  rep.epsilon = epsilon;
  rep.lhs = measures::smooth_c_max(rho, 2.0 * std::sqrt(epsilon), tol).value;
  rep.rhs = one_shot_cost_mio(rho, epsilon, m_max, tol).log_m;
  rep.tolerance = 1e-6;
  rep.holds = rep.lhs <= rep.rhs + rep.tolerance;
  return rep;
}

BoundReport check_distill_bound(const DensityMatrix& rho, double epsilon, int m_max,
                                double tol) {
  BoundReport rep;
  rep.epsilon = epsilon;
  rep.lhs = one_shot_distill_mio(rho, epsilon, m_max, tol).log_m;
  rep.rhs = measures::smooth_c_min(rho, epsilon, tol).value;
  rep.tolerance = 1e-6;
  rep.holds = rep.lhs <= rep.rhs + rep.tolerance;
  return rep;
}

std::vector<SweepRecord> regularized_sweep(const DensityMatrix& rho, double epsilon,
                                           int n_max, double tol) {
  if (n_max < 1) throw InputError("regularized_sweep: n_max must be >= 1");
  double dims = 1.0;
  for (int i = 0; i < n_max; ++i) {
    dims *= rho.dim();
    if (dims > kDimensionCap)
      throw InputError("regularized_sweep: dim^n_max exceeds cap");
  }
  const double cr = measures::c_r(rho);
  std::vector<SweepRecord> records;
  for (int n = 1; n <= n_max; ++n) {
    const DensityMatrix rn = linalg::tensor_power(rho, n);
    SweepRecord rec;
    rec.n = n;
    rec.epsilon = epsilon;
    rec.c_r_target = cr;
    rec.value_max_over_n = measures::smooth_c_max(rn, epsilon, tol).value / n;
    rec.value_min_over_n = measures::smooth_c_min(rn, epsilon, tol).value / n;
    rec.unsmoothed_max_over_n = measures::c_max(rn, tol) / n;
    rec.unsmoothed_min_over_n = measures::c_min(rn) / n;
    rec.gap_max = std::abs(rec.value_max_over_n - cr);
    rec.gap_min = std::abs(rec.value_min_over_n - cr);
    if (rec.unsmoothed_min_over_n > cr + 1e-7 || cr > rec.unsmoothed_max_over_n + 1e-7)
      throw CertificationError(
          "regularized_sweep: per-copy chain violated at n = " + std::to_string(n));
    records.push_back(rec);
  }
  return records;
}

}  // namespace cohcert::oneshot
