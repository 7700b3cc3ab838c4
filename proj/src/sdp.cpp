#include "cohcert/sdp.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>
#include <ostream>
#include <tuple>
#include <utility>
#include <vector>

namespace cohcert::sdp {

using linalg::hermitian_eig;
using linalg::hermitize;

int SdpProblem::add_block(int dim, BlockKind kind) {
  if (dim < 1 || dim > kDimensionCap) throw InputError("SdpProblem: bad block dimension");
  blocks.push_back({dim, kind});
  objective.push_back(Matrix::Zero(dim, dim));
  return static_cast<int>(blocks.size()) - 1;
}

void SdpProblem::set_objective(int block, Matrix coeff) {
  objective.at(block) = std::move(coeff);
}

void SdpProblem::add_constraint(int block, Matrix coeff, Sense sense, double bound) {
  add_constraint({{block, std::move(coeff)}}, sense, bound);
}

void SdpProblem::add_constraint(const std::vector<std::pair<int, Matrix>>& terms, Sense sense,
                                double bound) {
  Constraint c;
  c.coeff.assign(blocks.size(), Matrix());
  for (const auto& [blk, m] : terms) c.coeff.at(blk) = m;
  c.bound = bound;
  c.sense = sense;
  constraints.push_back(std::move(c));
}

std::vector<Matrix> hermitian_basis(int dim) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    Matrix e = Matrix::Zero(dim, dim);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      Matrix s = Matrix::Zero(dim, dim);
      s(i, j) = 1.0;
      s(j, i) = 1.0;
      basis.push_back(std::move(s));
      Matrix a = Matrix::Zero(dim, dim);
      a(i, j) = Complex(0, 1);
      a(j, i) = Complex(0, -1);
      basis.push_back(std::move(a));
    }
  }
  return basis;
}

namespace {

std::mutex g_stats_mutex;
std::function<void(const SolveStats&)> g_stats_collector;

void report_stats(const SolveStats& s) {
  std::lock_guard<std::mutex> lock(g_stats_mutex);
  if (g_stats_collector) g_stats_collector(s);
}

// One coefficient matrix restricted to one internal block. Constraints built
// from matrix units are applied through their entry lists instead of dense
// products.
struct Coeff {
  int block = -1;
  bool sparse = false;
  Matrix dense;
  std::vector<std::tuple<int, int, Complex>> entries;
};

Coeff make_coeff(int block, const Matrix& m) {
  Coeff c;
  c.block = block;
  c.dense = m;
  const int d = static_cast<int>(m.rows());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (m(i, j) != Complex(0, 0)) c.entries.emplace_back(i, j, m(i, j));
  c.sparse = static_cast<int>(c.entries.size()) <= std::max(2, d);
  return c;
}

double dot_herm(const Matrix& a, const Matrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

double coeff_dot(const Coeff& c, const Matrix& x) {
  if (c.sparse) {
    Complex acc(0, 0);
    for (const auto& [r, col, v] : c.entries) acc += v * x(col, r);
    return acc.real();
  }
  return dot_herm(c.dense, x);
}

void coeff_axpy(Matrix& target, const Coeff& c, double alpha) {
  if (c.sparse) {
    for (const auto& [r, col, v] : c.entries) target(r, col) += alpha * v;
  } else {
    target += alpha * c.dense;
  }
}

Matrix coeff_waw(const Coeff& c, const Matrix& w) {
  if (c.sparse) {
    Matrix out = Matrix::Zero(w.rows(), w.cols());
    for (const auto& [r, col, v] : c.entries) out.noalias() += v * (w.col(r) * w.row(col));
    return out;
  }
  return w * c.dense * w;
}

struct Internal {
  std::vector<int> dims;
  std::vector<Matrix> c;                  // minimization objective
  std::vector<std::vector<Coeff>> rows;   // per constraint
  RealVector b;
  std::vector<std::vector<std::pair<int, const Coeff*>>> touching;  // per block
  int m_declared = 0;
  std::vector<int> declared_block;  // declared -> internal block index
};

Internal lower(const SdpProblem& p) {
  if (p.blocks.empty()) throw InputError("solve_sdp: problem has no variable blocks");
  if (p.objective.size() != p.blocks.size())
    throw InputError("solve_sdp: objective/block count mismatch");
  Internal in;
  const double sign = p.maximize ? -1.0 : 1.0;
  std::vector<int> partner(p.blocks.size(), -1);
  for (std::size_t k = 0; k < p.blocks.size(); ++k) {
    const auto& blk = p.blocks[k];
    if (blk.dim < 1) throw InputError("solve_sdp: bad block dimension");
    const Matrix& obj = p.objective[k];
    if (obj.rows() != blk.dim || obj.cols() != blk.dim)
      throw InputError("solve_sdp: objective dimension mismatch");
    if (linalg::hermiticity_residual(obj) > 1e-9 * std::max(1.0, obj.cwiseAbs().maxCoeff()))
      throw InputError("solve_sdp: objective coefficient not Hermitian");
    in.declared_block.push_back(static_cast<int>(in.dims.size()));
    in.dims.push_back(blk.dim);
    in.c.push_back(sign * hermitize(obj));
    if (blk.kind == BlockKind::Box01) {
      partner[k] = static_cast<int>(in.dims.size());
      in.dims.push_back(blk.dim);
      in.c.push_back(Matrix::Zero(blk.dim, blk.dim));
    }
  }

  std::vector<std::vector<Coeff>> rows;
  std::vector<double> b;

  in.m_declared = static_cast<int>(p.constraints.size());
  for (const auto& con : p.constraints) {
    if (con.coeff.size() != p.blocks.size())
      throw InputError("solve_sdp: constraint coefficient count mismatch");
    std::vector<Coeff> row;
    for (std::size_t k = 0; k < p.blocks.size(); ++k) {
      const Matrix& a = con.coeff[k];
      if (a.size() == 0) continue;
      if (a.rows() != p.blocks[k].dim || a.cols() != p.blocks[k].dim)
        throw InputError("solve_sdp: constraint coefficient dimension mismatch");
      if (linalg::hermiticity_residual(a) > 1e-9 * std::max(1.0, a.cwiseAbs().maxCoeff()))
        throw InputError("solve_sdp: constraint coefficient not Hermitian");
      if (a.cwiseAbs().maxCoeff() == 0.0) continue;
      row.push_back(make_coeff(in.declared_block[k], a));
    }
    if (row.empty() && con.sense == Sense::Eq)
      throw InputError("solve_sdp: constraint with all-zero coefficients");
    if (con.sense != Sense::Eq) {
      // slack block: <A, X> + s = b (Le) or <A, X> - s = b (Ge)
      const int slack = static_cast<int>(in.dims.size());
      in.dims.push_back(1);
      in.c.push_back(Matrix::Zero(1, 1));
      Matrix one(1, 1);
      one(0, 0) = (con.sense == Sense::Le) ? 1.0 : -1.0;
      row.push_back(make_coeff(slack, one));
    }
    rows.push_back(std::move(row));
    b.push_back(con.bound);
  }

  // Box lowering: X + S = I entrywise over the Hermitian basis.
  for (std::size_t k = 0; k < p.blocks.size(); ++k) {
    if (partner[k] < 0) continue;
    const int d = p.blocks[k].dim;
    for (const Matrix& h : hermitian_basis(d)) {
      std::vector<Coeff> row;
      row.push_back(make_coeff(in.declared_block[k], h));
      row.push_back(make_coeff(partner[k], h));
      const double rhs = h.real().trace();  // 1 for E_ii, 0 otherwise
      rows.push_back(std::move(row));
      b.push_back(rhs);
    }
  }

  in.rows = std::move(rows);
  in.b = Eigen::Map<RealVector>(b.data(), static_cast<int>(b.size()));
  in.touching.resize(in.dims.size());
  for (std::size_t i = 0; i < in.rows.size(); ++i)
    for (const Coeff& c : in.rows[i])
      in.touching[c.block].emplace_back(static_cast<int>(i), &c);
  return in;
}

// Largest alpha in (0, 1] with X + alpha D >= 0, given X > 0.
double max_step(const Matrix& x, const Matrix& d) {
  Eigen::LLT<Matrix> llt(x);
  Matrix t;
  if (llt.info() == Eigen::Success) {
    Matrix a = llt.matrixL().solve(d);
    t = hermitize(llt.matrixL().solve(a.adjoint()));
  } else {
    const linalg::EigResult e = hermitian_eig(x, 1e-6);
    Matrix isqrt = Matrix::Zero(x.rows(), x.cols());
    for (int i = 0; i < e.values.size(); ++i) {
      const double lam = std::max(e.values(i), 1e-300);
      isqrt += (1.0 / std::sqrt(lam)) * (e.vectors.col(i) * e.vectors.col(i).adjoint());
    }
    t = hermitize(isqrt * d * isqrt);
  }
  const linalg::EigResult e = hermitian_eig(t, 1e-6);
  const double lmin = e.values(0);
  if (lmin >= -1e-13) return 1.0;
  return std::min(1.0, -1.0 / lmin);
}

Matrix psd_inverse(const Matrix& x) {
  Eigen::LLT<Matrix> llt(x);
  if (llt.info() == Eigen::Success)
    return hermitize(llt.solve(Matrix::Identity(x.rows(), x.cols())));
  const linalg::EigResult e = hermitian_eig(x, 1e-6);
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (int i = 0; i < e.values.size(); ++i) {
    const double lam = std::max(e.values(i), 1e-300);
    out += (1.0 / lam) * (e.vectors.col(i) * e.vectors.col(i).adjoint());
  }
  return out;
}

// Nesterov-Todd scaling point: W Z W = X for X, Z > 0.
Matrix nt_scaling(const Matrix& x, const Matrix& z) {
  const int d = static_cast<int>(x.rows());
  const linalg::EigResult ex = hermitian_eig(x, 1e-6);
  Matrix xh = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double lam = std::max(ex.values(i), 1e-300);
    xh += std::sqrt(lam) * (ex.vectors.col(i) * ex.vectors.col(i).adjoint());
  }
  const Matrix mm = hermitize(xh * z * xh);
  const linalg::EigResult em = hermitian_eig(mm, 1e-6);
  Matrix mmisqrt = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double lam = std::max(em.values(i), 1e-300);
    mmisqrt += (1.0 / std::sqrt(lam)) * (em.vectors.col(i) * em.vectors.col(i).adjoint());
  }
  return hermitize(xh * mmisqrt * xh);
}

}  // namespace

void set_stats_collector(std::function<void(const SolveStats&)> collector) {
  std::lock_guard<std::mutex> lock(g_stats_mutex);
  g_stats_collector = std::move(collector);
}

void clear_stats_collector() {
  std::lock_guard<std::mutex> lock(g_stats_mutex);
  g_stats_collector = nullptr;
}

SdpSolution solve_sdp(const SdpProblem& problem, const SolveOptions& options) {
  Internal in = lower(problem);
  const int nb = static_cast<int>(in.dims.size());
  const int m = static_cast<int>(in.rows.size());
  if (m == 0) throw InputError("solve_sdp: problem has no constraints");
  double total_dim = 0.0;
  for (int k = 0; k < nb; ++k) total_dim += in.dims[k];

  const double bmax = (in.b.size() > 0) ? in.b.cwiseAbs().maxCoeff() : 0.0;
  double cmax = 0.0;
  for (const Matrix& ck : in.c) cmax = std::max(cmax, ck.cwiseAbs().maxCoeff());

  std::vector<Matrix> x(nb), z(nb);
  for (int k = 0; k < nb; ++k) {
    const double xi = std::max(10.0, 2.0 * bmax);
    const double zeta = std::max(10.0, 2.0 * cmax);
    x[k] = xi * Matrix::Identity(in.dims[k], in.dims[k]);
    z[k] = zeta * Matrix::Identity(in.dims[k], in.dims[k]);
  }
  RealVector y = RealVector::Zero(m);

  const double sign = problem.maximize ? -1.0 : 1.0;
  SdpSolution sol;
  sol.status = SolveStatus::IterLimit;

  auto finalize = [&](SolveStatus status, int iter) {
    sol.status = status;
    sol.iterations = iter;
    sol.primal.clear();
    for (std::size_t k = 0; k < problem.blocks.size(); ++k)
      sol.primal.push_back(x[in.declared_block[k]]);
    sol.dual.assign(y.data(), y.data() + in.m_declared);
    double pobj = 0.0;
    for (int k = 0; k < nb; ++k) pobj += dot_herm(in.c[k], x[k]);
    const double dobj = in.b.dot(y);
    sol.primal_value = sign * pobj;
    sol.dual_value = sign * dobj;
    sol.gap = std::abs(pobj - dobj);
    double rmax = 0.0;
    for (int i = 0; i < m; ++i) {
      double lhs = 0.0;
      for (const Coeff& c : in.rows[i]) lhs += coeff_dot(c, x[c.block]);
      rmax = std::max(rmax, std::abs(lhs - in.b(i)));
    }
    sol.max_primal_residual = rmax;
    double mineig = 0.0;
    for (int k = 0; k < nb; ++k) {
      const linalg::EigResult e = hermitian_eig(x[k], 1e-6);
      mineig = std::min(mineig, e.values(0));
    }
    sol.min_block_eig = mineig;
    const double gap_norm =
        sol.gap / (1.0 + std::max(std::abs(sol.primal_value), std::abs(sol.dual_value)));
    report_stats({sol.gap, gap_norm, sol.max_primal_residual, sol.min_block_eig, sol.status});
  };

  std::vector<Matrix> rd(nb), w(nb), zinv(nb), wrdw(nb), rc(nb), dz(nb), dx(nb);
  RealVector rp(m);

  double best_score = std::numeric_limits<double>::infinity();
  std::vector<Matrix> best_x = x, best_z = z;
  RealVector best_y = y;
  auto restore_best = [&] {
    x = best_x;
    z = best_z;
    y = best_y;
  };

  // Gram matrix of the constraint map, used to project computed directions
  // back onto {A(dX) = rp}. Without it the scaled back-substitution loses
  // O(u * cond(W)^2) of primal feasibility per iteration near the optimum.
  RealMatrix gram = RealMatrix::Zero(m, m);
  for (int k = 0; k < nb; ++k) {
    const auto& touch = in.touching[k];
    for (std::size_t j = 0; j < touch.size(); ++j) {
      for (std::size_t i = 0; i <= j; ++i) {
        const double v = coeff_dot(*touch[i].second, touch[j].second->dense);
        gram(touch[i].first, touch[j].first) += v;
        if (touch[i].first != touch[j].first) gram(touch[j].first, touch[i].first) += v;
      }
    }
  }
  Eigen::LDLT<RealMatrix> gram_ldlt(gram);
  const bool have_gram = gram_ldlt.info() == Eigen::Success;

  double prev_mu = std::numeric_limits<double>::infinity();
  int stall_count = 0;

  for (int iter = 0; iter <= options.max_iter; ++iter) {
    // residuals
    for (int i = 0; i < m; ++i) {
      double lhs = 0.0;
      for (const Coeff& c : in.rows[i]) lhs += coeff_dot(c, x[c.block]);
      rp(i) = in.b(i) - lhs;
    }
    for (int k = 0; k < nb; ++k) rd[k] = in.c[k] - z[k];
    for (int i = 0; i < m; ++i)
      for (const Coeff& c : in.rows[i]) coeff_axpy(rd[c.block], c, -y(i));

    double pobj = 0.0, mu = 0.0;
    for (int k = 0; k < nb; ++k) {
      pobj += dot_herm(in.c[k], x[k]);
      mu += dot_herm(x[k], z[k]);
    }
    mu /= total_dim;
    const double dobj = in.b.dot(y);

    const double prim_res = rp.cwiseAbs().maxCoeff();
    double dual_res = 0.0;
    for (int k = 0; k < nb; ++k) dual_res = std::max(dual_res, rd[k].cwiseAbs().maxCoeff());
    const double gap = std::abs(pobj - dobj);

    if (options.trace) {
      (*options.trace) << iter << ',' << mu << ',' << sign * pobj << ',' << sign * dobj << ','
                       << prim_res << ',' << dual_res << '\n';
    }

    const double gap_scale = 1.0 + std::max(std::abs(pobj), std::abs(dobj));
    const bool prim_ok = prim_res <= 0.5 * options.tol_feas * (1.0 + bmax);
    const bool dual_ok = dual_res <= 0.5 * options.tol_feas * (1.0 + cmax);
    const bool gap_ok = gap <= 0.5 * options.tol_gap * gap_scale;
    if (prim_ok && dual_ok && gap_ok) {
      finalize(SolveStatus::Optimal, iter);
      return sol;
    }

    // Stalled at the numerical floor: accept at full tolerance, otherwise
    // hand back the best iterate as IterLimit.
    if (mu > 0.99 * prev_mu) {
      if (++stall_count >= 6) {
        if (prim_res <= options.tol_feas * (1.0 + bmax) &&
            dual_res <= options.tol_feas * (1.0 + cmax) && gap <= options.tol_gap * gap_scale) {
          finalize(SolveStatus::Optimal, iter);
          return sol;
        }
        restore_best();
        break;
      }
    } else {
      stall_count = 0;
    }
    prev_mu = mu;

    const double score = std::max({prim_res / (1.0 + bmax), dual_res / (1.0 + cmax),
                                   gap / (1.0 + std::abs(pobj) + std::abs(dobj))});
    if (score < best_score) {
      best_score = score;
      best_x = x;
      best_z = z;
      best_y = y;
    } else if (score > 1e3 * best_score && best_score < 1e-5) {
      // endgame divergence; the best iterate is the honest answer
      restore_best();
      break;
    }

    // Farkas ray for primal infeasibility: y with b.y > 0 and A*(y) <= 0.
    if (dobj > 1.0) {
      double certres = 0.0;
      for (int k = 0; k < nb; ++k)
        certres = std::max(certres, (in.c[k] - rd[k]).cwiseAbs().maxCoeff());
      if (certres <= options.tol_feas * dobj) {
        y /= dobj;
        finalize(SolveStatus::Infeasible, iter);
        return sol;
      }
    }

    if (iter == options.max_iter) break;

    for (int k = 0; k < nb; ++k) {
      w[k] = nt_scaling(x[k], z[k]);
      zinv[k] = psd_inverse(z[k]);
      wrdw[k] = w[k] * rd[k] * w[k];
    }

    // Schur complement M(i,j) = sum_k <A_ik, W A_jk W>
    RealMatrix schur = RealMatrix::Zero(m, m);
    for (int k = 0; k < nb; ++k) {
      const auto& touch = in.touching[k];
      if (touch.empty()) continue;
      std::vector<Matrix> waw(touch.size());
      for (std::size_t j = 0; j < touch.size(); ++j) waw[j] = coeff_waw(*touch[j].second, w[k]);
      for (std::size_t j = 0; j < touch.size(); ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
          const double v = coeff_dot(*touch[i].second, waw[j]);
          schur(touch[i].first, touch[j].first) += v;
          if (touch[i].first != touch[j].first) schur(touch[j].first, touch[i].first) += v;
        }
      }
    }

    Eigen::LDLT<RealMatrix> ldlt(schur);
    if (ldlt.info() != Eigen::Success) {
      const double ridge = 1e-12 * (1.0 + schur.diagonal().cwiseAbs().maxCoeff());
      ldlt.compute(schur + ridge * RealMatrix::Identity(m, m));
      if (ldlt.info() != Eigen::Success) throw SolverError("solve_sdp: Schur factorization failed");
    }

    // The Schur system turns severely ill-conditioned when mu is small;
    // mixed-precision iterative refinement keeps the directions accurate
    // enough to preserve primal feasibility through the endgame. If
    // refinement stalls, refactor in long double for this iteration.
    using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using LongVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    LongMatrix schur_l = schur.cast<long double>();
    std::optional<Eigen::LDLT<LongMatrix>> ldlt_long;
    auto refined_solve = [&](const RealVector& h) {
      RealVector dy = ldlt.solve(h);
      const LongVector h_l = h.cast<long double>();
      const long double htol =
          1e-15L * (1.0L + h_l.cwiseAbs().maxCoeff()) * (1.0L + schur_l.cwiseAbs().maxCoeff());
      for (int pass = 0; pass < 4; ++pass) {
        LongVector res_l = h_l - schur_l * dy.cast<long double>();
        if (res_l.cwiseAbs().maxCoeff() <= htol) return dy;
        dy += ldlt.solve(res_l.cast<double>().eval());
      }
      LongVector res_l = h_l - schur_l * dy.cast<long double>();
      if (res_l.cwiseAbs().maxCoeff() > 1e4L * htol) {
        if (!ldlt_long) ldlt_long.emplace(schur_l);
        LongVector dy_l = ldlt_long->solve(h_l);
        for (int pass = 0; pass < 2; ++pass)
          dy_l += ldlt_long->solve((h_l - schur_l * dy_l).eval());
        dy = dy_l.cast<double>();
      }
      return dy;
    };

    auto solve_direction = [&](RealVector& dy) {
      RealVector h = rp;
      for (int k = 0; k < nb; ++k) {
        const Matrix tmp = wrdw[k] - rc[k];
        for (const auto& [ci, coeff] : in.touching[k]) h(ci) += coeff_dot(*coeff, tmp);
      }
      dy = refined_solve(h);
      for (int k = 0; k < nb; ++k) dz[k] = rd[k];
      for (int i = 0; i < m; ++i)
        for (const Coeff& c : in.rows[i]) coeff_axpy(dz[c.block], c, -dy(i));
      for (int k = 0; k < nb; ++k) {
        dz[k] = hermitize(dz[k]);
        dx[k] = hermitize(rc[k] - w[k] * dz[k] * w[k]);
      }
      if (have_gram) {
        RealVector res = rp;
        for (int k = 0; k < nb; ++k)
          for (const auto& [ci, coeff] : in.touching[k]) res(ci) -= coeff_dot(*coeff, dx[k]);
        const RealVector lambda = gram_ldlt.solve(res);
        for (int i = 0; i < m; ++i)
          for (const Coeff& c : in.rows[i]) coeff_axpy(dx[c.block], c, lambda(i));
        for (int k = 0; k < nb; ++k) dx[k] = hermitize(dx[k]);
      }
    };

    // predictor (sigma = 0)
    for (int k = 0; k < nb; ++k) rc[k] = -x[k];
    RealVector dy_aff;
    solve_direction(dy_aff);
    double ap = 1.0, ad = 1.0;
    for (int k = 0; k < nb; ++k) {
      ap = std::min(ap, max_step(x[k], dx[k]));
      ad = std::min(ad, max_step(z[k], dz[k]));
    }
    double mu_aff = 0.0;
    for (int k = 0; k < nb; ++k)
      mu_aff += dot_herm(x[k] + ap * dx[k], z[k] + ad * dz[k]);
    mu_aff = std::max(mu_aff / total_dim, 0.0);
    double sigma = std::pow(mu_aff / std::max(mu, 1e-300), 3.0);
    sigma = std::clamp(sigma, 1e-10, 1.0);

    // corrector with adaptive centering
    for (int k = 0; k < nb; ++k) rc[k] = sigma * mu * zinv[k] - x[k];
    RealVector dy;
    solve_direction(dy);
    ap = 1.0;
    ad = 1.0;
    for (int k = 0; k < nb; ++k) {
      ap = std::min(ap, max_step(x[k], dx[k]));
      ad = std::min(ad, max_step(z[k], dz[k]));
    }
    ap = std::min(1.0, 0.98 * ap);
    ad = std::min(1.0, 0.98 * ad);

    if (ap < 1e-10 && ad < 1e-10) {
      restore_best();
      break;
    }

    for (int k = 0; k < nb; ++k) {
      x[k] = hermitize(x[k] + ap * dx[k]);
      z[k] = hermitize(z[k] + ad * dz[k]);
    }
    y += ad * dy;

    bool bad = !y.allFinite();
    for (int k = 0; k < nb && !bad; ++k) bad = !x[k].allFinite() || !z[k].allFinite();
    if (bad) {
      restore_best();
      break;
    }
  }

  finalize(SolveStatus::IterLimit, options.max_iter);
  return sol;
}

namespace {

void validate_psd_input(const Matrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0)
    throw InputError("solve_cmax_pair: matrix must be square");
  if (rho.rows() > kDimensionCap) throw InputError("solve_cmax_pair: dimension exceeds cap");
  const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
  if (linalg::hermiticity_residual(rho) > 1e-8 * scale)
    throw InputError("solve_cmax_pair: matrix not Hermitian");
  const linalg::EigResult e = hermitian_eig(hermitize(rho), 1e-6);
  if (e.values(0) < -1e-8 * std::max(1.0, e.values(e.values.size() - 1)))
    throw InputError("solve_cmax_pair: matrix not positive semidefinite");
}

}  // namespace

CmaxCertificate solve_cmax_pair(const Matrix& rho_like, double tol) {
  validate_psd_input(rho_like);
  const Matrix rho = hermitize(rho_like);
  const int d = static_cast<int>(rho.rows());

  SdpProblem p;
  const int tau = p.add_block(d);
  p.maximize = true;
  p.set_objective(tau, rho);
  for (int i = 0; i < d; ++i) {
    Matrix e = Matrix::Zero(d, d);
    e(i, i) = 1.0;
    p.add_constraint(tau, std::move(e), Sense::Eq, 1.0);
  }

  SolveOptions opt;
  opt.tol_gap = tol;
  opt.tol_feas = tol;
  const SdpSolution sol = solve_sdp(p, opt);
  if (sol.status != SolveStatus::Optimal)
    throw SolverError("solve_cmax_pair: solver did not reach optimality");

  CmaxCertificate cert;
  cert.tau = sol.primal[0];
  cert.s = RealVector(d);
  for (int i = 0; i < d; ++i) cert.s(i) = -sol.dual[i];
  cert.value = cert.s.sum();
  cert.gap = std::abs(cert.value - dot_herm(rho, cert.tau));
  return cert;
}

CmaxCertificate solve_cmax_pair(const linalg::DensityMatrix& rho, double tol) {
  return solve_cmax_pair(rho.mat(), tol);
}

RealVector strictly_feasible_start(const linalg::DensityMatrix& rho) {
  const linalg::EigResult e = hermitian_eig(rho.mat());
  const double lmax = e.values(e.values.size() - 1);
  return RealVector::Constant(rho.dim(), 2.0 * lmax);
}

}  // namespace cohcert::sdp
