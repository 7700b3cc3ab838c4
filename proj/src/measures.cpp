#include "cohcert/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>

namespace cohcert::measures {

using linalg::dephase;
using linalg::EigResult;
using linalg::hermitian_eig;
using linalg::hermitize;
using linalg::Rng;
using linalg::support_projector;
using linalg::von_neumann_entropy;

namespace {

constexpr double kPurityTol = 1e-12;

std::optional<Vector> as_pure(const DensityMatrix& rho) {
  const double purity = (rho.mat() * rho.mat()).real().trace();
  if (std::abs(purity - 1.0) > kPurityTol) return std::nullopt;
  const EigResult e = hermitian_eig(rho.mat());
  Vector v = e.vectors.col(rho.dim() - 1);
  return v / v.norm();
}

}  // namespace

sdp::CmaxCertificate c_max_certificate(const DensityMatrix& rho, double tol) {
  return sdp::solve_cmax_pair(rho, tol);
}

double c_max(const DensityMatrix& rho, double tol) {
  return std::log2(std::max(sdp::solve_cmax_pair(rho, tol).value, 1e-300));
}

double roc(const DensityMatrix& rho, double tol) {
  return sdp::solve_cmax_pair(rho, tol).value - 1.0;
}

double c_min(const DensityMatrix& rho, double rank_tol) {
  const Matrix pi = support_projector(rho, rank_tol);
  double top = 0.0;
  for (int i = 0; i < rho.dim(); ++i) top = std::max(top, pi(i, i).real());
  top = std::clamp(top, 1e-300, 1.0);
  return -std::log2(top);
}

double c_r(const DensityMatrix& rho) {
  const double s_diag = von_neumann_entropy(DensityMatrix::trusted(dephase(rho.mat())));
  return std::max(0.0, s_diag - von_neumann_entropy(rho));
}

double c_l1(const DensityMatrix& rho) {
  double acc = 0.0;
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j)
      if (i != j) acc += std::abs(rho.mat()(i, j));
  return acc;
}

PureClosedForms pure_closed_forms(const PureState& psi) {
  PureClosedForms out;
  double amp_sum = 0.0, max_p = 0.0;
  for (int i = 0; i < psi.dim(); ++i) {
    const double a = std::abs(psi.amplitudes()(i));
    amp_sum += a;
    max_p = std::max(max_p, a * a);
  }
  out.c_max = 2.0 * std::log2(std::max(amp_sum, 1e-300));
  out.geometric_overlap = std::min(max_p, 1.0);
  out.c_min = -std::log2(std::max(out.geometric_overlap, 1e-300));
  return out;
}

std::pair<double, double> c_min_overlap_bound(const DensityMatrix& rho, double rank_tol) {
  const double overlap = std::pow(2.0, -c_min(rho, rank_tol));
  return {overlap, 1.0 - overlap};
}

CoherenceReport coherence_report(const DensityMatrix& rho, const MeasureOptions& opt) {
  CoherenceReport rep;
  rep.rank_tol = opt.rank_tol;
  rep.c_r = c_r(rho);
  rep.c_l1 = c_l1(rho);
  rep.c_min = c_min(rho, opt.rank_tol);

  const std::optional<Vector> psi = opt.prefer_closed_forms ? as_pure(rho) : std::nullopt;
  if (psi) {
    // analytic optimizers: tau = u u^dag with u_i the phase of psi_i,
    // sigma_i proportional to |psi_i|
    rep.pure_state_closed_form_used = true;
    const int d = rho.dim();
    Vector u(d);
    RealVector s(d);
    double amp_sum = 0.0;
    for (int i = 0; i < d; ++i) amp_sum += std::abs((*psi)(i));
    for (int i = 0; i < d; ++i) {
      const double a = std::abs((*psi)(i));
      u(i) = (a > 1e-15) ? (*psi)(i) / a : Complex(1, 0);
      s(i) = a * amp_sum;
    }
    rep.tau_witness = u * u.adjoint();
    rep.sigma_witness = s / std::max(s.sum(), 1e-300);
    rep.c_max = 2.0 * std::log2(std::max(amp_sum, 1e-300));
    rep.roc = amp_sum * amp_sum - 1.0;
    rep.sdp_gap = 0.0;
  } else {
    const sdp::CmaxCertificate cert = sdp::solve_cmax_pair(rho, opt.sdp_tol);
    rep.tau_witness = cert.tau;
    rep.sigma_witness = cert.s / std::max(cert.s.sum(), 1e-300);
    rep.c_max = std::log2(std::max(cert.value, 1e-300));
    rep.roc = cert.value - 1.0;
    rep.sdp_gap = cert.gap;
  }
  return rep;
}

SmoothResult smooth_c_max(const DensityMatrix& rho, double epsilon, double tol) {
  if (epsilon < 0.0) throw InputError("smooth_c_max: epsilon must be >= 0");
  SmoothResult out;
  out.epsilon = epsilon;
  out.witness_is_state = true;
  if (epsilon == 0.0) {
    const sdp::CmaxCertificate cert = sdp::solve_cmax_pair(rho, tol);
    out.value = std::max(0.0, std::log2(std::max(cert.value, 1e-300)));
    out.witness = rho.mat();
    out.gap = cert.gap;
    return out;
  }

  const int d = rho.dim();
  sdp::SdpProblem p;
  std::vector<int> s(d);
  for (int i = 0; i < d; ++i) s[i] = p.add_block(1);
  const int rb = p.add_block(d);  // smoothed state rho'
  const int pb = p.add_block(d);  // positive part of rho' - rho
  const int qb = p.add_block(d);  // negative part
  const int tb = p.add_block(d);  // diag(s) - rho'
  for (int i = 0; i < d; ++i) p.set_objective(s[i], Matrix::Constant(1, 1, 1.0));

  const Matrix minus_one = Matrix::Constant(1, 1, -1.0);
  for (const Matrix& h : sdp::hermitian_basis(d)) {
    // T - diag(s) + rho' = 0
    std::vector<std::pair<int, Matrix>> tie = {{tb, h}, {rb, h}};
    if (h.real().trace() != 0.0) {
      for (int i = 0; i < d; ++i)
        if (h(i, i).real() != 0.0) tie.push_back({s[i], minus_one});
    }
    p.add_constraint(tie, sdp::Sense::Eq, 0.0);
    // rho' - P + Q = rho
    const double rhs = (h.conjugate().cwiseProduct(rho.mat())).sum().real();
    p.add_constraint({{rb, h}, {pb, Matrix(-h)}, {qb, h}}, sdp::Sense::Eq, rhs);
  }
  p.add_constraint({{pb, Matrix::Identity(d, d)}, {qb, Matrix::Identity(d, d)}},
                   sdp::Sense::Le, epsilon);
  p.add_constraint(rb, Matrix::Identity(d, d), sdp::Sense::Le, rho.mat().real().trace());

  sdp::SolveOptions opt;
  opt.tol_gap = tol;
  opt.tol_feas = tol;
  const sdp::SdpSolution sol = solve_sdp(p, opt);
  if (sol.status != sdp::SolveStatus::Optimal)
    throw SolverError("smooth_c_max: solver did not reach optimality");
  out.value = std::max(0.0, std::log2(std::max(sol.primal_value, 1e-300)));
  out.witness = hermitize(sol.primal[d]);  // rho' block
  out.gap = sol.gap;
  return out;
}

SmoothResult smooth_c_min(const DensityMatrix& rho, double epsilon, double tol) {
  if (epsilon < 0.0 || epsilon >= 1.0)
    throw InputError("smooth_c_min: epsilon must be in [0, 1)");
  SmoothResult out;
  out.epsilon = epsilon;
  out.witness_is_state = false;
  if (epsilon == 0.0) {
    // Tr(A rho) = 1 with 0 <= A <= I forces A to act as the identity on the
    // support; any mass off the support only raises the diagonal
    out.value = c_min(rho);
    out.witness = support_projector(rho);
    out.gap = 0.0;
    return out;
  }

  const int d = rho.dim();
  sdp::SdpProblem p;
  const int ab = p.add_block(d, sdp::BlockKind::Box01);
  const int tb = p.add_block(1);
  p.set_objective(tb, Matrix::Constant(1, 1, 1.0));
  const Matrix minus_one = Matrix::Constant(1, 1, -1.0);
  for (int i = 0; i < d; ++i) {
    Matrix e = Matrix::Zero(d, d);
    e(i, i) = 1.0;
    p.add_constraint({{ab, std::move(e)}, {tb, minus_one}}, sdp::Sense::Le, 0.0);
  }
  p.add_constraint(ab, rho.mat(), sdp::Sense::Ge, 1.0 - epsilon);

  sdp::SolveOptions opt;
  opt.tol_gap = tol;
  opt.tol_feas = tol;
  const sdp::SdpSolution sol = solve_sdp(p, opt);
  if (sol.status != sdp::SolveStatus::Optimal)
    throw SolverError("smooth_c_min: solver did not reach optimality");
  const double tstar = std::clamp(sol.primal_value, 1e-300, 1.0);
  out.value = -std::log2(tstar);
  out.witness = hermitize(sol.primal[0]);
  out.gap = sol.gap;
  return out;
}

ConvexRoofResult convex_roof_cmax_upper(const DensityMatrix& rho, int restarts,
                                        std::uint64_t seed) {
  if (restarts < 1) throw InputError("convex_roof_cmax_upper: restarts must be >= 1");
  const int d = rho.dim();
  const EigResult e = hermitian_eig(rho.mat());

  std::vector<double> lambda;
  std::vector<Vector> evec;
  for (int i = d - 1; i >= 0; --i) {
    if (e.values(i) > 1e-12) {
      lambda.push_back(e.values(i));
      evec.push_back(e.vectors.col(i));
    }
  }
  const int r = static_cast<int>(lambda.size());

  // columns of B are sqrt(lambda_j)|psi_j>; every ensemble realizing rho is
  // conj(V) B^T for an isometry V, rows giving the unnormalized members
  Matrix b(d, r);
  for (int j = 0; j < r; ++j) b.col(j) = std::sqrt(lambda[j]) * evec[j];

  ConvexRoofResult out;
  out.restarts_used = restarts;

  auto objective = [&](const Matrix& members) {
    double acc = 0.0;
    for (int k = 0; k < members.rows(); ++k) {
      const double q = members.row(k).squaredNorm();
      if (q < 1e-15) continue;
      double l1 = 0.0;
      for (int i = 0; i < d; ++i) l1 += std::abs(members(k, i));
      acc += q * std::log2(std::max(l1 * l1 / q, 1e-300));
    }
    return acc;
  };

  double best = std::numeric_limits<double>::infinity();
  Matrix best_members;

  Rng rng(seed);
  for (int restart = 0; restart < restarts; ++restart) {
    const int kk =
        (restart == 0) ? r : std::min(d * d, r + 1 + static_cast<int>(rng.below(2 * r)));
    Matrix members;
    if (restart == 0) {
      members = b.transpose();
    } else {
      Matrix g(kk, r);
      for (int i = 0; i < kk; ++i)
        for (int j = 0; j < r; ++j) g(i, j) = rng.complex_gaussian();
      Eigen::HouseholderQR<Matrix> qr(g);
      const Matrix v = qr.householderQ() * Matrix::Identity(kk, r);
      members = v.conjugate() * b.transpose();
    }

    double cur = objective(members);
    double scale = 1.0;
    const int rows = static_cast<int>(members.rows());
    for (int sweep = 0; sweep < 60; ++sweep) {
      bool improved = false;
      for (int a = 0; a < rows; ++a) {
        for (int bi = a + 1; bi < rows; ++bi) {
          // two-row unitary rotation preserves sum_k |row_k><row_k| = rho
          const double th = scale * std::numbers::pi * (rng.uniform() - 0.5);
          const double ph = 2.0 * std::numbers::pi * rng.uniform();
          const Complex c = std::cos(th);
          const Complex s_rot = std::sin(th) * std::exp(Complex(0, ph));
          const Vector row_a = members.row(a).transpose();
          const Vector row_b = members.row(bi).transpose();
          members.row(a) = (c * row_a + s_rot * row_b).transpose();
          members.row(bi) = (-std::conj(s_rot) * row_a + c * row_b).transpose();
          const double cand = objective(members);
          if (cand < cur - 1e-13) {
            cur = cand;
            improved = true;
          } else {
            members.row(a) = row_a.transpose();
            members.row(bi) = row_b.transpose();
          }
        }
      }
      if (!improved) scale *= 0.7;
      if (scale < 1e-4) break;
    }
    if (cur < best) {
      best = cur;
      best_members = members;
    }
  }

  out.value = std::max(0.0, best);
  for (int k = 0; k < best_members.rows(); ++k) {
    const double q = best_members.row(k).squaredNorm();
    if (q < 1e-12) continue;
    out.ensemble.emplace_back(q, best_members.row(k).transpose() / std::sqrt(q));
  }
  return out;
}

namespace {

double pure_cmin_bits(const Vector& amp) {
  double mp = 0.0;
  for (int i = 0; i < amp.size(); ++i) mp = std::max(mp, std::norm(amp(i)));
  return -std::log2(std::clamp(mp, 1e-300, 1.0));
}

}  // namespace

CminViolation cmin_io_violation_demo(std::uint64_t seed, int trials, double margin) {
  if (trials < 1) throw InputError("cmin_io_violation_demo: trials must be >= 1");
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(2));
    RealVector probs(d);
    double tot = 0.0;
    for (int i = 0; i < d; ++i) {
      const double g = rng.gaussian();
      probs(i) = 0.15 + g * g;
      tot += probs(i);
    }
    probs /= tot;
    Vector amp(d);
    for (int i = 0; i < d; ++i)
      amp(i) =
          std::sqrt(probs(i)) * std::exp(Complex(0, 2.0 * std::numbers::pi * rng.uniform()));
    const PureState psi(amp);

    // diagonal Kraus pair; odd trials steer branch one toward the uniform
    // profile, even trials sample freely
    RealVector c2(d);
    if (trial % 2 == 1) {
      double pmin = 1.0;
      for (int i = 0; i < d; ++i) pmin = std::min(pmin, probs(i));
      const double u = 0.35 + 0.6 * rng.uniform();
      for (int i = 0; i < d; ++i) c2(i) = std::clamp(u * pmin / probs(i), 0.0, 1.0);
    } else {
      for (int i = 0; i < d; ++i) c2(i) = rng.uniform();
    }
    Matrix k1 = Matrix::Zero(d, d), k2 = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      k1(i, i) = std::sqrt(c2(i));
      k2(i, i) =
          std::sqrt(1.0 - c2(i)) * std::exp(Complex(0, 2.0 * std::numbers::pi * rng.uniform()));
    }

    const double before = pure_cmin_bits(amp);
    std::vector<double> ps(2), cb(2);
    double avg = 0.0;
    bool degenerate = false;
    const Matrix ks[2] = {k1, k2};
    for (int br = 0; br < 2; ++br) {
      const Vector out_amp = ks[br] * amp;
      const double p = out_amp.squaredNorm();
      if (p < 1e-9) {
        degenerate = true;
        break;
      }
      ps[br] = p;
      cb[br] = pure_cmin_bits(out_amp / std::sqrt(p));
      avg += p * cb[br];
    }
    if (degenerate) continue;

    if (avg > before + margin) {
      channels::KrausChannel ch(d, d, {k1, k2});
      if (!channels::is_io(ch).ok) continue;
      // re-verify through the density-matrix path before returning
      double avg_check = 0.0;
      for (int br = 0; br < 2; ++br) {
        const Matrix outm = ks[br] * psi.to_density().mat() * ks[br].adjoint();
        const double p = outm.real().trace();
        avg_check += p * c_min(DensityMatrix::trusted(outm / p));
      }
      const double before_check = c_min(psi.to_density());
      if (avg_check <= before_check + margin) continue;
      CminViolation v{psi, std::move(ch), ps, cb, avg, before, avg - before, seed, trial + 1};
      return v;
    }
  }
  throw SearchError("cmin_io_violation_demo: no violation found within trial budget");
}

bool quasi_convexity_check(const std::vector<DensityMatrix>& states,
                           const std::vector<double>& weights, double tol) {
  if (states.empty() || states.size() != weights.size())
    throw InputError("quasi_convexity_check: states/weights mismatch");
  double wsum = 0.0;
  for (double w : weights) {
    if (w < -1e-12) throw InputError("quasi_convexity_check: negative weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-9)
    throw InputError("quasi_convexity_check: weights must sum to one");
  const int d = states[0].dim();
  Matrix mix = Matrix::Zero(d, d);
  double worst = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != d) throw InputError("quasi_convexity_check: dimension mismatch");
    mix += weights[i] * states[i].mat();
    worst = std::max(worst, c_max(states[i]));
  }
  const double mixed = c_max(DensityMatrix::trusted(mix));
  return mixed <= worst + tol;
}

}  // namespace cohcert::measures
