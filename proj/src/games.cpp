#include "cohcert/games.hpp"

#include "cohcert/measures.hpp"
#include "cohcert/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace cohcert::games {

using linalg::hermitian_eig;
using linalg::hermitize;
using linalg::Rng;

Instrument::Instrument(int dim_in, int dim_out, std::vector<std::vector<Matrix>> branch_kraus,
                       double tol)
    : dim_in_(dim_in), dim_out_(dim_out), branch_kraus_(std::move(branch_kraus)) {
  if (branch_kraus_.empty()) throw InputError("Instrument: no subchannels");
  Matrix acc = Matrix::Zero(dim_in_, dim_in_);
  for (const auto& branch : branch_kraus_) {
    if (branch.empty()) throw InputError("Instrument: empty subchannel");
    Matrix part = Matrix::Zero(dim_in_, dim_in_);
    for (const Matrix& k : branch) {
      if (k.rows() != dim_out_ || k.cols() != dim_in_)
        throw InputError("Instrument: Kraus dimension mismatch");
      part += k.adjoint() * k;
    }
    const linalg::EigResult e = hermitian_eig(hermitize(part), 1e-6);
    if (e.values(e.values.size() - 1) > 1.0 + tol)
      throw InputError("Instrument: subchannel is trace increasing");
    acc += part;
  }
  if ((acc - Matrix::Identity(dim_in_, dim_in_)).cwiseAbs().maxCoeff() > tol)
    throw InputError("Instrument: subchannels do not sum to a channel");
}

KrausChannel Instrument::total() const {
  std::vector<Matrix> all;
  for (const auto& branch : branch_kraus_)
    for (const Matrix& k : branch) all.push_back(k);
  return KrausChannel(dim_in_, dim_out_, std::move(all), 1e-6);
}

Matrix Instrument::branch_output(int a, const Matrix& rho) const {
  const auto& branch = branch_kraus_.at(a);
  Matrix out = Matrix::Zero(dim_out_, dim_out_);
  for (const Matrix& k : branch) out += k * rho * k.adjoint();
  return out;
}

Povm::Povm(std::vector<Matrix> effects, double tol) : effects_(std::move(effects)) {
  if (effects_.empty()) throw InputError("Povm: no effects");
  const int d = static_cast<int>(effects_[0].rows());
  Matrix acc = Matrix::Zero(d, d);
  for (const Matrix& m : effects_) {
    if (m.rows() != d || m.cols() != d) throw InputError("Povm: effect dimension mismatch");
    const linalg::EigResult e = hermitian_eig(hermitize(m), 1e-6);
    if (e.values(0) < -tol) throw InputError("Povm: effect is not positive semidefinite");
    acc += m;
  }
  if ((acc - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
    throw InputError("Povm: effects do not sum to the identity");
}

double Povm::sum_residual() const {
  const int d = dim();
  Matrix acc = Matrix::Zero(d, d);
  for (const Matrix& m : effects_) acc += m;
  return (acc - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

double Povm::min_eig() const {
  double lo = 0.0;
  for (const Matrix& m : effects_) {
    const linalg::EigResult e = hermitian_eig(hermitize(m), 1e-6);
    lo = std::min(lo, e.values(0));
  }
  return lo;
}

namespace {

std::vector<double> fourier_phases(int d, int k) {
  std::vector<double> ph(d);
  for (int j = 0; j < d; ++j)
    ph[j] = 2.0 * std::numbers::pi * static_cast<double>(j) * k / d;
  return ph;
}

}  // namespace

Instrument build_cmax_instrument(const DensityMatrix& rho, double tol) {
  const int d = rho.dim();
  const sdp::CmaxCertificate cert = sdp::solve_cmax_pair(rho, tol);
  const KrausChannel opt = channels::optimal_overlap_channel(rho, cert);
  const double invsqrt = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<std::vector<Matrix>> branches(d);
  for (int k = 1; k <= d; ++k) {
    const Matrix u = channels::diagonal_unitary(fourier_phases(d, k));
    for (const Matrix& m : opt.kraus()) branches[k - 1].push_back(invsqrt * (u * m));
  }
  return Instrument(d, d, std::move(branches));
}

Povm canonical_povm(int d) {
  if (d < 2) throw InputError("canonical_povm: dimension must be >= 2");
  const Vector psi_plus = channels::maximally_coherent(d).amplitudes();
  std::vector<Matrix> effects(d);
  for (int k = 1; k <= d; ++k) {
    const Matrix u = channels::diagonal_unitary(fourier_phases(d, k));
    const Vector v = u * psi_plus;
    effects[k - 1] = v * v.adjoint();
  }
  return Povm(std::move(effects), 1e-10);
}

double p_succ_fixed(const Instrument& inst, const Povm& povm, const DensityMatrix& rho) {
  if (povm.size() != inst.branches())
    throw InputError("p_succ_fixed: POVM size does not match branch count");
  if (povm.dim() != inst.dim_out()) throw InputError("p_succ_fixed: dimension mismatch");
  double p = 0.0;
  for (int a = 0; a < inst.branches(); ++a) {
    p += (povm.effects()[a].conjugate().cwiseProduct(inst.branch_output(a, rho.mat())))
             .sum()
             .real();
  }
  return p;
}

std::pair<double, Povm> p_succ_opt(const Instrument& inst, const DensityMatrix& rho,
                                   double tol) {
  const int d = inst.dim_out();
  const int count = inst.branches();
  sdp::SdpProblem p;
  std::vector<int> blocks(count);
  for (int a = 0; a < count; ++a) {
    blocks[a] = p.add_block(d);
    p.set_objective(blocks[a], hermitize(inst.branch_output(a, rho.mat())));
  }
  p.maximize = true;
  for (const Matrix& h : sdp::hermitian_basis(d)) {
    std::vector<std::pair<int, Matrix>> terms;
    for (int a = 0; a < count; ++a) terms.push_back({blocks[a], h});
    p.add_constraint(terms, sdp::Sense::Eq, h.real().trace());
  }
  sdp::SolveOptions opt;
  opt.tol_gap = tol;
  opt.tol_feas = tol;
  const sdp::SdpSolution sol = solve_sdp(p, opt);
  if (sol.status != sdp::SolveStatus::Optimal)
    throw SolverError("p_succ_opt: solver did not reach optimality");
  std::vector<Matrix> effects;
  for (int a = 0; a < count; ++a) effects.push_back(hermitize(sol.primal[a]));
  return {sol.primal_value, Povm(std::move(effects), 1e-6)};
}

double p_succ_ico(const Instrument& inst, double tol) {
  const int d = inst.dim_in();
  double best = 0.0;
  for (int i = 0; i < d; ++i) {
    Matrix basis = Matrix::Zero(d, d);
    basis(i, i) = 1.0;
    best = std::max(best,
                    p_succ_opt(inst, DensityMatrix::trusted(std::move(basis)), tol).first);
  }
  return best;
}

GameResult advantage_ratio(const DensityMatrix& rho, double tol_ratio, int audit_instruments,
                           std::uint64_t audit_seed) {
  const int d = rho.dim();
  const sdp::CmaxCertificate cert = sdp::solve_cmax_pair(rho);
  const double two_pow = cert.value;

  const Instrument inst = build_cmax_instrument(rho);
  auto [p_opt, povm] = p_succ_opt(inst, rho);
  const double p_ico = games::p_succ_ico(inst);
  const double ratio = p_opt / std::max(p_ico, 1e-300);

  if (std::abs(ratio - two_pow) > tol_ratio) {
    std::ostringstream msg;
    msg << "advantage_ratio: ratio " << ratio << " differs from 2^c_max " << two_pow
        << " beyond tolerance " << tol_ratio;
    throw CertificationError(msg.str());
  }

  // upper-bound audit over random dephasing-covariant instruments with the
  // Kraus operators split round-robin into d branches
  Rng rng(audit_seed);
  for (int t = 0; t < audit_instruments; ++t) {
    const KrausChannel ch = channels::random_channel(d, d, channels::ChannelClass::Dio,
                                                     rng.fork());
    std::vector<std::vector<Matrix>> split(std::min<int>(d, ch.kraus().size()));
    for (std::size_t k = 0; k < ch.kraus().size(); ++k)
      split[k % split.size()].push_back(ch.kraus()[k]);
    const Instrument audit(d, d, std::move(split));
    const double p1 = p_succ_opt(audit, rho).first;
    const double p0 = games::p_succ_ico(audit);
    if (p1 > two_pow * p0 + 1e-6) {
      std::ostringstream msg;
      msg << "advantage_ratio: audit instrument exceeds the 2^c_max bound: " << p1 << " > "
          << two_pow << " * " << p0;
      throw CertificationError(msg.str());
    }
  }

  GameResult res{p_opt, p_ico, ratio, std::log2(std::max(two_pow, 1e-300)),
                 std::move(povm),   {},    cert.gap};
  for (int a = 0; a < inst.branches(); ++a)
    res.branch_probs.push_back(inst.branch_output(a, rho.mat()).real().trace());
  return res;
}

Instrument build_phase_instrument(int dim, const std::vector<double>& phases,
                                  const std::vector<double>& priors) {
  if (phases.empty() || phases.size() != priors.size())
    throw InputError("build_phase_instrument: phases/priors mismatch");
  double tot = 0.0;
  for (double p : priors) {
    if (p < -1e-12) throw InputError("build_phase_instrument: negative prior");
    tot += p;
  }
  if (std::abs(tot - 1.0) > 1e-9)
    throw InputError("build_phase_instrument: priors must sum to one");
  std::vector<std::vector<Matrix>> branches;
  for (std::size_t k = 0; k < phases.size(); ++k) {
    std::vector<double> ph(dim);
    for (int j = 0; j < dim; ++j) ph[j] = phases[k] * j;
    branches.push_back({std::sqrt(priors[k]) * channels::diagonal_unitary(ph)});
  }
  return Instrument(dim, dim, std::move(branches));
}

SimResult simulate_game(const Instrument& inst, const Povm& povm, const DensityMatrix& rho,
                        long trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("simulate_game: trials must be >= 1");
  if (povm.size() != inst.branches())
    throw InputError("simulate_game: POVM size does not match branch count");
  const int count = inst.branches();

  // exact branch and conditional outcome distributions
  std::vector<double> branch_p(count);
  std::vector<std::vector<double>> outcome_p(count, std::vector<double>(count));
  double norm = 0.0;
  for (int a = 0; a < count; ++a) {
    const Matrix out = inst.branch_output(a, rho.mat());
    branch_p[a] = std::max(out.real().trace(), 0.0);
    norm += branch_p[a];
    double cn = 0.0;
    for (int b = 0; b < count; ++b) {
      const double q =
          std::max((povm.effects()[b].conjugate().cwiseProduct(out)).sum().real(), 0.0);
      outcome_p[a][b] = q;
      cn += q;
    }
    if (cn > 0)
      for (int b = 0; b < count; ++b) outcome_p[a][b] /= cn;
  }
  for (int a = 0; a < count; ++a) branch_p[a] /= std::max(norm, 1e-300);

  Rng rng(seed);
  auto sample = [&rng](const std::vector<double>& pmf) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      acc += pmf[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(pmf.size()) - 1;
  };

  SimResult res;
  res.trials = trials;
  for (long t = 0; t < trials; ++t) {
    const int a = sample(branch_p);
    const int b = sample(outcome_p[a]);
    if (a == b) ++res.successes;
  }
  res.frequency = static_cast<double>(res.successes) / static_cast<double>(trials);
  res.p_exact = p_succ_fixed(inst, povm, rho);
  res.stderr_exact = std::sqrt(std::max(res.p_exact * (1.0 - res.p_exact), 0.0) /
                               static_cast<double>(trials));
  const double half = 1.959963984540054 *
                      std::sqrt(std::max(res.frequency * (1.0 - res.frequency), 0.0) /
                                static_cast<double>(trials));
  res.ci_low = std::max(0.0, res.frequency - half);
  res.ci_high = std::min(1.0, res.frequency + half);
  return res;
}

}  // namespace cohcert::games
