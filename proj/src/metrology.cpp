#include "graphmetro/metrology.hpp"

#include <algorithm>
#include <cmath>

#include "graphmetro/errors.hpp"

namespace graphmetro {
namespace {

void check_generators(const DensityMatrix& rho0, const std::vector<ComplexMatrix>& mats) {
  if (mats.empty()) throw ValidationError("no generators supplied");
  for (const auto& m : mats) {
    if (m.rows() != rho0.dim() || m.cols() != rho0.dim()) {
      throw ValidationError("generator dimension does not match the state");
    }
  }
}

double max_commutator_expectation(const ComplexMatrix& cov) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < cov.rows(); ++j)
    for (Eigen::Index k = j + 1; k < cov.cols(); ++k)
      worst = std::max(worst, 2.0 * std::abs(cov(j, k).imag()));
  return worst;
}

QfimResult from_covariance(const ComplexMatrix& cov) {
  RealMatrix f = 4.0 * cov.real();
  f = (f + f.transpose()).eval() / 2.0;
  return analyze_fisher(std::move(f), max_commutator_expectation(cov));
}

double variance(const ComplexVector& psi, const ComplexMatrix& h) {
  const ComplexVector hpsi = h * psi;
  const double mean = psi.dot(hpsi).real();
  return hpsi.squaredNorm() - mean * mean;
}

}  // namespace

QfimResult analyze_fisher(RealMatrix f, double attainability) {
  QfimResult r;
  r.attainability = attainability;
  const Eigen::Index d = f.rows();
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(f);
  const RealVector& lam = eig.eigenvalues();
  const double largest = lam.cwiseAbs().maxCoeff();
  const double tol = 1e-10 * largest;
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (largest > 0.0 && std::abs(lam(i)) > tol) {
      ++r.rank;
    } else {
      null_cols.push_back(i);
    }
  }
  r.invertible = r.rank == d;
  r.null_space.resize(d, static_cast<Eigen::Index>(null_cols.size()));
  for (std::size_t c = 0; c < null_cols.size(); ++c)
    r.null_space.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(null_cols[c]);
  if (r.invertible) r.crb_trace = lam.cwiseInverse().sum();
  r.matrix = std::move(f);
  return r;
}

QfimResult qfim(const DensityMatrix& rho0, const ParamGenerators& gens, kernels::Backend backend) {
  check_generators(rho0, gens.matrices);
  const ComplexVector psi = rho0.pure_state();
  return from_covariance(kernels::generator_covariance(psi, gens.matrices, backend));
}

QfimResult qfim_limit(const DensityMatrix& rho0, const OperatorSet& ops) {
  check_generators(rho0, ops.operators);
  const ComplexVector psi = rho0.pure_state();
  return from_covariance(kernels::generator_covariance(psi, ops.operators));
}

QfimResult qfim(const DensityMatrix& rho0, const DynamicsSpec& spec, kernels::Backend backend) {
  return qfim(rho0, param_generators(spec), backend);
}

std::vector<QfimResult> qfim_sweep(const DensityMatrix& rho0, const OperatorSet& ops,
                                   std::span<const RealVector> thetas, kernels::Backend backend) {
  std::vector<QfimResult> out(thetas.size());
  kernels::for_each_index(
      thetas.size(),
      [&](std::size_t i) {
        const DynamicsSpec spec = make_spec(ops, thetas[i]);
        out[i] = qfim(rho0, param_generators_exact(spec), kernels::Backend::kSerial);
      },
      backend);
  return out;
}

double qfi_single(const DensityMatrix& rho0, const ComplexMatrix& h) {
  check_generators(rho0, {h});
  return std::max(0.0, 4.0 * variance(rho0.pure_state(), h));
}

RealMatrix qfim_neighborhood_rule(const Graph& g, Axis a) {
  if (!g.no_isolated()) throw DomainError("neighbourhood rules assume no isolated vertices");
  const int n = g.size();
  RealMatrix f = RealMatrix::Identity(n, n);
  if (a == Axis::kZ) return f;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const std::uint64_t nj = g.neighborhood_mask(j);
      const std::uint64_t nk = g.neighborhood_mask(k);
      const std::uint64_t pair = (std::uint64_t{1} << j) | (std::uint64_t{1} << k);
      const bool hit = a == Axis::kX ? nj == nk : (nj ^ nk) == pair;
      f(j, k) = f(k, j) = hit ? 1.0 : 0.0;
    }
  }
  return f;
}

RealMatrix qfim_grouped(const Graph& g, const std::vector<std::vector<int>>& partition, Axis a) {
  if (partition.empty()) throw ValidationError("partition has no blocks");
  std::vector<int> owner(static_cast<std::size_t>(g.size()), -1);
  for (std::size_t b = 0; b < partition.size(); ++b) {
    if (partition[b].empty()) throw ValidationError("partition block is empty");
    for (int v : partition[b]) {
      if (v < 0 || v >= g.size()) throw ValidationError("partition vertex out of range");
      if (owner[static_cast<std::size_t>(v)] != -1) {
        throw ValidationError("vertex " + std::to_string(v) + " appears in two blocks");
      }
      owner[static_cast<std::size_t>(v)] = static_cast<int>(b);
    }
  }
  const RealMatrix f = qfim_neighborhood_rule(g, a);
  const auto d = static_cast<Eigen::Index>(partition.size());
  RealMatrix out = RealMatrix::Zero(d, d);
  for (Eigen::Index m = 0; m < d; ++m)
    for (Eigen::Index l = 0; l < d; ++l)
      for (int j : partition[static_cast<std::size_t>(m)])
        for (int k : partition[static_cast<std::size_t>(l)]) out(m, l) += f(j, k);
  return out;
}

double f_ave(const DensityMatrix& rho0, const OperatorSet& ops) {
  if (ops.size() == 0) throw ValidationError("F_ave needs at least one operator");
  check_generators(rho0, ops.operators);
  const ComplexVector psi = rho0.pure_state();
  double total = 0.0;
  for (const auto& h : ops.operators) total += variance(psi, h);
  return 4.0 * total / static_cast<double>(ops.size());
}

double crb(const QfimResult& result, double mu) {
  if (!(mu > 0.0)) throw ValidationError("repetition count must be positive");
  if (!result.invertible) throw SingularQfimError(result.rank, result.null_space);
  return *result.crb_trace / mu;
}

double attainability(const DensityMatrix& rho0, const ParamGenerators& gens) {
  return qfim(rho0, gens).attainability;
}

std::vector<ComplexMatrix> sld_pure(const DensityMatrix& rho_theta,
                                    const std::vector<ComplexMatrix>& drho) {
  if (!rho_theta.is_pure(1e-8)) throw DomainError("SLD shortcut L = 2 d rho needs a pure state");
  std::vector<ComplexMatrix> out;
  out.reserve(drho.size());
  for (const auto& d : drho) {
    if (d.rows() != rho_theta.dim() || d.cols() != rho_theta.dim()) {
      throw ValidationError("derivative dimension does not match the state");
    }
    out.push_back(2.0 * d);
  }
  return out;
}

RealMatrix qfim_from_sld(const DensityMatrix& rho_theta, const std::vector<ComplexMatrix>& slds) {
  const auto d = static_cast<Eigen::Index>(slds.size());
  RealMatrix f(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k)
      f(j, k) = (rho_theta.matrix() * slds[static_cast<std::size_t>(j)] *
                 slds[static_cast<std::size_t>(k)])
                    .trace()
                    .real();
  return (f + f.transpose()) / 2.0;
}

RealVector field_theta(double b, double polar, double azimuth) {
  RealVector t(3);
  t << b * std::sin(polar) * std::cos(azimuth), b * std::sin(polar) * std::sin(azimuth),
      b * std::cos(polar);
  return t;
}

RealMatrix perturbative_field_qfim(double b, double polar, double azimuth) {
  const double st = std::sin(polar), ct = std::cos(polar);
  const double sp = std::sin(azimuth), cp = std::cos(azimuth);
  const double b2 = b * b;
  RealMatrix f(3, 3);
  f(0, 0) = 3.0 + 0.75 * b2 * (3.0 * ct * ct + st * st * sp * sp);
  f(1, 1) = 9.0 + 0.75 * b2 * (ct * ct + cp * cp * st * st);
  f(2, 2) = 3.0 + 0.75 * b2 * (2.0 + std::cos(2.0 * azimuth)) * st * st;
  f(0, 1) = f(1, 0) = -0.75 * b * (4.0 * ct + b * cp * st * st * sp);
  f(0, 2) = f(2, 0) = 2.25 * b2 * ct * cp * st;
  f(1, 2) = f(2, 1) = -0.75 * b * st * (-4.0 * cp + b * ct * sp);
  return f;
}

}  // namespace graphmetro
