#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "graphmetro/dynamics.hpp"
#include "graphmetro/errors.hpp"
#include "graphmetro/graph.hpp"
#include "oracles.hpp"

using namespace graphmetro;

namespace {

const cplx kI{0.0, 1.0};

DynamicsSpec collective(int n, RealVector theta) {
  return make_spec(collective_set(n), std::move(theta));
}

RealVector random_theta(std::mt19937_64& rng, int d, double max_norm) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> radius(0.0, max_norm);
  RealVector t(d);
  for (int k = 0; k < d; ++k) t(k) = normal(rng);
  return t / t.norm() * radius(rng);
}

OperatorSet random_ops(std::mt19937_64& rng, int n, int d) {
  std::vector<ComplexMatrix> ops;
  std::vector<std::string> labels;
  for (int k = 0; k < d; ++k) {
    // Unit operator norm, so |theta| bounds the size of H as it does for Pauli-type generators.
    ComplexMatrix h = oracle::random_hermitian(rng, Eigen::Index{1} << n);
    h /= Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h).eigenvalues().cwiseAbs().maxCoeff();
    ops.push_back(h);
    labels.push_back("H" + std::to_string(k));
  }
  return make_operator_set(n, std::move(ops), std::move(labels));
}

double max_diff(const ParamGenerators& a, const std::vector<ComplexMatrix>& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j)
    worst = std::max(worst, oracle::max_abs(ComplexMatrix(a.matrices[j] - b[j])));
  return worst;
}

double max_diff(const ParamGenerators& a, const ParamGenerators& b) {
  return max_diff(a, b.matrices);
}

}  // namespace

TEST(Dynamics, HamiltonianAssembly) {
  EXPECT_EQ(assemble_hamiltonian(collective(2, RealVector::Zero(3))), ComplexMatrix::Zero(4, 4));
  const auto single =
      make_spec(make_operator_set(1, {oracle::site('X')}, {"x"}), RealVector::Ones(1));
  EXPECT_EQ(assemble_hamiltonian(single), oracle::site('X'));
  const double n1 = assemble_hamiltonian(collective(3, Eigen::Vector3d(0.1, 0.2, 0.3))).norm();
  const double n2 = assemble_hamiltonian(collective(3, Eigen::Vector3d(0.2, 0.4, 0.6))).norm();
  EXPECT_NEAR(n2, 2 * n1, 1e-12);
  EXPECT_THROW(collective(2, RealVector::Zero(2)), ValidationError);
}

TEST(Dynamics, LimitModeFillsZeros) {
  const auto spec = make_spec(collective_set(2), RealVector(), ThetaMode::kLimit);
  EXPECT_EQ(spec.theta, RealVector::Zero(3));
  EXPECT_EQ(assemble_hamiltonian(spec), ComplexMatrix::Zero(4, 4));
}

TEST(Dynamics, UnitaryExamples) {
  EXPECT_LT(oracle::max_abs(ComplexMatrix(unitary(ComplexMatrix::Zero(4, 4)) -
                                          ComplexMatrix::Identity(4, 4))),
            1e-15);
  const ComplexMatrix u = unitary(ComplexMatrix(std::numbers::pi / 2 * oracle::site('X')));
  EXPECT_LT(oracle::max_abs(ComplexMatrix(u + kI * oracle::site('X'))), 1e-15);
  ComplexMatrix nh = ComplexMatrix::Zero(2, 2);
  nh(0, 1) = 1.0;
  EXPECT_THROW(unitary(nh), DomainError);
}

TEST(Dynamics, UnitaryMatchesTaylorOracle) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 4; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const ComplexMatrix h = oracle::random_hermitian(rng, Eigen::Index{1} << n, 0.7);
      const ComplexMatrix u = unitary(h);
      EXPECT_LT(oracle::max_abs(ComplexMatrix(u - oracle::expm(-kI * h))), 1e-10);
      EXPECT_LT(oracle::max_abs(ComplexMatrix(u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols()))),
                1e-10);
    }
  }
}

TEST(Dynamics, LimitGenerators) {
  const auto spec = collective(3, RealVector::Zero(3));
  const auto exact = param_generators_exact(spec);
  const auto limit = param_generators_limit(spec);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_LT(oracle::max_abs(ComplexMatrix(exact.matrices[j] + spec.ops.operators[j])), 1e-14);
    EXPECT_EQ(limit.matrices[j], ComplexMatrix(-spec.ops.operators[j]));
  }
  const auto lspec = make_spec(collective_set(3), RealVector(), ThetaMode::kLimit);
  EXPECT_EQ(param_generators(lspec).method, GeneratorMethod::kLimit);
}

TEST(Dynamics, CommutingFamilyIsThetaIndependent) {
  const auto ops = local_pauli_set(3, Axis::kX);
  for (double t : {0.0, 0.4, 1.3, -2.7}) {
    const auto spec = make_spec(ops, RealVector::Constant(3, t));
    const auto exact = param_generators_exact(spec);
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_LT(oracle::max_abs(ComplexMatrix(exact.matrices[j] + ops.operators[j])), 1e-12);
    for (int order : {0, 1, 5, 20})
      EXPECT_LT(max_diff(param_generators_series(spec, order), exact), 1e-12);
  }
}

TEST(Dynamics, SeriesOrderZeroIsLeadingTerm) {
  const auto spec = collective(2, Eigen::Vector3d(0.3, 0.2, 0.1));
  const auto s0 = param_generators_series(spec, 0);
  for (std::size_t j = 0; j < 3; ++j)
    EXPECT_EQ(s0.matrices[j], ComplexMatrix(-spec.ops.operators[j]));
  EXPECT_THROW(param_generators_series(spec, -1), ValidationError);
}

TEST(Dynamics, ClosedFormSu2) {
  for (int n : {1, 2, 3}) {
    const auto spec = collective(n, Eigen::Vector3d(0.3, 0.2, 0.1));
    const auto cf = closed_form_su2(spec);
    EXPECT_LT(max_diff(cf, param_generators_exact(spec)), 1e-10);
    EXPECT_EQ(cf.method, GeneratorMethod::kClosedFormSu2);
  }
  const auto tiny = closed_form_su2(collective(2, Eigen::Vector3d(1e-9, 0, 0)));
  EXPECT_LT(oracle::max_abs(ComplexMatrix(tiny.matrices[0] + collective_spin(2, Axis::kX))), 1e-8);
  EXPECT_THROW(closed_form_su2(make_spec(local_pauli_set(2, Axis::kX), RealVector::Zero(2))),
               DomainError);
}

TEST(Dynamics, ClosedFormDependsOnNormOnly) {
  // Rotating theta about z while keeping its norm: the commutator coefficients agree, so
  // the generator of J_z (invariant under that rotation) has the same spectrum.
  const auto a = closed_form_su2(collective(2, Eigen::Vector3d(0.3, 0.0, 0.4)));
  const auto b = closed_form_su2(collective(2, Eigen::Vector3d(0.0, 0.3, 0.4)));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> ea(a.matrices[2]), eb(b.matrices[2]);
  EXPECT_LT((ea.eigenvalues() - eb.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Dynamics, MethodTriangleOnRandomSpecs) {
  std::mt19937_64 rng(20240601);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 1 + rep % 3;
    const int d = 1 + rep % 4;
    const auto ops = random_ops(rng, n, d);
    const auto spec = make_spec(ops, random_theta(rng, d, 0.5));
    const auto exact = param_generators_exact(spec);
    const auto series = param_generators_series(spec, 20);
    const auto fd = oracle::generators_fd(ops.operators, spec.theta);
    EXPECT_LT(max_diff(series, exact), 1e-10);
    EXPECT_LT(max_diff(exact, fd), 1e-6);
    for (const auto& h : exact.matrices) EXPECT_LT(hermiticity_defect(h), 1e-10);
  }
}

TEST(Dynamics, EvolvePreservesTraceAndPurity) {
  const DensityMatrix rho0 = graph_state_stabilizer(catalog("complete", 3));
  EXPECT_LT(oracle::max_abs(ComplexMatrix(evolve(rho0, collective(3, RealVector::Zero(3))).matrix() -
                                          rho0.matrix())),
            1e-15);
  const auto rho = evolve(rho0, collective(3, Eigen::Vector3d(0.7, -1.1, 2.0)));
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
  EXPECT_NEAR((rho.matrix() * rho.matrix()).trace().real(), 1.0, 1e-10);
  EXPECT_THROW(evolve(rho0, collective(2, RealVector::Zero(3))), ValidationError);
}

TEST(Dynamics, StateDerivativeMatchesFiniteDifferences) {
  const DensityMatrix rho0 = graph_state_stabilizer(catalog("ring", 3));
  const auto spec = collective(3, Eigen::Vector3d(0.3, -0.2, 0.25));
  const auto drho = state_derivatives(rho0, spec, param_generators_exact(spec));
  const double eps = 1e-5;
  for (int j = 0; j < 3; ++j) {
    RealVector p = spec.theta, m = spec.theta;
    p(j) += eps;
    m(j) -= eps;
    const ComplexMatrix fd = (evolve(rho0, collective(3, p)).matrix() -
                              evolve(rho0, collective(3, m)).matrix()) /
                             (2 * eps);
    EXPECT_LT(oracle::max_abs(ComplexMatrix(drho[j] - fd)), 1e-6);
  }
}
