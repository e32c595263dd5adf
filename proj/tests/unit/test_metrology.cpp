#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "graphmetro/dynamics.hpp"
#include "graphmetro/errors.hpp"
#include "graphmetro/metrology.hpp"
#include "oracles.hpp"

using namespace graphmetro;

namespace {

DensityMatrix state(const std::string& name, int n) { return graph_state_stabilizer(catalog(name, n)); }

RealMatrix ones(int d) { return RealMatrix::Ones(d, d); }

RealMatrix dense_local_qfim(const Graph& g, Axis a) {
  return qfim_limit(graph_state_stabilizer(g), local_pauli_set(g.size(), a)).matrix;
}

}  // namespace

TEST(Metrology, LocalPauliOnCompleteGraph) {
  const auto rho = state("complete", 3);
  const auto fx = qfim_limit(rho, local_pauli_set(3, Axis::kX));
  EXPECT_LT(oracle::max_abs(RealMatrix(fx.matrix - RealMatrix::Identity(3, 3))), 1e-12);
  EXPECT_TRUE(fx.invertible);
  EXPECT_NEAR(*fx.crb_trace, 3.0, 1e-12);
  const auto fy = qfim_limit(rho, local_pauli_set(3, Axis::kY));
  EXPECT_LT(oracle::max_abs(RealMatrix(fy.matrix - ones(3))), 1e-12);
  EXPECT_EQ(fy.rank, 1);
  EXPECT_FALSE(fy.invertible);
  EXPECT_FALSE(fy.crb_trace.has_value());
  EXPECT_EQ(fy.null_space.cols(), 2);
  EXPECT_LT((fy.matrix * fy.null_space).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Metrology, CollectiveLimit) {
  const auto r = qfim_limit(state("complete", 3), collective_set(3));
  RealMatrix expected = RealMatrix::Zero(3, 3);
  expected.diagonal() << 3, 9, 3;
  EXPECT_LT(oracle::max_abs(RealMatrix(r.matrix - expected)), 1e-12);
  EXPECT_NEAR(crb(r), 7.0 / 9.0, 1e-12);
  EXPECT_NEAR(crb(r, 7.0), 1.0 / 9.0, 1e-12);
  const auto spec = make_spec(collective_set(3), RealVector::Constant(3, 1e-6));
  EXPECT_LT(oracle::max_abs(RealMatrix(qfim(state("complete", 3), spec).matrix - r.matrix)), 1e-4);
}

TEST(Metrology, TwoQubitJxJzLimitIsSingular) {
  // X(x)Z stabilises the 2-qubit graph state, so J_x and J_z are fully correlated.
  const std::vector<Axis> axes{Axis::kX, Axis::kZ};
  const auto r = qfim_limit(state("chain", 2), collective_set(2, axes));
  EXPECT_LT(oracle::max_abs(RealMatrix(r.matrix - 2.0 * ones(2))), 1e-12);
  EXPECT_EQ(r.rank, 1);
  try {
    crb(r);
    FAIL();
  } catch (const SingularQfimError& e) {
    EXPECT_EQ(e.rank(), 1);
    EXPECT_EQ(e.null_space().cols(), 1);
    EXPECT_EQ(static_cast<int>(e.exit_code()), 3);
  }
}

TEST(Metrology, SingleParameterQfi) {
  for (int n = 2; n <= 6; ++n) {
    const auto rho = state("complete", n);
    EXPECT_NEAR(qfi_single(rho, collective_spin(n, Axis::kY)), n * n, 1e-9);
    EXPECT_NEAR(qfi_single(rho, collective_spin(n, Axis::kX)), n, 1e-9);
    EXPECT_NEAR(qfi_single(rho, collective_spin(n, Axis::kZ)), n, 1e-9);
  }
  EXPECT_GT(qfi_single(state("complete", 3), spin_j_operators(8)[1]), 9.0);
}

TEST(Metrology, NeighborhoodRuleExamples) {
  const RealMatrix star = qfim_neighborhood_rule(catalog("star", 4), Axis::kX);
  for (int a = 1; a < 4; ++a)
    for (int b = 1; b < 4; ++b) EXPECT_EQ(star(a, b), 1.0);
  EXPECT_EQ(star(0, 1), 0.0);
  EXPECT_EQ(qfim_neighborhood_rule(catalog("chain", 4), Axis::kX), RealMatrix::Identity(4, 4));
  EXPECT_EQ(qfim_neighborhood_rule(catalog("complete", 3), Axis::kY), ones(3));
  EXPECT_EQ(qfim_neighborhood_rule(catalog("ring", 5), Axis::kZ), RealMatrix::Identity(5, 5));
  EXPECT_THROW(qfim_neighborhood_rule(build_graph(3, {{0, 1}}), Axis::kX), DomainError);
}

TEST(Metrology, NeighborhoodRulesMatchDenseOnRandomGraphs) {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 2 + rep % 6;
    const auto g = oracle::random_graph_no_isolated(rng, n);
    for (Axis a : kAllAxes)
      EXPECT_LT(oracle::max_abs(RealMatrix(qfim_neighborhood_rule(g, a) - dense_local_qfim(g, a))), 1e-9);
  }
}

TEST(Metrology, Grouped) {
  const auto g = catalog("star", 4);
  std::vector<std::vector<int>> singletons{{0}, {1}, {2}, {3}};
  EXPECT_EQ(qfim_grouped(g, singletons), qfim_neighborhood_rule(g, Axis::kX));
  const RealMatrix all = qfim_grouped(catalog("complete", 4), {{0, 1, 2, 3}});
  ASSERT_EQ(all.rows(), 1);
  EXPECT_EQ(all(0, 0), 4.0);

  const auto chain = catalog("chain", 4);
  const std::vector<std::vector<int>> blocks{{0, 2}, {1, 3}};
  ComplexMatrix b0 = ComplexMatrix::Zero(16, 16), b1 = ComplexMatrix::Zero(16, 16);
  for (int v : blocks[0]) b0 += embed(0.5 * oracle::site('X'), v, 4);
  for (int v : blocks[1]) b1 += embed(0.5 * oracle::site('X'), v, 4);
  const auto ops = make_operator_set(4, {b0, b1}, {"b0", "b1"});
  EXPECT_LT(oracle::max_abs(RealMatrix(qfim_grouped(chain, blocks) -
                                       qfim_limit(graph_state_stabilizer(chain), ops).matrix)),
            1e-10);
  EXPECT_THROW(qfim_grouped(chain, {{0, 1}, {1, 2}}), ValidationError);
}

TEST(Metrology, AveragedQfi) {
  for (int n = 2; n <= 6; ++n)
    EXPECT_NEAR(f_ave(state("complete", n), collective_set(n)), (n * n + 2.0 * n) / 3.0, 1e-9);
  for (int n = 4; n <= 6; ++n) EXPECT_NEAR(f_ave(state("chain", n), collective_set(n)), n, 1e-9);
  // Short chains: chain(2) is the complete graph, chain(3) has two leaves sharing N = {1}.
  EXPECT_NEAR(f_ave(state("chain", 2), collective_set(2)), 8.0 / 3.0, 1e-12);
  EXPECT_NEAR(f_ave(state("chain", 3), collective_set(3)), 11.0 / 3.0, 1e-12);
  EXPECT_THROW(f_ave(state("chain", 2), OperatorSet{2, {}, {}}), ValidationError);
}

TEST(Metrology, SuNAveragedQfiIsClassInvariant) {
  const std::vector<int> first{0, 1, 2, 3};
  const auto ops = sun_set(4, 4, 0, first);
  const auto classes = four_vertex_classes();
  const double ref = f_ave(graph_state_stabilizer(classes.front().second), ops);
  for (const auto& [name, g] : classes) EXPECT_NEAR(f_ave(graph_state_stabilizer(g), ops), ref, 1e-8) << name;
}

TEST(Metrology, CrbExamples) {
  EXPECT_NEAR(crb(analyze_fisher(RealMatrix::Identity(3, 3))), 3.0, 1e-15);
  EXPECT_THROW(crb(analyze_fisher(ones(3))), SingularQfimError);
  EXPECT_THROW(crb(analyze_fisher(RealMatrix::Identity(2, 2)), 0.0), ValidationError);
}

TEST(Metrology, Attainability) {
  const auto rho = state("complete", 3);
  const auto comm = make_spec(local_pauli_set(3, Axis::kX), RealVector::Constant(3, 0.4));
  EXPECT_LT(attainability(rho, param_generators(comm)), 1e-15);
  const auto j = make_spec(collective_set(3), RealVector::Constant(3, 1e-3));
  EXPECT_LT(attainability(rho, param_generators(j)), 1e-2);
  const auto single = make_spec(collective_set(3, std::vector<Axis>{Axis::kY}), RealVector::Constant(1, 0.3));
  EXPECT_EQ(attainability(rho, param_generators(single)), 0.0);
}

TEST(Metrology, SldOracle) {
  // chain(3): the two leaves share N = {1}, so the local sigma_x QFIM is not the identity.
  const auto rho = state("chain", 3);
  const auto spec = make_spec(local_pauli_set(3, Axis::kX), RealVector::Zero(3));
  const auto drho = state_derivatives(rho, spec, param_generators(spec));
  const RealMatrix f = qfim_from_sld(rho, sld_pure(rho, drho));
  EXPECT_LT(oracle::max_abs(RealMatrix(f - qfim(rho, spec).matrix)), 1e-12);
  EXPECT_LT(oracle::max_abs(RealMatrix(f - qfim_neighborhood_rule(catalog("chain", 3), Axis::kX))), 1e-12);
  const auto rho4 = state("chain", 4);
  const auto spec4 = make_spec(local_pauli_set(4, Axis::kX), RealVector::Zero(4));
  const RealMatrix f4 =
      qfim_from_sld(rho4, sld_pure(rho4, state_derivatives(rho4, spec4, param_generators(spec4))));
  EXPECT_LT(oracle::max_abs(RealMatrix(f4 - RealMatrix::Identity(4, 4))), 1e-12);

  const auto k4 = state("complete", 4);
  const auto jy = make_spec(collective_set(4, std::vector<Axis>{Axis::kY}), RealVector::Zero(1));
  const auto dy = state_derivatives(k4, jy, param_generators(jy));
  EXPECT_NEAR(qfim_from_sld(k4, sld_pure(k4, dy))(0, 0), 16.0, 1e-12);

  const std::vector<ComplexMatrix> zero{ComplexMatrix::Zero(8, 8)};
  EXPECT_EQ(qfim_from_sld(rho, sld_pure(rho, zero))(0, 0), 0.0);
}

TEST(Metrology, OracleTriangleOnRandomGraphs) {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(-0.17, 0.17);
  for (int rep = 0; rep < 12; ++rep) {
    const int n = 2 + rep % 3;
    const auto g = oracle::random_graph(rng, n);
    const auto rho0 = graph_state_stabilizer(g);
    const auto ops = collective_set(n);
    const RealVector theta = Eigen::Vector3d(u(rng), u(rng), u(rng));
    const auto spec = make_spec(ops, theta);
    const auto gens = param_generators(spec);
    const RealMatrix f_cov = qfim(rho0, gens).matrix;
    const auto rho = evolve(rho0, spec);
    const RealMatrix f_sld = qfim_from_sld(rho, sld_pure(rho, state_derivatives(rho0, spec, gens)));
    const RealMatrix f_fd =
        oracle::qfim_state_fd(oracle::graph_state_bruteforce(g), ops.operators, theta);
    EXPECT_LT(oracle::max_abs(RealMatrix(f_cov - f_sld)), 1e-5);
    EXPECT_LT(oracle::max_abs(RealMatrix(f_cov - f_fd)), 1e-5);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(f_cov);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10);
    EXPECT_LT(oracle::max_abs(RealMatrix(f_cov - f_cov.transpose())), 1e-10);
  }
}

TEST(Metrology, SweepBackendsAgree) {
  const auto rho = state("complete", 3);
  std::vector<RealVector> thetas;
  for (int i = 0; i < 9; ++i) thetas.push_back(Eigen::Vector3d(0.1 * i, 0.05, -0.2));
  const auto a = qfim_sweep(rho, collective_set(3), thetas, kernels::Backend::kSerial);
  const auto b = qfim_sweep(rho, collective_set(3), thetas, kernels::Backend::kOpenMP);
  ASSERT_EQ(a.size(), thetas.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].matrix, b[i].matrix);
}

TEST(Metrology, MixedStateRejected) {
  const DensityMatrix mixed(ComplexMatrix::Identity(4, 4) / 4.0);
  EXPECT_THROW(qfim_limit(mixed, collective_set(2)), DomainError);
}
