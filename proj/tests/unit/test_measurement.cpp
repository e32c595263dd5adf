#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "graphmetro/errors.hpp"
#include "graphmetro/measurement.hpp"
#include "oracles.hpp"

using namespace graphmetro;

namespace {

DensityMatrix graph2() { return graph_state_stabilizer(catalog("chain", 2)); }

DynamicsSpec pair_spec(Axis a, Axis b, double t) {
  const std::vector<Axis> axes{a, b};
  return make_spec(collective_set(2, axes), RealVector::Constant(2, t));
}

}  // namespace

TEST(Measurement, BellBasisIsProjective) {
  const Povm bell = bell_basis();
  ASSERT_EQ(bell.size(), 4u);
  ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
  for (std::size_t a = 0; a < 4; ++a) {
    sum += bell.elements()[a];
    for (std::size_t b = 0; b < 4; ++b) {
      const ComplexMatrix prod = bell.elements()[a] * bell.elements()[b];
      const ComplexMatrix expected = a == b ? bell.elements()[a] : ComplexMatrix::Zero(4, 4);
      EXPECT_LT(oracle::max_abs(ComplexMatrix(prod - expected)), 1e-15);
    }
  }
  EXPECT_LT(oracle::max_abs(ComplexMatrix(sum - ComplexMatrix::Identity(4, 4))), 1e-15);
}

TEST(Measurement, Probabilities) {
  const Povm bell = bell_basis();
  const RealVector mixed = probabilities(DensityMatrix(ComplexMatrix::Identity(4, 4) / 4.0), bell);
  EXPECT_LT((mixed - RealVector::Constant(4, 0.25)).cwiseAbs().maxCoeff(), 1e-15);
  const RealVector phi = probabilities(DensityMatrix(bell.elements()[0]), bell);
  EXPECT_LT((phi - Eigen::Vector4d(1, 0, 0, 0)).cwiseAbs().maxCoeff(), 1e-15);
  const RealVector g = probabilities(graph2(), bell);
  EXPECT_LT((g - Eigen::Vector4d(0, 0.5, 0.5, 0)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(probabilities(graph_state_stabilizer(catalog("chain", 3)), bell), ValidationError);
}

TEST(Measurement, PovmValidation) {
  EXPECT_THROW(Povm({}), ValidationError);
  EXPECT_THROW(Povm({ComplexMatrix::Identity(2, 2) * 0.5}), ValidationError);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = 1.0;
  ComplexMatrix other = ComplexMatrix::Zero(2, 2);
  other(0, 0) = -0.5;
  EXPECT_THROW(Povm({neg, other}), ValidationError);
  EXPECT_EQ(computational_basis(2).size(), 4u);
}

TEST(Measurement, BellCfimSaturatesQfim) {
  const auto spec = pair_spec(Axis::kX, Axis::kZ, 1e-3);
  const auto cmp = cfim_vs_qfim(graph2(), spec, bell_basis());
  EXPECT_LT(cmp.max_abs_difference, 1e-3);
  // X(x)Z is a stabiliser, so the QFIM tends to the singular [[2,2],[2,2]], not diag(2,2).
  EXPECT_LT(oracle::max_abs(RealMatrix(cmp.qfim.matrix - RealMatrix::Constant(2, 2, 2.0))), 1e-3);
  EXPECT_LT(oracle::max_abs(RealMatrix(cmp.cfim.matrix - RealMatrix::Constant(2, 2, 2.0))), 1e-3);
}

TEST(Measurement, BellSaturationForEveryPair) {
  const std::pair<Axis, Axis> pairs[] = {{Axis::kX, Axis::kY}, {Axis::kX, Axis::kZ}, {Axis::kY, Axis::kZ}};
  for (auto [a, b] : pairs) {
    const auto cmp = cfim_vs_qfim(graph2(), pair_spec(a, b, 1e-3), bell_basis());
    EXPECT_LT(cmp.max_abs_difference, 1e-3);
    EXPECT_GT(cmp.slack_eigenvalues.minCoeff(), -1e-8);
  }
}

TEST(Measurement, ComputationalBasisLeavesSlack) {
  const auto cmp = cfim_vs_qfim(graph2(), pair_spec(Axis::kX, Axis::kZ, 1e-3), computational_basis(2));
  EXPECT_GT(cmp.slack_eigenvalues.maxCoeff(), 1e-2);
  EXPECT_GT(cmp.slack_eigenvalues.minCoeff(), -1e-8);
}

TEST(Measurement, IdentityPovmIsUninformative) {
  const auto spec = pair_spec(Axis::kX, Axis::kY, 0.3);
  const auto cmp = cfim_vs_qfim(graph2(), spec, identity_povm(4));
  EXPECT_LT(oracle::max_abs(cmp.cfim.matrix), 1e-12);
  EXPECT_LT(oracle::max_abs(RealMatrix(cmp.difference - cmp.qfim.matrix)), 1e-12);
}

TEST(Measurement, JacobianMatchesFiniteDifferences) {
  const auto rho = graph_state_stabilizer(catalog("complete", 3));
  const auto spec = make_spec(collective_set(3), Eigen::Vector3d(0.2, -0.1, 0.3));
  const auto povm = computational_basis(3);
  const RealMatrix a = probability_jacobian(rho, spec, povm, DerivativeMode::kAnalytic);
  const RealMatrix f = probability_jacobian(rho, spec, povm, DerivativeMode::kFiniteDifference);
  EXPECT_LT(oracle::max_abs(RealMatrix(a - f)), 1e-7);
}

TEST(Measurement, CfimBoundedByQfimOnRandomCases) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int rep = 0; rep < 10; ++rep) {
    const auto g = oracle::random_graph(rng, 2 + rep % 2);
    const int n = g.size();
    const auto spec = make_spec(collective_set(n), Eigen::Vector3d(u(rng), u(rng), u(rng)));
    const auto cmp = cfim_vs_qfim(graph_state_stabilizer(g), spec, computational_basis(n));
    EXPECT_GT(cmp.slack_eigenvalues.minCoeff(), -1e-8);
    EXPECT_LT(oracle::max_abs(RealMatrix(cmp.cfim.matrix - cmp.cfim.matrix.transpose())), 1e-12);
    if (cmp.qfim.invertible) {
      const auto fc = analyze_fisher(cmp.cfim.matrix);
      if (fc.invertible) EXPECT_GE(*fc.crb_trace, *cmp.qfim.crb_trace - 1e-8);
    }
  }
}

TEST(Measurement, PovmFileRoundTrip) {
  std::stringstream buf;
  write_povm(bell_basis(), buf);
  const Povm back = parse_povm(buf);
  ASSERT_EQ(back.size(), 4u);
  for (std::size_t m = 0; m < 4; ++m)
    EXPECT_LT(oracle::max_abs(ComplexMatrix(back.elements()[m] - bell_basis().elements()[m])), 1e-16);
  EXPECT_EQ(back.labels(), bell_basis().labels());

  std::istringstream bare(R"({"dim": 2, "elements": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]})");
  EXPECT_EQ(parse_povm(bare).size(), 2u);
  std::istringstream bad_json("{ nope");
  EXPECT_THROW(parse_povm(bad_json), ValidationError);
  std::istringstream bad_rows(R"({"dim": 2, "elements": [[[1, 0]]]})");
  EXPECT_THROW(parse_povm(bad_rows), ValidationError);
  try {
    load_povm("/nonexistent/povm.json");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(static_cast<int>(e.exit_code()), 4);
  }
}

TEST(Measurement, DegenerateMeasurement) {
  // A single outcome with p = 0 everywhere cannot be built as a POVM, so drive the guard
  // with a state orthogonal to every kept outcome: |00> measured in {|11><11|, rest}.
  const auto spec = make_spec(local_pauli_set(2, Axis::kZ), RealVector::Zero(2));
  ComplexMatrix p11 = ComplexMatrix::Zero(4, 4);
  p11(3, 3) = 1.0;
  const Povm povm({p11, ComplexMatrix(ComplexMatrix::Identity(4, 4) - p11)});
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho(0, 0) = 1.0;
  const auto r = cfim(DensityMatrix(rho), spec, povm);
  EXPECT_EQ(r.dropped_outcomes, std::vector<int>{0});
  EXPECT_LT(oracle::max_abs(r.matrix), 1e-15);
}
