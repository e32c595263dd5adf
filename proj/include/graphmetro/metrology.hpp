#pragma once

#include <optional>
#include <span>
#include <vector>

#include "graphmetro/dynamics.hpp"
#include "graphmetro/graph.hpp"
#include "graphmetro/graph_state.hpp"
#include "graphmetro/kernels.hpp"
#include "graphmetro/sun.hpp"

namespace graphmetro {

struct QfimResult {
  RealMatrix matrix;
  int rank = 0;
  /// Smallest singular value above 1e-10 times the largest.
  bool invertible = false;
  /// Tr(F^-1), present iff invertible.
  std::optional<double> crb_trace;
  /// max_{j<k} |Tr(rho0 [H_j, H_k])|; zero certifies the bound is saturable.
  double attainability = 0.0;
  /// Orthonormal basis (columns) of the numerically singular directions.
  RealMatrix null_space;
};

/// Rank, invertibility and Tr(F^-1) of a symmetric Fisher matrix.
QfimResult analyze_fisher(RealMatrix f, double attainability = 0.0);

/// F_jk = 4 Re(<H_j H_k> - <H_j><H_k>) in the pure state rho0.
QfimResult qfim(const DensityMatrix& rho0, const ParamGenerators& gens,
                kernels::Backend backend = kernels::Backend::kOpenMP);
/// Same with the bare operators, i.e. the theta -> 0 value.
QfimResult qfim_limit(const DensityMatrix& rho0, const OperatorSet& ops);
QfimResult qfim(const DensityMatrix& rho0, const DynamicsSpec& spec,
                kernels::Backend backend = kernels::Backend::kOpenMP);

/// One QFIM per theta point, evaluated in parallel.
std::vector<QfimResult> qfim_sweep(const DensityMatrix& rho0, const OperatorSet& ops,
                                   std::span<const RealVector> thetas,
                                   kernels::Backend backend = kernels::Backend::kOpenMP);

/// 4 Var(h).
double qfi_single(const DensityMatrix& rho0, const ComplexMatrix& h);

/// 0/1 QFIM of local (1/2)sigma^a dynamics, read off the neighbourhoods:
///   x: F_jk = 1 iff N(j) == N(k)
///   y: F_jk = 1 iff N(j) xor N(k) == {j, k}
///   z: identity
/// Throws DomainError when the graph has isolated vertices.
RealMatrix qfim_neighborhood_rule(const Graph& g, Axis a);

/// Block sums of the neighbourhood-rule QFIM over disjoint vertex sets: each block is
/// one parameter imprinted on all of its vertices.
RealMatrix qfim_grouped(const Graph& g, const std::vector<std::vector<int>>& partition,
                        Axis a = Axis::kX);

/// (4/|ops|) sum_j Var(H_j).
double f_ave(const DensityMatrix& rho0, const OperatorSet& ops);

/// Tr(F^-1)/mu. Throws SingularQfimError with the null space when F is singular.
double crb(const QfimResult& result, double mu = 1.0);

double attainability(const DensityMatrix& rho0, const ParamGenerators& gens);

/// Pure-state SLDs L_j = 2 d_j rho.
std::vector<ComplexMatrix> sld_pure(const DensityMatrix& rho_theta,
                                    const std::vector<ComplexMatrix>& drho);
/// F_jk = Re Tr(rho L_j L_k).
RealMatrix qfim_from_sld(const DensityMatrix& rho_theta, const std::vector<ComplexMatrix>& slds);

/// theta = (B sin(polar) cos(azimuth), B sin(polar) sin(azimuth), B cos(polar)).
RealVector field_theta(double b, double polar, double azimuth);

/// Second-order small-B expansion of the 3-qubit complete-graph QFIM under
/// H = theta . (J_x, J_y, J_z), as published. See README: it is not accurate at O(B^2).
RealMatrix perturbative_field_qfim(double b, double polar, double azimuth);

}  // namespace graphmetro
