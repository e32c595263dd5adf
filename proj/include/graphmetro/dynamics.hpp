#pragma once

#include <array>
#include <vector>

#include "graphmetro/graph_state.hpp"
#include "graphmetro/sun.hpp"
#include "graphmetro/types.hpp"

namespace graphmetro {

/// kLimit evaluates every structure at theta -> 0 regardless of the stored theta.
enum class ThetaMode { kGeneral, kLimit };

/// U = exp(-i sum_k theta_k H_k).
struct DynamicsSpec {
  OperatorSet ops;
  RealVector theta;
  ThetaMode mode = ThetaMode::kGeneral;

  std::size_t num_params() const noexcept { return ops.size(); }
};

/// Validates that theta has one entry per operator. An empty theta in limit mode is
/// replaced by zeros.
DynamicsSpec make_spec(OperatorSet ops, RealVector theta, ThetaMode mode = ThetaMode::kGeneral);

enum class GeneratorMethod { kExactEigen, kSeries, kClosedFormSu2, kLimit };
const char* method_name(GeneratorMethod m);

/// H_j = i (d_j U^dag) U for each parameter.
struct ParamGenerators {
  std::vector<ComplexMatrix> matrices;
  GeneratorMethod method = GeneratorMethod::kExactEigen;
  int order = 0;  // series truncation; 0 for the other methods

  std::size_t size() const noexcept { return matrices.size(); }
};

ComplexMatrix assemble_hamiltonian(const DynamicsSpec& spec);

/// exp(-iH) through the eigendecomposition of H. Throws DomainError if H is not Hermitian.
ComplexMatrix unitary(const ComplexMatrix& h);
ComplexMatrix unitary(const DynamicsSpec& spec);

/// Eigenbasis evaluation of -int_0^1 e^{isH} H_j e^{-isH} ds.
ParamGenerators param_generators_exact(const DynamicsSpec& spec);

/// -sum_{m<=order} i^m/(m+1)! ad_H^m H_j, stopping early once a term drops below 1e-14.
ParamGenerators param_generators_series(const DynamicsSpec& spec, int order = 20);

/// Closed form for the collective spins (J_x, J_y, J_z), where ad_H^3 = -xi^2 ad_H with
/// xi = |theta|. Throws DomainError for any other operator family.
ParamGenerators closed_form_su2(const DynamicsSpec& spec);

/// -H_j: the theta -> 0 value of every method.
ParamGenerators param_generators_limit(const DynamicsSpec& spec);

/// Exact method, or the limit form when spec.mode is kLimit.
ParamGenerators param_generators(const DynamicsSpec& spec);

DensityMatrix evolve(const DensityMatrix& rho0, const DynamicsSpec& spec);

/// d_j rho_theta = i U [H_j, rho0] U^dag.
std::vector<ComplexMatrix> state_derivatives(const DensityMatrix& rho0, const DynamicsSpec& spec,
                                             const ParamGenerators& gens);

}  // namespace graphmetro
