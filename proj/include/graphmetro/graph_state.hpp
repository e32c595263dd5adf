#pragma once

#include "graphmetro/graph.hpp"
#include "graphmetro/kernels.hpp"
#include "graphmetro/pauli.hpp"
#include "graphmetro/types.hpp"

namespace graphmetro {

/// Unit-norm state vector (tolerance 1e-12).
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);
  const ComplexVector& amplitudes() const noexcept { return amps_; }
  Eigen::Index dim() const noexcept { return amps_.size(); }

 private:
  ComplexVector amps_;
};

/// Hermitian, unit-trace density matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries);
  static DensityMatrix from_state(const StateVector& psi);

  const ComplexMatrix& matrix() const noexcept { return rho_; }
  Eigen::Index dim() const noexcept { return rho_.rows(); }

  /// Max-entry norm of rho^2 - rho.
  double purity_defect() const;
  bool is_pure(double tol = 1e-10) const { return purity_defect() < tol; }

  /// Dominant eigenvector, phase-fixed so its largest component is real positive.
  /// Throws DomainError when the state is mixed beyond `tol`.
  ComplexVector pure_state(double tol = 1e-8) const;

 private:
  ComplexMatrix rho_;
};

/// g_i = X_i prod_{k in N(i)} Z_k.
StabilizerGroup stabilizer_generators(const Graph& g);

/// rho0 = prod_i (g_i + 1)/2, summed over all 2^n stabilizer products.
DensityMatrix graph_state_stabilizer(const Graph& g,
                                     kernels::Backend backend = kernels::Backend::kOpenMP);

/// prod_{(a,b) in E} CZ_ab |+>^n.
StateVector graph_state_circuit(const Graph& g);

}  // namespace graphmetro
