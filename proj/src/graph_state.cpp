#include "graphmetro/graph_state.hpp"

#include <cmath>

#include "graphmetro/errors.hpp"

namespace graphmetro {

StateVector::StateVector(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw ValidationError("state vector is empty");
  if (std::abs(amps_.norm() - 1.0) > 1e-12) {
    throw ValidationError("state vector is not normalised");
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) : rho_(std::move(entries)) {
  if (rho_.rows() == 0 || rho_.rows() != rho_.cols()) {
    throw ValidationError("density matrix must be square and non-empty");
  }
  if (hermiticity_defect(rho_) > 1e-10) throw ValidationError("density matrix is not Hermitian");
  if (std::abs(rho_.trace() - cplx(1.0, 0.0)) > 1e-12) {
    throw ValidationError("density matrix trace differs from 1");
  }
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
  const auto& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

double DensityMatrix::purity_defect() const { return (rho_ * rho_ - rho_).cwiseAbs().maxCoeff(); }

ComplexVector DensityMatrix::pure_state(double tol) const {
  if (purity_defect() > tol) throw DomainError("state is not pure; pure-state formulas only");
  // rho = psi psi^dag, so any column with the largest diagonal weight is psi * conj(psi_k).
  Eigen::Index k = 0;
  rho_.diagonal().real().maxCoeff(&k);
  ComplexVector psi = rho_.col(k) / std::sqrt(rho_(k, k).real());
  return psi / psi.norm();
}

StabilizerGroup stabilizer_generators(const Graph& g) {
  const int n = g.size();
  std::vector<PauliString> gens;
  gens.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    gens.emplace_back(n, std::uint64_t{1} << v, g.neighborhood_mask(v));
  }
  return StabilizerGroup(std::move(gens));
}

DensityMatrix graph_state_stabilizer(const Graph& g, kernels::Backend backend) {
  return DensityMatrix(kernels::stabilizer_density(stabilizer_generators(g), backend));
}

StateVector graph_state_circuit(const Graph& g) {
  const int n = g.size();
  require_dense_capacity(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  // Qubit q is bit (n-1-q) of the basis index.
  std::vector<std::uint64_t> edge_masks;
  for (auto [a, b] : g.edges()) {
    edge_masks.push_back((std::uint64_t{1} << (n - 1 - a)) | (std::uint64_t{1} << (n - 1 - b)));
  }
  ComplexVector psi(dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    int parity = 0;
    for (auto m : edge_masks) parity ^= ((static_cast<std::uint64_t>(idx) & m) == m);
    psi(idx) = parity ? -amp : amp;
  }
  return StateVector(std::move(psi));
}

}  // namespace graphmetro
