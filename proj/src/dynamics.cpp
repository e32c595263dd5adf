#include "graphmetro/dynamics.hpp"

#include <cmath>

#include "graphmetro/errors.hpp"

namespace graphmetro {
namespace {

const cplx kI{0.0, 1.0};

// (e^{ix} - 1)/(ix), with its Taylor series near zero.
cplx phi(double x) {
  if (std::abs(x) < 1e-6) return cplx(1.0 - x * x / 6.0, x / 2.0 - x * x * x / 24.0);
  return (std::exp(kI * x) - 1.0) / (kI * x);
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

void check_dims(const DensityMatrix& rho0, const DynamicsSpec& spec) {
  if (rho0.dim() != spec.ops.dim()) {
    throw ValidationError("state dimension " + std::to_string(rho0.dim()) +
                          " does not match operator dimension " + std::to_string(spec.ops.dim()));
  }
}

}  // namespace

const char* method_name(GeneratorMethod m) {
  switch (m) {
    case GeneratorMethod::kExactEigen: return "exact_eigen";
    case GeneratorMethod::kSeries: return "series";
    case GeneratorMethod::kClosedFormSu2: return "closed_form_su2";
    case GeneratorMethod::kLimit: return "limit";
  }
  return "?";
}

DynamicsSpec make_spec(OperatorSet ops, RealVector theta, ThetaMode mode) {
  if (ops.size() == 0) throw ValidationError("dynamics needs at least one operator");
  if (mode == ThetaMode::kLimit && theta.size() == 0) {
    theta = RealVector::Zero(static_cast<Eigen::Index>(ops.size()));
  }
  if (static_cast<std::size_t>(theta.size()) != ops.size()) {
    throw ValidationError("theta has " + std::to_string(theta.size()) + " entries but there are " +
                          std::to_string(ops.size()) + " operators");
  }
  if (!theta.allFinite()) throw ValidationError("theta contains non-finite entries");
  return DynamicsSpec{std::move(ops), std::move(theta), mode};
}

ComplexMatrix assemble_hamiltonian(const DynamicsSpec& spec) {
  if (static_cast<std::size_t>(spec.theta.size()) != spec.ops.size()) {
    throw ValidationError("theta length does not match operator count");
  }
  const Eigen::Index dim = spec.ops.dim();
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  if (spec.mode == ThetaMode::kLimit) return h;
  for (std::size_t k = 0; k < spec.ops.size(); ++k) {
    if (spec.ops.operators[k].rows() != dim) throw ValidationError("operator dimension mismatch");
    h += spec.theta(static_cast<Eigen::Index>(k)) * spec.ops.operators[k];
  }
  return h;
}

ComplexMatrix unitary(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw ValidationError("Hamiltonian must be square");
  if (hermiticity_defect(h) > 1e-10) throw DomainError("Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  const ComplexVector phases =
      eig.eigenvalues().unaryExpr([](double l) { return std::exp(cplx(0.0, -l)); });
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

ComplexMatrix unitary(const DynamicsSpec& spec) { return unitary(assemble_hamiltonian(spec)); }

ParamGenerators param_generators_exact(const DynamicsSpec& spec) {
  const ComplexMatrix h = assemble_hamiltonian(spec);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  const ComplexMatrix& v = eig.eigenvectors();
  const RealVector& lam = eig.eigenvalues();
  const Eigen::Index dim = h.rows();
  ComplexMatrix weights(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = 0; b < dim; ++b) weights(a, b) = -phi(lam(a) - lam(b));

  ParamGenerators out{{}, GeneratorMethod::kExactEigen, 0};
  out.matrices.reserve(spec.ops.size());
  for (const auto& hj : spec.ops.operators) {
    const ComplexMatrix rotated = (v.adjoint() * hj * v).cwiseProduct(weights);
    ComplexMatrix g = v * rotated * v.adjoint();
    out.matrices.push_back((g + g.adjoint()) / 2.0);
  }
  return out;
}

ParamGenerators param_generators_series(const DynamicsSpec& spec, int order) {
  if (order < 0) throw ValidationError("series order must be >= 0");
  const ComplexMatrix h = assemble_hamiltonian(spec);
  ParamGenerators out{{}, GeneratorMethod::kSeries, order};
  out.matrices.reserve(spec.ops.size());
  for (const auto& hj : spec.ops.operators) {
    ComplexMatrix nested = hj;  // ad_H^m H_j
    ComplexMatrix sum = -hj;
    cplx coeff = 1.0;  // i^m/(m+1)!
    for (int m = 1; m <= order; ++m) {
      nested = commutator(h, nested);
      coeff *= kI / static_cast<double>(m + 1);
      const ComplexMatrix term = coeff * nested;
      sum -= term;
      if (term.cwiseAbs().maxCoeff() < 1e-14) break;
    }
    out.matrices.push_back((sum + sum.adjoint()) / 2.0);
  }
  return out;
}

ParamGenerators closed_form_su2(const DynamicsSpec& spec) {
  const int n = spec.ops.num_qubits;
  if (spec.ops.size() != 3) throw DomainError("closed form needs exactly (J_x, J_y, J_z)");
  for (std::size_t k = 0; k < 3; ++k) {
    const ComplexMatrix expected = collective_spin(n, kAllAxes[k]);
    if ((spec.ops.operators[k] - expected).cwiseAbs().maxCoeff() > 1e-12) {
      throw DomainError("closed form needs the collective spins (J_x, J_y, J_z) in order");
    }
  }
  const ComplexMatrix h = assemble_hamiltonian(spec);
  const double xi = spec.mode == ThetaMode::kLimit ? 0.0 : spec.theta.norm();
  const double xi2 = xi * xi;
  double c1 = 0.5 - xi2 / 24.0;   // (1 - cos xi)/xi^2
  double c2 = 1.0 / 6.0 - xi2 / 120.0;  // (1 - sin xi/xi)/xi^2
  if (xi > 1e-4) {
    c1 = (1.0 - std::cos(xi)) / xi2;
    c2 = (1.0 - std::sin(xi) / xi) / xi2;
  }
  const ComplexMatrix ih = kI * h;
  ParamGenerators out{{}, GeneratorMethod::kClosedFormSu2, 0};
  for (const auto& hj : spec.ops.operators) {
    const ComplexMatrix d1 = commutator(ih, hj);
    const ComplexMatrix d2 = commutator(ih, d1);
    // Overall minus sign: matches i (dU^dag) U, the convention of the exact integral.
    ComplexMatrix g = -(hj + c1 * d1 + c2 * d2);
    out.matrices.push_back((g + g.adjoint()) / 2.0);
  }
  return out;
}

ParamGenerators param_generators_limit(const DynamicsSpec& spec) {
  ParamGenerators out{{}, GeneratorMethod::kLimit, 0};
  for (const auto& hj : spec.ops.operators) out.matrices.push_back(-hj);
  return out;
}

ParamGenerators param_generators(const DynamicsSpec& spec) {
  return spec.mode == ThetaMode::kLimit ? param_generators_limit(spec)
                                        : param_generators_exact(spec);
}

DensityMatrix evolve(const DensityMatrix& rho0, const DynamicsSpec& spec) {
  check_dims(rho0, spec);
  const ComplexMatrix u = unitary(spec);
  ComplexMatrix rho = u * rho0.matrix() * u.adjoint();
  return DensityMatrix((rho + rho.adjoint()) / 2.0);
}

std::vector<ComplexMatrix> state_derivatives(const DensityMatrix& rho0, const DynamicsSpec& spec,
                                             const ParamGenerators& gens) {
  check_dims(rho0, spec);
  const ComplexMatrix u = unitary(spec);
  std::vector<ComplexMatrix> out;
  out.reserve(gens.size());
  for (const auto& g : gens.matrices) {
    out.push_back(kI * u * commutator(g, rho0.matrix()) * u.adjoint());
  }
  return out;
}

}  // namespace graphmetro
