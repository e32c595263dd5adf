#pragma once

#include <complex>

#include <Eigen/Dense>

namespace graphmetro {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Largest qubit count for which dense 2^n x 2^n matrices are built.
/// Defaults to 12; the GRAPHMETRO_DENSE_CAP environment variable overrides it.
int dense_qubit_cap();

/// Throws ResourceError when a dense object on `num_qubits` qubits exceeds the cap.
void require_dense_capacity(int num_qubits);

/// Largest |A_ij - conj(A_ji)|.
double hermiticity_defect(const ComplexMatrix& a);

inline constexpr const char* kDenseCapEnv = "GRAPHMETRO_DENSE_CAP";

}  // namespace graphmetro
