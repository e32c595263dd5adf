#include <cstdlib>
#include <string>

#include "graphmetro/errors.hpp"
#include "graphmetro/types.hpp"

namespace graphmetro {

int dense_qubit_cap() {
  constexpr int kDefaultCap = 12;
  const char* env = std::getenv(kDenseCapEnv);
  if (env == nullptr || *env == '\0') return kDefaultCap;
  char* end = nullptr;
  long value = std::strtol(env, &end, 10);
  if (*end != '\0' || value < 1 || value > 30) {
    throw ValidationError(std::string(kDenseCapEnv) + " must be an integer in [1, 30], got '" +
                          env + "'");
  }
  return static_cast<int>(value);
}

void require_dense_capacity(int num_qubits) {
  const int cap = dense_qubit_cap();
  if (num_qubits > cap) {
    throw ResourceError("dense representation of " + std::to_string(num_qubits) +
                        " qubits exceeds the cap of " + std::to_string(cap) + " (set " +
                        kDenseCapEnv + " to override)");
  }
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace graphmetro
