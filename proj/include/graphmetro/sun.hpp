#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphmetro/types.hpp"

namespace graphmetro {

enum class GeneratorKind { kSymmetric, kAntisymmetric, kDiagonal };

/// Position of a generator in the block layout. Off-diagonal kinds use the pair (a, b),
/// a < b; the diagonal kind stores its level k in `a` (1 <= k <= N-1) and b = -1.
struct GeneratorIndex {
  GeneratorKind kind;
  int a;
  int b;
};

/// Generalised Gell-Mann basis of su(N), ordered symmetric pairs, antisymmetric pairs,
/// then diagonals; pairs run lexicographically over a < b. Index 0 is the first generator.
struct GeneratorBasis {
  int dim = 0;
  std::vector<ComplexMatrix> matrices;
  std::vector<GeneratorIndex> index_scheme;
};

GeneratorBasis su_generators(int n);
/// Single basis element without building the whole basis (N^2-1 matrices get large).
ComplexMatrix su_generator(int n, int index);
GeneratorIndex su_generator_index(int n, int index);
inline int su_generator_count(int n) { return n * n - 1; }

/// All index sets of `size` pairwise-commuting SU(N) generators, each sorted, in
/// lexicographic order.
std::vector<std::vector<int>> commuting_subsets(int n, int size);
bool generators_commute(int n, int a, int b);

enum class Axis { kX, kY, kZ };

Axis parse_axis(std::string_view name);
char axis_name(Axis a);
ComplexMatrix pauli_matrix(Axis a);

/// J_a = (1/2) sum_j sigma^a_j on n qubits.
ComplexMatrix collective_spin(int n, Axis a);

/// Spin-s matrices, s = (dim-1)/2, in the basis m = s, s-1, ..., -s.
std::array<ComplexMatrix, 3> spin_j_operators(int dim);

/// I^{offset} (x) op (x) I^{n-offset-m} for a 2^m x 2^m operator.
ComplexMatrix embed(const ComplexMatrix& op, int offset, int n);

/// Ordered Hermitian operators on a common 2^n-dimensional space.
struct OperatorSet {
  int num_qubits = 0;
  std::vector<ComplexMatrix> operators;
  std::vector<std::string> labels;

  std::size_t size() const noexcept { return operators.size(); }
  Eigen::Index dim() const noexcept { return Eigen::Index{1} << num_qubits; }
};

/// Validates dimensions and Hermiticity.
OperatorSet make_operator_set(int num_qubits, std::vector<ComplexMatrix> ops,
                              std::vector<std::string> labels);

inline constexpr std::array<Axis, 3> kAllAxes{Axis::kX, Axis::kY, Axis::kZ};

OperatorSet collective_set(int n, std::span<const Axis> axes = kAllAxes);
/// (1/2) sigma^a_j for every qubit j.
OperatorSet local_pauli_set(int n, Axis a);
/// Spin-(2^n-1)/2 operators acting on the whole 2^n-dimensional space.
OperatorSet spin_j_set(int n, std::span<const Axis> axes = kAllAxes);
/// scale * lambda_k of SU(2^m), embedded on qubits [offset, offset+m) of n.
OperatorSet sun_set(int n, int m_qubits, int offset, std::span<const int> indices,
                    double scale = 1.0);

}  // namespace graphmetro
