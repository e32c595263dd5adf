#include "graphmetro/sun.hpp"

#include <algorithm>
#include <cmath>

#include "graphmetro/errors.hpp"

namespace graphmetro {
namespace {

const cplx kI{0.0, 1.0};

std::pair<int, int> pair_at(int n, int p) {
  for (int a = 0; a < n - 1; ++a) {
    const int row = n - 1 - a;
    if (p < row) return {a, a + 1 + p};
    p -= row;
  }
  throw ValidationError("generator pair index out of range");
}

bool is_power_of_two(Eigen::Index d) { return d > 0 && (d & (d - 1)) == 0; }

int log2_dim(Eigen::Index d) {
  int m = 0;
  while ((Eigen::Index{1} << m) < d) ++m;
  return m;
}

}  // namespace

GeneratorIndex su_generator_index(int n, int index) {
  if (n < 2) throw ValidationError("SU(N) needs N >= 2");
  if (index < 0 || index >= su_generator_count(n)) {
    throw ValidationError("SU(" + std::to_string(n) + ") generator index " +
                          std::to_string(index) + " out of range [0, " +
                          std::to_string(su_generator_count(n) - 1) + "]");
  }
  const int pairs = n * (n - 1) / 2;
  if (index < pairs) {
    auto [a, b] = pair_at(n, index);
    return {GeneratorKind::kSymmetric, a, b};
  }
  if (index < 2 * pairs) {
    auto [a, b] = pair_at(n, index - pairs);
    return {GeneratorKind::kAntisymmetric, a, b};
  }
  return {GeneratorKind::kDiagonal, index - 2 * pairs + 1, -1};
}

ComplexMatrix su_generator(int n, int index) {
  const GeneratorIndex gi = su_generator_index(n, index);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  switch (gi.kind) {
    case GeneratorKind::kSymmetric:
      m(gi.a, gi.b) = 1.0;
      m(gi.b, gi.a) = 1.0;
      break;
    case GeneratorKind::kAntisymmetric:
      m(gi.a, gi.b) = -kI;
      m(gi.b, gi.a) = kI;
      break;
    case GeneratorKind::kDiagonal: {
      const int k = gi.a;
      const double norm = std::sqrt(2.0 / (k * (k + 1.0)));
      for (int j = 0; j < k; ++j) m(j, j) = norm;
      m(k, k) = -k * norm;
      break;
    }
  }
  return m;
}

GeneratorBasis su_generators(int n) {
  if (n < 2) throw ValidationError("SU(N) needs N >= 2");
  GeneratorBasis basis;
  basis.dim = n;
  const int count = su_generator_count(n);
  basis.matrices.reserve(static_cast<std::size_t>(count));
  basis.index_scheme.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    basis.matrices.push_back(su_generator(n, k));
    basis.index_scheme.push_back(su_generator_index(n, k));
  }
  return basis;
}

bool generators_commute(int n, int a, int b) {
  const ComplexMatrix x = su_generator(n, a);
  const ComplexMatrix y = su_generator(n, b);
  return (x * y - y * x).cwiseAbs().maxCoeff() < 1e-12;
}

std::vector<std::vector<int>> commuting_subsets(int n, int size) {
  const GeneratorBasis basis = su_generators(n);
  const int count = su_generator_count(n);
  if (size < 1 || size > count) throw ValidationError("subset size out of range");
  std::vector<std::vector<char>> ok(count, std::vector<char>(count, 0));
  for (int a = 0; a < count; ++a)
    for (int b = a + 1; b < count; ++b) {
      const auto& x = basis.matrices[a];
      const auto& y = basis.matrices[b];
      ok[a][b] = ok[b][a] = (x * y - y * x).cwiseAbs().maxCoeff() < 1e-12;
    }
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  auto extend = [&](auto&& self, int start) -> void {
    if (static_cast<int>(current.size()) == size) {
      out.push_back(current);
      return;
    }
    for (int c = start; c < count; ++c) {
      if (std::all_of(current.begin(), current.end(), [&](int p) { return ok[p][c]; })) {
        current.push_back(c);
        self(self, c + 1);
        current.pop_back();
      }
    }
  };
  extend(extend, 0);
  return out;
}

Axis parse_axis(std::string_view name) {
  if (name == "x" || name == "X") return Axis::kX;
  if (name == "y" || name == "Y") return Axis::kY;
  if (name == "z" || name == "Z") return Axis::kZ;
  throw ValidationError("unknown axis '" + std::string(name) + "' (expected x, y or z)");
}

char axis_name(Axis a) {
  switch (a) {
    case Axis::kX: return 'x';
    case Axis::kY: return 'y';
    case Axis::kZ: return 'z';
  }
  return '?';
}

ComplexMatrix pauli_matrix(Axis a) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  switch (a) {
    case Axis::kX: m << 0, 1, 1, 0; break;
    case Axis::kY: m << 0, -kI, kI, 0; break;
    case Axis::kZ: m << 1, 0, 0, -1; break;
  }
  return m;
}

ComplexMatrix embed(const ComplexMatrix& op, int offset, int n) {
  if (op.rows() != op.cols() || !is_power_of_two(op.rows()) || op.rows() < 2) {
    throw ValidationError("embedded operator dimension must be a power of two >= 2");
  }
  const int m = log2_dim(op.rows());
  if (offset < 0 || offset + m > n) {
    throw ValidationError("embedding of a " + std::to_string(m) + "-qubit operator at offset " +
                          std::to_string(offset) + " overflows " + std::to_string(n) + " qubits");
  }
  require_dense_capacity(n);
  const Eigen::Index left = Eigen::Index{1} << offset;
  const Eigen::Index right = Eigen::Index{1} << (n - offset - m);
  const Eigen::Index d = op.rows();
  ComplexMatrix out = ComplexMatrix::Zero(left * d * right, left * d * right);
  for (Eigen::Index l = 0; l < left; ++l)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        if (op(i, j) == cplx(0.0)) continue;
        for (Eigen::Index r = 0; r < right; ++r) {
          out((l * d + i) * right + r, (l * d + j) * right + r) = op(i, j);
        }
      }
  return out;
}

ComplexMatrix collective_spin(int n, Axis a) {
  if (n < 1) throw ValidationError("collective spin needs n >= 1");
  require_dense_capacity(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix j = ComplexMatrix::Zero(dim, dim);
  const ComplexMatrix s = 0.5 * pauli_matrix(a);
  for (int q = 0; q < n; ++q) j += embed(s, q, n);
  return j;
}

std::array<ComplexMatrix, 3> spin_j_operators(int dim) {
  if (dim < 2) throw ValidationError("spin-j operators need dim >= 2");
  const double s = (dim - 1) / 2.0;
  ComplexMatrix jp = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix jz = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double m = s - i;
    jz(i, i) = m;
    if (i > 0) jp(i - 1, i) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  const ComplexMatrix jm = jp.adjoint();
  return {(jp + jm) / 2.0, (jp - jm) / (2.0 * kI), jz};
}

OperatorSet make_operator_set(int num_qubits, std::vector<ComplexMatrix> ops,
                              std::vector<std::string> labels) {
  if (num_qubits < 1) throw ValidationError("operator set needs at least one qubit");
  if (ops.empty()) throw ValidationError("operator set is empty");
  if (labels.size() != ops.size()) throw ValidationError("one label per operator required");
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (ops[k].rows() != dim || ops[k].cols() != dim) {
      throw ValidationError("operator " + labels[k] + " has the wrong dimension");
    }
    if (hermiticity_defect(ops[k]) > 1e-10) {
      throw ValidationError("operator " + labels[k] + " is not Hermitian");
    }
  }
  return OperatorSet{num_qubits, std::move(ops), std::move(labels)};
}

OperatorSet collective_set(int n, std::span<const Axis> axes) {
  std::vector<ComplexMatrix> ops;
  std::vector<std::string> labels;
  for (Axis a : axes) {
    ops.push_back(collective_spin(n, a));
    labels.push_back(std::string("J") + axis_name(a));
  }
  return make_operator_set(n, std::move(ops), std::move(labels));
}

OperatorSet local_pauli_set(int n, Axis a) {
  std::vector<ComplexMatrix> ops;
  std::vector<std::string> labels;
  const ComplexMatrix s = 0.5 * pauli_matrix(a);
  for (int q = 0; q < n; ++q) {
    ops.push_back(embed(s, q, n));
    labels.push_back(std::string("sigma") + axis_name(a) + "/2@" + std::to_string(q));
  }
  return make_operator_set(n, std::move(ops), std::move(labels));
}

OperatorSet spin_j_set(int n, std::span<const Axis> axes) {
  require_dense_capacity(n);
  const auto j = spin_j_operators(1 << n);
  std::vector<ComplexMatrix> ops;
  std::vector<std::string> labels;
  for (Axis a : axes) {
    ops.push_back(j[static_cast<std::size_t>(a)]);
    labels.push_back(std::string("spinJ") + axis_name(a));
  }
  return make_operator_set(n, std::move(ops), std::move(labels));
}

OperatorSet sun_set(int n, int m_qubits, int offset, std::span<const int> indices, double scale) {
  if (m_qubits < 1 || m_qubits > n) {
    throw ValidationError("SU(2^m) block must satisfy 1 <= m <= n");
  }
  const int big_n = 1 << m_qubits;
  std::vector<ComplexMatrix> ops;
  std::vector<std::string> labels;
  for (int k : indices) {
    ops.push_back(embed(scale * su_generator(big_n, k), offset, n));
    labels.push_back("SU(" + std::to_string(big_n) + ")[" + std::to_string(k) + "]@" +
                     std::to_string(offset));
  }
  return make_operator_set(n, std::move(ops), std::move(labels));
}

}  // namespace graphmetro
