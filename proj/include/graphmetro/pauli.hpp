#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphmetro/types.hpp"

namespace graphmetro {

/// Global phase i^k of a Pauli string, k in {0,1,2,3}.
enum class Phase : std::uint8_t { kPlusOne = 0, kPlusI = 1, kMinusOne = 2, kMinusI = 3 };

Phase phase_product(Phase a, Phase b);
cplx phase_value(Phase p);

/// Phased n-qubit Pauli operator in symplectic form, n <= 64.
///
/// Site q carries I, X, Z or Y for (x_q, z_q) = (0,0), (1,0), (0,1), (1,1). Y is stored
/// as a site operator (not as the product XZ), so the string is Hermitian exactly when
/// its phase is +1 or -1.
class PauliString {
 public:
  static constexpr int kMaxQubits = 64;

  explicit PauliString(int num_qubits);
  PauliString(int num_qubits, std::uint64_t x_bits, std::uint64_t z_bits,
              Phase phase = Phase::kPlusOne);

  /// Parses labels such as "XZZ", "-YIY", "+iZ". Character q is qubit q.
  static PauliString from_label(std::string_view label);
  /// Single-site operator `op` in {'I','X','Y','Z'} on `qubit`.
  static PauliString single(int num_qubits, int qubit, char op);

  int num_qubits() const noexcept { return n_; }
  std::uint64_t x_bits() const noexcept { return x_; }
  std::uint64_t z_bits() const noexcept { return z_; }
  Phase phase() const noexcept { return phase_; }

  char site(int qubit) const;
  bool is_hermitian() const noexcept;
  bool is_identity() const noexcept { return x_ == 0 && z_ == 0; }
  bool commutes_with(const PauliString& other) const;
  /// Weight: number of non-identity sites.
  int weight() const noexcept;

  PauliString with_phase(Phase p) const { return PauliString(n_, x_, z_, p); }
  PauliString negated() const;

  /// Sign prefix ("", "-", "i", "-i") followed by one letter per site.
  std::string label() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_;
  std::uint64_t x_;
  std::uint64_t z_;
  Phase phase_;
};

/// Group product a*b with the accumulated phase.
PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }

/// Dense 2^n x 2^n matrix; qubit 0 is the leftmost Kronecker factor.
ComplexMatrix to_dense(const PauliString& p);

/// target += coeff * to_dense(p) without materialising the Pauli matrix.
void accumulate_dense(const PauliString& p, cplx coeff, ComplexMatrix& target);

/// Abelian group generated by n independent, commuting, Hermitian Pauli strings.
///
/// Membership is decided by reducing the symplectic vector of a query against a reduced
/// row-echelon tableau; the phase of the matching group element is recomputed from the
/// generators recorded for each row.
class StabilizerGroup {
 public:
  explicit StabilizerGroup(std::vector<PauliString> generators);

  int num_qubits() const noexcept { return n_; }
  const std::vector<PauliString>& generators() const noexcept { return generators_; }

  /// Product of the generators selected by bit i of `mask`.
  PauliString element(std::uint64_t mask) const;

  /// Generator subset whose product matches p up to phase, if p's symplectic part is in
  /// the span of the generators.
  std::optional<std::uint64_t> decompose(const PauliString& p) const;

  /// +1 if p is in the group, -1 if -p is, 0 otherwise. Equals Tr(p rho) for the
  /// stabilised state.
  int expectation(const PauliString& p) const;

 private:
  struct Row {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    std::uint64_t combo = 0;
    int pivot = -1;
  };

  int n_;
  std::vector<PauliString> generators_;
  std::vector<Row> tableau_;
};

int expectation_in_group(const PauliString& p, const StabilizerGroup& group);

}  // namespace graphmetro
