#include "graphmetro/pauli.hpp"

#include <bit>
#include <string>

#include "graphmetro/errors.hpp"

namespace graphmetro {
namespace {

std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

bool bit(std::uint64_t word, int q) { return (word >> q) & 1U; }

// Exponent of i picked up by the single-site product (x1,z1)*(x2,z2) when Y is a site
// operator: X*Z = -iY, Z*X = iY, Y*X = -iZ, ...
int site_phase_exponent(bool x1, bool z1, bool x2, bool z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return int(z2) - int(x2);
  if (x1) return int(z2) * (2 * int(x2) - 1);
  return int(x2) * (1 - 2 * int(z2));
}

// Bit position of qubit q inside a dense basis index (qubit 0 is most significant).
std::uint64_t dense_mask(std::uint64_t bits, int n) {
  std::uint64_t out = 0;
  for (int q = 0; q < n; ++q) {
    if (bit(bits, q)) out |= std::uint64_t{1} << (n - 1 - q);
  }
  return out;
}

}  // namespace

Phase phase_product(Phase a, Phase b) {
  return static_cast<Phase>((static_cast<int>(a) + static_cast<int>(b)) & 3);
}

cplx phase_value(Phase p) {
  switch (p) {
    case Phase::kPlusOne: return {1.0, 0.0};
    case Phase::kPlusI: return {0.0, 1.0};
    case Phase::kMinusOne: return {-1.0, 0.0};
    case Phase::kMinusI: return {0.0, -1.0};
  }
  return {1.0, 0.0};
}

PauliString::PauliString(int num_qubits) : PauliString(num_qubits, 0, 0, Phase::kPlusOne) {}

PauliString::PauliString(int num_qubits, std::uint64_t x_bits, std::uint64_t z_bits, Phase phase)
    : n_(num_qubits), x_(x_bits), z_(z_bits), phase_(phase) {
  if (n_ < 1 || n_ > kMaxQubits) {
    throw ValidationError("Pauli string qubit count must be in [1, 64], got " +
                          std::to_string(n_));
  }
  const std::uint64_t outside = ~low_mask(n_);
  if ((x_ & outside) != 0 || (z_ & outside) != 0) {
    throw ValidationError("Pauli string has bits set beyond qubit " + std::to_string(n_ - 1));
  }
}

PauliString PauliString::from_label(std::string_view label) {
  Phase phase = Phase::kPlusOne;
  if (label.starts_with("+i")) {
    phase = Phase::kPlusI;
    label.remove_prefix(2);
  } else if (label.starts_with("-i")) {
    phase = Phase::kMinusI;
    label.remove_prefix(2);
  } else if (label.starts_with("i")) {
    phase = Phase::kPlusI;
    label.remove_prefix(1);
  } else if (label.starts_with("-")) {
    phase = Phase::kMinusOne;
    label.remove_prefix(1);
  } else if (label.starts_with("+")) {
    label.remove_prefix(1);
  }
  if (label.empty() || label.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw ValidationError("Pauli label must have between 1 and 64 sites");
  }
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (std::size_t q = 0; q < label.size(); ++q) {
    const std::uint64_t m = std::uint64_t{1} << q;
    switch (label[q]) {
      case 'I': break;
      case 'X': x |= m; break;
      case 'Z': z |= m; break;
      case 'Y': x |= m; z |= m; break;
      default:
        throw ValidationError(std::string("invalid Pauli site character '") + label[q] + "'");
    }
  }
  return PauliString(static_cast<int>(label.size()), x, z, phase);
}

PauliString PauliString::single(int num_qubits, int qubit, char op) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw ValidationError("qubit " + std::to_string(qubit) + " out of range");
  }
  std::string label(static_cast<std::size_t>(num_qubits), 'I');
  label[static_cast<std::size_t>(qubit)] = op;
  return from_label(label);
}

char PauliString::site(int qubit) const {
  const bool xb = bit(x_, qubit);
  const bool zb = bit(z_, qubit);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

bool PauliString::is_hermitian() const noexcept {
  return phase_ == Phase::kPlusOne || phase_ == Phase::kMinusOne;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.n_ != n_) throw ValidationError("Pauli strings act on different qubit counts");
  return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
}

int PauliString::weight() const noexcept { return std::popcount(x_ | z_); }

PauliString PauliString::negated() const {
  return with_phase(phase_product(phase_, Phase::kMinusOne));
}

std::string PauliString::label() const {
  std::string out;
  switch (phase_) {
    case Phase::kPlusOne: break;
    case Phase::kPlusI: out = "i"; break;
    case Phase::kMinusOne: out = "-"; break;
    case Phase::kMinusI: out = "-i"; break;
  }
  for (int q = 0; q < n_; ++q) out.push_back(site(q));
  return out;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw ValidationError("cannot multiply Pauli strings on " + std::to_string(a.num_qubits()) +
                          " and " + std::to_string(b.num_qubits()) + " qubits");
  }
  int exponent = static_cast<int>(a.phase()) + static_cast<int>(b.phase());
  const std::uint64_t active = (a.x_bits() | a.z_bits()) & (b.x_bits() | b.z_bits());
  for (int q = 0; q < a.num_qubits(); ++q) {
    if (!bit(active, q)) continue;
    exponent += site_phase_exponent(bit(a.x_bits(), q), bit(a.z_bits(), q), bit(b.x_bits(), q),
                                    bit(b.z_bits(), q));
  }
  return PauliString(a.num_qubits(), a.x_bits() ^ b.x_bits(), a.z_bits() ^ b.z_bits(),
                     static_cast<Phase>(((exponent % 4) + 4) % 4));
}

void accumulate_dense(const PauliString& p, cplx coeff, ComplexMatrix& target) {
  const int n = p.num_qubits();
  require_dense_capacity(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (target.rows() != dim || target.cols() != dim) {
    throw ValidationError("accumulate_dense: target has wrong dimension");
  }
  const std::uint64_t xd = dense_mask(p.x_bits(), n);
  const std::uint64_t zd = dense_mask(p.z_bits(), n);
  // Y = iXZ on each Y site, hence the extra i^{#Y}.
  const int y_count = std::popcount(p.x_bits() & p.z_bits());
  const cplx base = coeff * phase_value(p.phase()) *
                    phase_value(static_cast<Phase>(y_count & 3));
  for (std::uint64_t col = 0; col < static_cast<std::uint64_t>(dim); ++col) {
    const bool negative = (std::popcount(col & zd) & 1) != 0;
    target(static_cast<Eigen::Index>(col ^ xd), static_cast<Eigen::Index>(col)) +=
        negative ? -base : base;
  }
}

ComplexMatrix to_dense(const PauliString& p) {
  require_dense_capacity(p.num_qubits());
  const Eigen::Index dim = Eigen::Index{1} << p.num_qubits();
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  accumulate_dense(p, 1.0, out);
  return out;
}

StabilizerGroup::StabilizerGroup(std::vector<PauliString> generators)
    : n_(generators.empty() ? 0 : generators.front().num_qubits()),
      generators_(std::move(generators)) {
  if (generators_.empty()) throw ValidationError("stabilizer group needs at least one generator");
  if (static_cast<int>(generators_.size()) > n_) {
    throw ValidationError("more generators than qubits cannot be independent");
  }
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.num_qubits() != n_) throw ValidationError("generators act on different qubit counts");
    if (!g.is_hermitian()) throw DomainError("generator " + g.label() + " is not Hermitian");
    for (std::size_t j = 0; j < i; ++j) {
      if (!g.commutes_with(generators_[j])) {
        throw DomainError("generators " + generators_[j].label() + " and " + g.label() +
                          " anticommute");
      }
    }
  }

  tableau_.resize(generators_.size());
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    tableau_[i] = Row{generators_[i].x_bits(), generators_[i].z_bits(), std::uint64_t{1} << i, -1};
  }
  auto column_bit = [this](const Row& r, int c) {
    return c < n_ ? bit(r.x, c) : bit(r.z, c - n_);
  };
  std::size_t next = 0;
  for (int c = 0; c < 2 * n_ && next < tableau_.size(); ++c) {
    std::size_t pivot = next;
    while (pivot < tableau_.size() && !column_bit(tableau_[pivot], c)) ++pivot;
    if (pivot == tableau_.size()) continue;
    std::swap(tableau_[next], tableau_[pivot]);
    tableau_[next].pivot = c;
    for (std::size_t r = 0; r < tableau_.size(); ++r) {
      if (r != next && column_bit(tableau_[r], c)) {
        tableau_[r].x ^= tableau_[next].x;
        tableau_[r].z ^= tableau_[next].z;
        tableau_[r].combo ^= tableau_[next].combo;
      }
    }
    ++next;
  }
  if (next != tableau_.size()) throw DomainError("stabilizer generators are not independent");
}

PauliString StabilizerGroup::element(std::uint64_t mask) const {
  PauliString out(n_);
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (bit(mask, static_cast<int>(i))) out = multiply(out, generators_[i]);
  }
  return out;
}

std::optional<std::uint64_t> StabilizerGroup::decompose(const PauliString& p) const {
  if (p.num_qubits() != n_) {
    throw ValidationError("Pauli string on " + std::to_string(p.num_qubits()) +
                          " qubits queried against a " + std::to_string(n_) + "-qubit group");
  }
  std::uint64_t x = p.x_bits();
  std::uint64_t z = p.z_bits();
  std::uint64_t combo = 0;
  for (const Row& r : tableau_) {
    const bool set = r.pivot < n_ ? bit(x, r.pivot) : bit(z, r.pivot - n_);
    if (set) {
      x ^= r.x;
      z ^= r.z;
      combo ^= r.combo;
    }
  }
  if (x != 0 || z != 0) return std::nullopt;
  return combo;
}

int StabilizerGroup::expectation(const PauliString& p) const {
  if (!p.is_hermitian()) throw DomainError("expectation requires a Hermitian Pauli string");
  const auto combo = decompose(p);
  if (!combo) return 0;
  const PauliString g = element(*combo);
  if (g.phase() == p.phase()) return 1;
  if (g.phase() == phase_product(p.phase(), Phase::kMinusOne)) return -1;
  // Group elements are Hermitian, so an imaginary mismatch cannot occur for valid groups.
  return 0;
}

int expectation_in_group(const PauliString& p, const StabilizerGroup& group) {
  return group.expectation(p);
}

}  // namespace graphmetro
