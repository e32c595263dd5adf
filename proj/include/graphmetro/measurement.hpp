#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphmetro/dynamics.hpp"
#include "graphmetro/graph_state.hpp"
#include "graphmetro/metrology.hpp"

namespace graphmetro {

/// PSD elements summing to the identity (both within 1e-10).
class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> elements, std::vector<std::string> labels = {});

  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return elements_.size(); }
  Eigen::Index dim() const noexcept { return elements_.front().rows(); }

 private:
  std::vector<ComplexMatrix> elements_;
  std::vector<std::string> labels_;
};

/// Projectors onto (|00> + |11>)/sqrt2, (|00> - |11>)/sqrt2, (|01> + |10>)/sqrt2,
/// (|01> - |10>)/sqrt2, in that order.
Povm bell_basis();
Povm computational_basis(int num_qubits);
/// The single element {I}: carries no information.
Povm identity_povm(Eigen::Index dim);

/// JSON document {"dim": d, "elements": [M_0, M_1, ...]}, each M a list of d rows of
/// d entries; an entry is [re, im] or a bare real number. Optional "labels" array.
Povm parse_povm(std::istream& in);
Povm load_povm(const std::filesystem::path& path);
void write_povm(const Povm& povm, std::ostream& out);

/// Born-rule distribution; tiny negative values from roundoff are clipped and the
/// vector renormalised.
RealVector probabilities(const DensityMatrix& rho, const Povm& povm);

enum class DerivativeMode { kAnalytic, kFiniteDifference };

struct CfimResult {
  RealMatrix matrix;
  RealVector probabilities;
  std::vector<int> dropped_outcomes;  // p < 1e-12
};

/// d_j p_m per outcome (rows) and parameter (columns). Analytic mode uses
/// Tr(Pi_m i U [H_j, rho0] U^dag); finite differences use a central step.
RealMatrix probability_jacobian(const DensityMatrix& rho0, const DynamicsSpec& spec,
                                const Povm& povm,
                                DerivativeMode mode = DerivativeMode::kAnalytic,
                                double step = 1e-5);

CfimResult cfim(const DensityMatrix& rho0, const DynamicsSpec& spec, const Povm& povm,
                DerivativeMode mode = DerivativeMode::kAnalytic);

struct CfimComparison {
  QfimResult qfim;
  CfimResult cfim;
  RealMatrix difference;  // F - F_c
  double max_abs_difference = 0.0;
  RealVector slack_eigenvalues;  // ascending eigenvalues of F - F_c
};

CfimComparison cfim_vs_qfim(const DensityMatrix& rho0, const DynamicsSpec& spec,
                            const Povm& povm);

}  // namespace graphmetro
