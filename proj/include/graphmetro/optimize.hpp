#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "graphmetro/graph_state.hpp"
#include "graphmetro/kernels.hpp"
#include "graphmetro/sun.hpp"

namespace graphmetro {

using Bounds = std::vector<std::pair<double, double>>;

struct PsoConfig {
  int swarm_size = 50;
  int iterations = 200;
  double inertia = 0.729;
  double cognitive = 1.494;
  double social = 1.494;
  Bounds bounds;  // empty means [-pi, pi] in every dimension; one entry applies to all
  std::uint64_t seed = 20240601;

  /// Bounds for a d-dimensional problem after applying the default.
  Bounds resolved_bounds(int d) const;
  void validate(int d) const;
};

struct OptResult {
  RealVector best_theta;
  double best_value = 0.0;
  std::vector<double> history;  // global best after each iteration
  long evaluations = 0;
};

/// Global-best particle swarm. Objective values for a whole swarm are evaluated as one
/// batch (in parallel under the OpenMP backend); random draws all come from one
/// coordinator-owned stream, so results depend only on the seed. NaN counts as +inf.
/// Throws OptimizationError when no finite value was ever seen.
OptResult particle_swarm(const kernels::PointObjective& f, int dim, const PsoConfig& cfg,
                         kernels::Backend backend = kernels::Backend::kOpenMP);

/// theta -> Tr(F^-1(theta)), +inf where the QFIM is singular.
kernels::PointObjective crb_objective(const DensityMatrix& rho0, const OperatorSet& ops);

OptResult minimize_crb(const DensityMatrix& rho0, const OperatorSet& ops, const PsoConfig& cfg,
                       kernels::Backend backend = kernels::Backend::kOpenMP);

struct GridResult {
  RealVector best_theta;
  double best_value = 0.0;
  long points = 0;
};

/// Exhaustive scan of a regular grid with `points_per_axis` nodes per dimension,
/// end points included.
GridResult grid_scan(const kernels::PointObjective& f, const Bounds& bounds,
                     int points_per_axis = 41,
                     kernels::Backend backend = kernels::Backend::kOpenMP);

struct FamilyMinimum {
  std::string name;
  OptResult result;
};

struct OrderingVerdict {
  std::size_t lower;  // index into entries expected to have the smaller minimum
  std::size_t upper;
  bool holds;         // entries[lower] <= entries[upper] + 1e-9
};

struct MinimaReport {
  std::vector<FamilyMinimum> entries;   // input order
  std::vector<std::size_t> ranking;     // entry indices by ascending minimum
  std::vector<OrderingVerdict> verdicts;  // one per adjacent pair in input order
};

MinimaReport compare_sun_minima(const DensityMatrix& rho0,
                                const std::vector<std::pair<std::string, OperatorSet>>& families,
                                const PsoConfig& cfg,
                                kernels::Backend backend = kernels::Backend::kOpenMP);

}  // namespace graphmetro
