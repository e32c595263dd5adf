#include "graphmetro/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "graphmetro/dynamics.hpp"
#include "graphmetro/errors.hpp"
#include "graphmetro/metrology.hpp"

namespace graphmetro {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sanitize(double v) { return std::isnan(v) ? kInf : v; }

}  // namespace

Bounds PsoConfig::resolved_bounds(int d) const {
  if (bounds.empty()) return Bounds(static_cast<std::size_t>(d), {-std::numbers::pi, std::numbers::pi});
  if (bounds.size() == 1) return Bounds(static_cast<std::size_t>(d), bounds.front());
  return bounds;
}

void PsoConfig::validate(int d) const {
  if (d < 1) throw ValidationError("optimisation needs at least one dimension");
  if (swarm_size < 2) throw ValidationError("swarm_size must be >= 2");
  if (iterations < 1) throw ValidationError("iterations must be >= 1");
  if (!(inertia > 0 && cognitive > 0 && social > 0)) {
    throw ValidationError("PSO coefficients must be positive");
  }
  const Bounds b = resolved_bounds(d);
  if (static_cast<int>(b.size()) != d) {
    throw ValidationError("PSO bounds have " + std::to_string(b.size()) + " entries, expected " +
                          std::to_string(d));
  }
  for (auto [lo, hi] : b) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi)) {
      throw ValidationError("PSO bounds must be finite intervals with lo <= hi");
    }
  }
}

OptResult particle_swarm(const kernels::PointObjective& f, int dim, const PsoConfig& cfg,
                         kernels::Backend backend) {
  cfg.validate(dim);
  const Bounds bounds = cfg.resolved_bounds(dim);
  const auto np = static_cast<std::size_t>(cfg.swarm_size);
  const auto nd = static_cast<std::size_t>(dim);
  std::vector<double> vmax(nd);
  for (std::size_t k = 0; k < nd; ++k) vmax[k] = 0.5 * (bounds[k].second - bounds[k].first);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::vector<double>> x(np, std::vector<double>(nd));
  std::vector<std::vector<double>> v(np, std::vector<double>(nd));
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t k = 0; k < nd; ++k) {
      x[p][k] = bounds[k].first + unit(rng) * (bounds[k].second - bounds[k].first);
      v[p][k] = (2.0 * unit(rng) - 1.0) * vmax[k];
    }
  }

  OptResult out;
  auto values = kernels::evaluate_batch(f, x, backend);
  out.evaluations += static_cast<long>(np);
  std::vector<std::vector<double>> pbest = x;
  std::vector<double> pbest_val(np);
  std::transform(values.begin(), values.end(), pbest_val.begin(), sanitize);
  std::size_t g = static_cast<std::size_t>(
      std::min_element(pbest_val.begin(), pbest_val.end()) - pbest_val.begin());
  std::vector<double> gbest = pbest[g];
  double gbest_val = pbest_val[g];

  for (int it = 0; it < cfg.iterations; ++it) {
    for (std::size_t p = 0; p < np; ++p) {
      for (std::size_t k = 0; k < nd; ++k) {
        const double r1 = unit(rng), r2 = unit(rng);
        double vel = cfg.inertia * v[p][k] + cfg.cognitive * r1 * (pbest[p][k] - x[p][k]) +
                     cfg.social * r2 * (gbest[k] - x[p][k]);
        vel = std::clamp(vel, -vmax[k], vmax[k]);
        double pos = x[p][k] + vel;
        if (pos < bounds[k].first || pos > bounds[k].second) {
          pos = std::clamp(pos, bounds[k].first, bounds[k].second);
          vel = 0.0;
        }
        x[p][k] = pos;
        v[p][k] = vel;
      }
    }
    values = kernels::evaluate_batch(f, x, backend);
    out.evaluations += static_cast<long>(np);
    // Barrier: bests are updated serially in particle order.
    for (std::size_t p = 0; p < np; ++p) {
      const double val = sanitize(values[p]);
      if (val < pbest_val[p]) {
        pbest_val[p] = val;
        pbest[p] = x[p];
        if (val < gbest_val) {
          gbest_val = val;
          gbest = x[p];
        }
      }
    }
    out.history.push_back(gbest_val);
  }

  if (!std::isfinite(gbest_val)) {
    throw OptimizationError("objective was infinite at every sampled point");
  }
  out.best_theta = Eigen::Map<const RealVector>(gbest.data(), dim);
  out.best_value = gbest_val;
  return out;
}

kernels::PointObjective crb_objective(const DensityMatrix& rho0, const OperatorSet& ops) {
  return [rho0, ops](std::span<const double> theta) {
    RealVector t = Eigen::Map<const RealVector>(theta.data(), static_cast<Eigen::Index>(theta.size()));
    const QfimResult r =
        qfim(rho0, param_generators_exact(make_spec(ops, std::move(t))), kernels::Backend::kSerial);
    return r.invertible ? *r.crb_trace : kInf;
  };
}

OptResult minimize_crb(const DensityMatrix& rho0, const OperatorSet& ops, const PsoConfig& cfg,
                       kernels::Backend backend) {
  if (rho0.dim() != ops.dim()) throw ValidationError("operators do not act on the state");
  return particle_swarm(crb_objective(rho0, ops), static_cast<int>(ops.size()), cfg, backend);
}

GridResult grid_scan(const kernels::PointObjective& f, const Bounds& bounds, int points_per_axis,
                     kernels::Backend backend) {
  if (bounds.empty()) throw ValidationError("grid scan needs at least one dimension");
  if (points_per_axis < 2) throw ValidationError("grid scan needs >= 2 points per axis");
  const std::size_t nd = bounds.size();
  std::size_t total = 1;
  for (std::size_t k = 0; k < nd; ++k) total *= static_cast<std::size_t>(points_per_axis);

  auto node = [&](std::size_t flat) {
    std::vector<double> pt(nd);
    for (std::size_t k = 0; k < nd; ++k) {
      const auto i = flat % static_cast<std::size_t>(points_per_axis);
      flat /= static_cast<std::size_t>(points_per_axis);
      const auto [lo, hi] = bounds[k];
      pt[k] = lo + (hi - lo) * static_cast<double>(i) / (points_per_axis - 1);
    }
    return pt;
  };

  std::vector<double> values(total);
  kernels::for_each_index(
      total, [&](std::size_t i) { values[i] = sanitize(f(node(i))); }, backend);
  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  const auto pt = node(best);
  GridResult r;
  r.best_theta = Eigen::Map<const RealVector>(pt.data(), static_cast<Eigen::Index>(nd));
  r.best_value = values[best];
  r.points = static_cast<long>(total);
  return r;
}

MinimaReport compare_sun_minima(const DensityMatrix& rho0,
                                const std::vector<std::pair<std::string, OperatorSet>>& families,
                                const PsoConfig& cfg, kernels::Backend backend) {
  if (families.empty()) throw ValidationError("no dynamics families to compare");
  MinimaReport report;
  for (const auto& [name, ops] : families) {
    PsoConfig c = cfg;
    if (c.bounds.size() != 1 && c.bounds.size() != ops.size()) c.bounds.clear();  // default box per family
    report.entries.push_back({name, minimize_crb(rho0, ops, c, backend)});
  }
  report.ranking.resize(report.entries.size());
  std::iota(report.ranking.begin(), report.ranking.end(), std::size_t{0});
  std::stable_sort(report.ranking.begin(), report.ranking.end(), [&](auto a, auto b) {
    return report.entries[a].result.best_value < report.entries[b].result.best_value;
  });
  for (std::size_t i = 0; i + 1 < report.entries.size(); ++i) {
    report.verdicts.push_back({i, i + 1,
                               report.entries[i].result.best_value <=
                                   report.entries[i + 1].result.best_value + 1e-9});
  }
  return report;
}

}  // namespace graphmetro
