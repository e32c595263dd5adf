#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphmetro/graph.hpp"
#include "graphmetro/optimize.hpp"
#include "graphmetro/sun.hpp"

namespace graphmetro::cli {

using nlohmann::json;

struct GraphSource {
  std::string catalog;  // empty when edges_path is used
  int n = 0;
  std::string edges_path;
};

/// One of su2_collective, su2_local_axis, spin_j, suN_global, suN_embedded.
struct DynamicsSource {
  std::string family = "su2_collective";
  std::vector<std::string> axes;  // su2_collective / spin_j; su2_local_axis uses axes[0]
  std::vector<int> indices;       // suN_*
  int m = 0;                      // suN_embedded block size in qubits
  int offset = 0;
  double scale = 1.0;
};

struct ThetaSpec {
  enum class Kind { kExplicit, kLimit, kSweep };
  Kind kind = Kind::kLimit;
  std::vector<double> values;  // explicit
  double start = 0.0;          // sweep along one axis from a base point
  double stop = 0.0;
  int points = 0;
  int axis = 0;
  std::vector<double> base;
};

struct MeasurementSpec {
  std::string kind;  // bell | computational | povm
  std::string povm_path;
};

struct OutputSpec {
  std::string format = "json";
  std::string path;  // empty: standard output
};

struct JobSpec {
  GraphSource graph;
  DynamicsSource dynamics;
  ThetaSpec theta;
  std::optional<MeasurementSpec> measurement;
  PsoConfig optimize;
  OutputSpec output;
  std::string method = "exact";  // exact | series | closed_form
  int series_order = 20;
  double mu = 1.0;
};

JobSpec job_from_json(const json& doc);
JobSpec load_job(const std::string& path);
/// Normalised echo of a job; feeding it back through job_from_json gives the same job.
json job_to_json(const JobSpec& job);

Graph resolve_graph(const GraphSource& src);
OperatorSet resolve_operators(const DynamicsSource& src, int n);
/// Points to evaluate. Limit yields one zero vector.
std::vector<RealVector> resolve_thetas(const ThetaSpec& spec, std::size_t d);

/// Parses "a,b,c" lists used by the command-line flags.
std::vector<double> parse_doubles(const std::string& text);
std::vector<int> parse_ints(const std::string& text);
ThetaSpec parse_theta_flag(const std::string& text);
/// "start:stop:points[:axis]".
ThetaSpec parse_sweep_flag(const std::string& text);
/// "lo:hi" applied to every dimension, or "lo:hi,lo:hi,..." per dimension.
Bounds parse_bounds_flag(const std::string& text);

}  // namespace graphmetro::cli
