#include "cli.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "graphmetro/dynamics.hpp"
#include "graphmetro/errors.hpp"
#include "graphmetro/graph_state.hpp"
#include "graphmetro/measurement.hpp"
#include "graphmetro/metrology.hpp"
#include "graphmetro/optimize.hpp"
#include "job.hpp"
#include "output.hpp"
#include "reproduce.hpp"

namespace graphmetro::cli {
namespace {

// Raw flag values; a flag overrides the --job file only when it was given.
struct JobFlags {
  std::string job_path;
  std::string catalog;
  int n = 0;
  std::string edges;
  std::string family;
  std::string axes;
  std::string indices;
  int m = 0;
  int offset = 0;
  double scale = 1.0;
  std::string theta;
  std::string sweep;
  std::string base;
  std::string method;
  int order = 20;
  std::string measurement;
  std::string povm;
  std::string format;
  std::string output;
  double mu = 1.0;
  int swarm = 0;
  int iterations = 0;
  double inertia = 0.0;
  double cognitive = 0.0;
  double social = 0.0;
  std::uint64_t seed = 0;
  std::string bounds;
};

void add_graph_flags(CLI::App* app, JobFlags& f) {
  app->add_option("--catalog", f.catalog, "Named graph: complete, chain, ring, star, "
                                          "triangle_pendant, diamond");
  app->add_option("--n", f.n, "Vertex count for --catalog");
  app->add_option("--edges", f.edges, "Edge-list file");
}

void add_job_flags(CLI::App* app, JobFlags& f) {
  app->add_option("--job", f.job_path, "JSON job file; other flags override its fields");
  add_graph_flags(app, f);
  app->add_option("--family", f.family,
                  "su2_collective | su2_local_axis | spin_j | suN_global | suN_embedded");
  app->add_option("--axis,--axes", f.axes, "Axis list, e.g. x,y,z");
  app->add_option("--indices", f.indices, "SU(N) generator indices, e.g. 0,13,14");
  app->add_option("--m", f.m, "Qubits spanned by an embedded SU(2^m) block");
  app->add_option("--offset", f.offset, "First qubit of the embedded block");
  app->add_option("--scale", f.scale, "Prefactor on SU(N) generators");
  app->add_option("--theta", f.theta, "Comma-separated theta, or 'limit'");
  app->add_option("--sweep", f.sweep, "start:stop:points[:axis]");
  app->add_option("--base", f.base, "Base point for --sweep");
  app->add_option("--method", f.method, "exact | series | closed_form");
  app->add_option("--order", f.order, "Series truncation order");
  app->add_option("--format", f.format, "json | csv");
  app->add_option("--output,-o", f.output, "Output file (default: stdout)");
  app->add_option("--mu", f.mu, "Repetition count in the Cramer-Rao bound");
}

void add_measurement_flags(CLI::App* app, JobFlags& f) {
  app->add_option("--measurement", f.measurement, "bell | computational | povm");
  app->add_option("--povm", f.povm, "POVM JSON file");
}

void add_pso_flags(CLI::App* app, JobFlags& f) {
  app->add_option("--swarm", f.swarm, "Swarm size");
  app->add_option("--iterations", f.iterations, "PSO iterations");
  app->add_option("--inertia", f.inertia);
  app->add_option("--cognitive", f.cognitive);
  app->add_option("--social", f.social);
  app->add_option("--seed", f.seed, "Random seed");
  app->add_option("--bounds", f.bounds, "lo:hi for every axis, or lo:hi,lo:hi,...");
}

bool given(const CLI::App* app, const char* flag) { return app->count(flag) > 0; }

JobSpec build_job(const CLI::App* app, const JobFlags& f) {
  JobSpec job;
  if (!f.job_path.empty()) job = load_job(f.job_path);
  if (given(app, "--catalog")) {
    job.graph = {f.catalog, f.n, ""};
  } else if (given(app, "--n")) {
    job.graph.n = f.n;
  }
  if (given(app, "--edges")) job.graph = {"", 0, f.edges};
  if (job.graph.catalog.empty() && job.graph.edges_path.empty()) {
    throw ValidationError("a graph is required: --catalog NAME --n N, --edges FILE or --job");
  }
  auto& d = job.dynamics;
  if (given(app, "--family")) d.family = f.family;
  if (given(app, "--axes")) {
    d.axes.clear();
    std::stringstream ss(f.axes);
    for (std::string a; std::getline(ss, a, ',');) d.axes.push_back(a);
  }
  if (given(app, "--indices")) d.indices = parse_ints(f.indices);
  if (given(app, "--m")) d.m = f.m;
  if (given(app, "--offset")) d.offset = f.offset;
  if (given(app, "--scale")) d.scale = f.scale;
  if (given(app, "--theta") && given(app, "--sweep")) {
    throw ValidationError("--theta and --sweep are mutually exclusive");
  }
  if (given(app, "--theta")) job.theta = parse_theta_flag(f.theta);
  if (given(app, "--sweep")) {
    job.theta = parse_sweep_flag(f.sweep);
    if (given(app, "--base")) job.theta.base = parse_doubles(f.base);
  }
  if (given(app, "--method")) job.method = f.method;
  if (given(app, "--order")) job.series_order = f.order;
  if (given(app, "--mu")) job.mu = f.mu;
  if (given(app, "--format")) job.output.format = f.format;
  if (given(app, "--output")) job.output.path = f.output;
  if (app->get_option_no_throw("--measurement") && given(app, "--measurement")) {
    job.measurement = MeasurementSpec{f.measurement, f.povm};
  }
  if (app->get_option_no_throw("--povm") && given(app, "--povm")) {
    job.measurement = MeasurementSpec{"povm", f.povm};
  }
  if (app->get_option_no_throw("--swarm")) {
    auto& c = job.optimize;
    if (given(app, "--swarm")) c.swarm_size = f.swarm;
    if (given(app, "--iterations")) c.iterations = f.iterations;
    if (given(app, "--inertia")) c.inertia = f.inertia;
    if (given(app, "--cognitive")) c.cognitive = f.cognitive;
    if (given(app, "--social")) c.social = f.social;
    if (given(app, "--seed")) c.seed = f.seed;
    if (given(app, "--bounds")) c.bounds = parse_bounds_flag(f.bounds);
  }
  if (job.output.format != "json" && job.output.format != "csv") {
    throw ValidationError("--format must be json or csv");
  }
  if (job.method != "exact" && job.method != "series" && job.method != "closed_form") {
    throw ValidationError("--method must be exact, series or closed_form");
  }
  return job;
}

// Everything a numerical command needs, resolved from a job.
struct Problem {
  JobSpec job;
  Graph graph;
  DensityMatrix rho0;
  OperatorSet ops;
  std::vector<RealVector> thetas;
};

Problem resolve(const JobSpec& job, std::ostream& err) {
  Graph g = resolve_graph(job.graph);
  if (!g.no_isolated()) {
    err << "warning: isolated vertices";
    for (int v : g.isolated_vertices()) err << ' ' << v;
    err << "; graph-state results assume none\n";
  }
  DensityMatrix rho0 = graph_state_stabilizer(g);
  OperatorSet ops = resolve_operators(job.dynamics, g.size());
  auto thetas = resolve_thetas(job.theta, ops.size());
  return Problem{job, std::move(g), std::move(rho0), std::move(ops), std::move(thetas)};
}

DynamicsSpec spec_at(const Problem& p, const RealVector& theta) {
  const ThetaMode mode =
      p.job.theta.kind == ThetaSpec::Kind::kLimit ? ThetaMode::kLimit : ThetaMode::kGeneral;
  return make_spec(p.ops, theta, mode);
}

ParamGenerators generators_for(const Problem& p, const DynamicsSpec& spec) {
  if (spec.mode == ThetaMode::kLimit) return param_generators_limit(spec);
  if (p.job.method == "series") return param_generators_series(spec, p.job.series_order);
  if (p.job.method == "closed_form") return closed_form_su2(spec);
  return param_generators_exact(spec);
}

// Writes either to the job's output path or to `out`.
class Sink {
 public:
  Sink(const OutputSpec& spec, std::ostream& out) {
    if (!spec.path.empty()) {
      file_ = open_output(spec.path);
      stream_ = &file_;
    } else {
      stream_ = &out;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

json envelope(const char* command, const Problem& p) {
  json doc;
  doc["command"] = command;
  doc["job"] = job_to_json(p.job);
  doc["num_qubits"] = p.graph.size();
  doc["labels"] = p.ops.labels;
  return doc;
}

void write_meta(CsvWriter& csv, const char* command, const Problem& p) {
  csv.meta("command", command);
  csv.meta("job", job_to_json(p.job).dump());
}

std::vector<std::string> theta_columns(std::size_t d) {
  std::vector<std::string> cols;
  for (std::size_t k = 0; k < d; ++k) cols.push_back("theta_" + std::to_string(k));
  return cols;
}

void append_matrix_columns(std::vector<std::string>& cols, const char* prefix, std::size_t d) {
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      cols.push_back(std::string(prefix) + "_" + std::to_string(j) + "_" + std::to_string(k));
}

void append_matrix_cells(std::vector<Cell>& cells, const RealMatrix& m) {
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    for (Eigen::Index k = 0; k < m.cols(); ++k) cells.emplace_back(m(j, k));
}

int cmd_graph(const CLI::App* app, const JobFlags& f, const std::string& format,
              std::ostream& out, std::ostream& err) {
  GraphSource src;
  if (given(app, "--edges")) {
    src.edges_path = f.edges;
  } else if (given(app, "--catalog")) {
    src = {f.catalog, f.n, ""};
  } else {
    throw ValidationError("graph needs --catalog NAME --n N or --edges FILE");
  }
  const Graph g = resolve_graph(src);
  const StabilizerGroup stab = stabilizer_generators(g);
  if (!g.no_isolated()) {
    err << "warning: isolated vertices";
    for (int v : g.isolated_vertices()) err << ' ' << v;
    err << '\n';
  }
  if (format == "json") {
    json doc;
    doc["n"] = g.size();
    json edges = json::array();
    for (auto [a, b] : g.edges()) edges.push_back({a, b});
    doc["edges"] = edges;
    json nbhd = json::array();
    for (int v = 0; v < g.size(); ++v) nbhd.push_back(g.neighborhood(v));
    doc["neighborhoods"] = nbhd;
    json gens = json::array();
    for (const auto& s : stab.generators()) gens.push_back(s.label());
    doc["stabilizers"] = gens;
    doc["topological_number"] = topological_number(g);
    doc["isolated_vertices"] = g.isolated_vertices();
    out << doc.dump() << '\n';
    return 0;
  }
  out << "n " << g.size() << '\n';
  out << "edges " << g.edge_count() << '\n';
  for (auto [a, b] : g.edges()) out << "  " << a << ' ' << b << '\n';
  out << "neighborhoods\n";
  for (int v = 0; v < g.size(); ++v) {
    out << "  N(" << v << ") = {";
    const auto nb = g.neighborhood(v);
    for (std::size_t i = 0; i < nb.size(); ++i) out << (i ? "," : "") << nb[i];
    out << "}\n";
  }
  out << "stabilizers\n";
  for (std::size_t i = 0; i < stab.generators().size(); ++i) {
    out << "  g" << i << " = " << stab.generators()[i].label() << '\n';
  }
  out << "T " << topological_number(g) << '\n';
  return 0;
}

int cmd_qfim(const JobSpec& job, std::ostream& out, std::ostream& err) {
  const Problem p = resolve(job, err);
  const std::size_t d = p.ops.size();
  std::vector<QfimResult> results(p.thetas.size());
  kernels::for_each_index(p.thetas.size(), [&](std::size_t i) {
    const DynamicsSpec spec = spec_at(p, p.thetas[i]);
    results[i] = qfim(p.rho0, generators_for(p, spec), kernels::Backend::kSerial);
  });
  bool singular = false;
  for (const auto& r : results) singular = singular || !r.invertible;

  Sink sink(job.output, out);
  if (job.output.format == "json") {
    json doc = envelope("qfim", p);
    doc["records"] = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      json rec;
      rec["theta"] = to_json(p.thetas[i]);
      rec["qfim"] = to_json(r.matrix);
      rec["rank"] = r.rank;
      rec["invertible"] = r.invertible;
      rec["crb"] = r.invertible ? json(*r.crb_trace / job.mu) : json(nullptr);
      rec["attainability"] = r.attainability;
      rec["null_space"] = columns_json(r.null_space);
      doc["records"].push_back(std::move(rec));
    }
    sink.get() << doc.dump() << '\n';
  } else {
    CsvWriter csv(sink.get());
    write_meta(csv, "qfim", p);
    auto cols = theta_columns(d);
    cols.insert(cols.end(), {"rank", "invertible", "crb", "attainability"});
    append_matrix_columns(cols, "F", d);
    csv.header(cols);
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      std::vector<Cell> cells;
      for (Eigen::Index k = 0; k < p.thetas[i].size(); ++k) cells.emplace_back(p.thetas[i](k));
      cells.emplace_back(static_cast<long>(r.rank));
      cells.emplace_back(static_cast<long>(r.invertible));
      cells.emplace_back(r.invertible ? Cell(*r.crb_trace / job.mu) : Cell());
      cells.emplace_back(r.attainability);
      append_matrix_cells(cells, r.matrix);
      csv.row(cells);
    }
  }
  if (singular) {
    err << "error: QFIM is singular at one or more points; parameters cannot be estimated "
           "simultaneously (see null_space)\n";
    return static_cast<int>(ExitCode::kSingularQfim);
  }
  return 0;
}

int cmd_qfi(const JobSpec& job, std::ostream& out, std::ostream& err) {
  const Problem p = resolve(job, err);
  std::vector<double> values;
  for (const auto& h : p.ops.operators) values.push_back(qfi_single(p.rho0, h));
  Sink sink(job.output, out);
  if (job.output.format == "json") {
    json doc = envelope("qfi", p);
    doc["records"] = json::array();
    for (std::size_t k = 0; k < values.size(); ++k) {
      doc["records"].push_back({{"label", p.ops.labels[k]}, {"qfi", values[k]}});
    }
    sink.get() << doc.dump() << '\n';
  } else {
    CsvWriter csv(sink.get());
    write_meta(csv, "qfi", p);
    csv.header({"label", "qfi"});
    for (std::size_t k = 0; k < values.size(); ++k) csv.row({p.ops.labels[k], values[k]});
  }
  return 0;
}

int cmd_fave(const JobSpec& job, std::ostream& out, std::ostream& err) {
  const Problem p = resolve(job, err);
  const double value = f_ave(p.rho0, p.ops);
  Sink sink(job.output, out);
  if (job.output.format == "json") {
    json doc = envelope("fave", p);
    doc["f_ave"] = value;
    sink.get() << doc.dump() << '\n';
  } else {
    CsvWriter csv(sink.get());
    write_meta(csv, "fave", p);
    csv.header({"f_ave"});
    csv.row({value});
  }
  return 0;
}

Povm resolve_povm(const JobSpec& job, int n) {
  const MeasurementSpec ms = job.measurement.value_or(MeasurementSpec{"bell", ""});
  if (ms.kind == "bell") {
    if (n != 2) throw ValidationError("the Bell measurement needs a 2-qubit graph");
    return bell_basis();
  }
  if (ms.kind == "computational") return computational_basis(n);
  if (ms.kind == "povm") return load_povm(ms.povm_path);
  throw ValidationError("unknown measurement '" + ms.kind + "'");
}

int cmd_cfim(const JobSpec& job, std::ostream& out, std::ostream& err) {
  const Problem p = resolve(job, err);
  const Povm povm = resolve_povm(job, p.graph.size());
  const std::size_t d = p.ops.size();
  std::vector<CfimComparison> results(p.thetas.size());
  kernels::for_each_index(p.thetas.size(), [&](std::size_t i) {
    results[i] = cfim_vs_qfim(p.rho0, spec_at(p, p.thetas[i]), povm);
  });
  Sink sink(job.output, out);
  if (job.output.format == "json") {
    json doc = envelope("cfim", p);
    doc["povm_labels"] = povm.labels();
    doc["records"] = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      json rec;
      rec["theta"] = to_json(p.thetas[i]);
      rec["probabilities"] = to_json(r.cfim.probabilities);
      rec["dropped_outcomes"] = r.cfim.dropped_outcomes;
      rec["cfim"] = to_json(r.cfim.matrix);
      rec["qfim"] = to_json(r.qfim.matrix);
      rec["max_abs_difference"] = r.max_abs_difference;
      rec["slack_eigenvalues"] = to_json(r.slack_eigenvalues);
      doc["records"].push_back(std::move(rec));
    }
    sink.get() << doc.dump() << '\n';
  } else {
    CsvWriter csv(sink.get());
    write_meta(csv, "cfim", p);
    auto cols = theta_columns(d);
    append_matrix_columns(cols, "Fc", d);
    append_matrix_columns(cols, "F", d);
    cols.push_back("max_abs_difference");
    for (std::size_t k = 0; k < d; ++k) cols.push_back("slack_" + std::to_string(k));
    csv.header(cols);
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      std::vector<Cell> cells;
      for (Eigen::Index k = 0; k < p.thetas[i].size(); ++k) cells.emplace_back(p.thetas[i](k));
      append_matrix_cells(cells, r.cfim.matrix);
      append_matrix_cells(cells, r.qfim.matrix);
      cells.emplace_back(r.max_abs_difference);
      for (Eigen::Index k = 0; k < r.slack_eigenvalues.size(); ++k)
        cells.emplace_back(r.slack_eigenvalues(k));
      csv.row(cells);
    }
  }
  return 0;
}

json pso_config_json(const PsoConfig& c, int d) {
  json bounds = json::array();
  for (auto [lo, hi] : c.resolved_bounds(d)) bounds.push_back({lo, hi});
  return {{"swarm_size", c.swarm_size}, {"iterations", c.iterations}, {"inertia", c.inertia},
          {"cognitive", c.cognitive},   {"social", c.social},         {"seed", c.seed},
          {"bounds", bounds}};
}

int cmd_optimize(const JobSpec& job, int grid_points, std::ostream& out, std::ostream& err) {
  const Problem p = resolve(job, err);
  const int d = static_cast<int>(p.ops.size());
  const OptResult r = minimize_crb(p.rho0, p.ops, job.optimize);
  std::optional<GridResult> grid;
  if (grid_points > 0) {
    grid = grid_scan(crb_objective(p.rho0, p.ops), job.optimize.resolved_bounds(d), grid_points);
  }
  Sink sink(job.output, out);
  if (job.output.format == "json") {
    json doc = envelope("optimize", p);
    doc["config"] = pso_config_json(job.optimize, d);
    doc["best_theta"] = to_json(r.best_theta);
    doc["best_value"] = r.best_value;
    doc["crb"] = r.best_value / job.mu;
    doc["history"] = r.history;
    doc["evaluations"] = r.evaluations;
    if (grid) {
      doc["grid"] = {{"points_per_axis", grid_points},
                     {"best_theta", to_json(grid->best_theta)},
                     {"best_value", grid->best_value},
                     {"pso_not_worse", r.best_value <= grid->best_value + 1e-6}};
    }
    sink.get() << doc.dump() << '\n';
  } else {
    CsvWriter csv(sink.get());
    write_meta(csv, "optimize", p);
    csv.meta("config", pso_config_json(job.optimize, d).dump());
    std::string best;
    for (Eigen::Index k = 0; k < r.best_theta.size(); ++k)
      best += (k ? " " : "") + fmt17(r.best_theta(k));
    csv.meta("best_theta", best);
    csv.meta("best_value", fmt17(r.best_value));
    if (grid) csv.meta("grid_best_value", fmt17(grid->best_value));
    csv.header({"iteration", "best_value"});
    for (std::size_t i = 0; i < r.history.size(); ++i) {
      csv.row({static_cast<long>(i + 1), r.history[i]});
    }
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Fisher information of graph states under SU(N) dynamics", "graphmetro"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  JobFlags f;
  std::string graph_format = "text";
  auto* graph = app.add_subcommand("graph", "Describe a graph and its stabilizers");
  add_graph_flags(graph, f);
  graph->add_option("--format", graph_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* qfim_cmd = app.add_subcommand("qfim", "Quantum Fisher information matrix");
  add_job_flags(qfim_cmd, f);
  auto* qfi_cmd = app.add_subcommand("qfi", "Single-parameter QFI of each operator");
  add_job_flags(qfi_cmd, f);
  auto* fave_cmd = app.add_subcommand("fave", "Averaged QFI");
  add_job_flags(fave_cmd, f);
  auto* cfim_cmd = app.add_subcommand("cfim", "Classical Fisher information of a measurement");
  add_job_flags(cfim_cmd, f);
  add_measurement_flags(cfim_cmd, f);
  int grid_points = 0;
  auto* opt_cmd = app.add_subcommand("optimize", "Minimise Tr(F^-1) by particle swarm");
  add_job_flags(opt_cmd, f);
  add_pso_flags(opt_cmd, f);
  opt_cmd->add_option("--grid", grid_points, "Also scan a grid with this many points per axis");

  std::string figure;
  std::string outdir = "figures";
  std::uint64_t seed = PsoConfig{}.seed;
  auto* rep = app.add_subcommand("reproduce", "Write the CSV datasets of a figure");
  rep->add_option("figure", figure, "fig2 | fig3 | fig4 | fig5 | fig6 | all")->required();
  rep->add_option("--outdir", outdir, "Output directory");
  rep->add_option("--seed", seed, "PSO seed (fig5)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kValidation);
  }

  try {
    if (graph->parsed()) return cmd_graph(graph, f, graph_format, out, err);
    if (rep->parsed()) {
      const std::vector<std::string> figs =
          figure == "all" ? kFigures : std::vector<std::string>{figure};
      for (const auto& fig : figs) {
        for (const auto& path : reproduce(fig, outdir, seed, err)) out << path.string() << '\n';
      }
      return 0;
    }
    if (qfim_cmd->parsed()) return cmd_qfim(build_job(qfim_cmd, f), out, err);
    if (qfi_cmd->parsed()) return cmd_qfi(build_job(qfi_cmd, f), out, err);
    if (fave_cmd->parsed()) return cmd_fave(build_job(fave_cmd, f), out, err);
    if (cfim_cmd->parsed()) return cmd_cfim(build_job(cfim_cmd, f), out, err);
    if (opt_cmd->parsed()) return cmd_optimize(build_job(opt_cmd, f), grid_points, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kIo);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kValidation);
  }
  return static_cast<int>(ExitCode::kValidation);
}

}  // namespace graphmetro::cli
