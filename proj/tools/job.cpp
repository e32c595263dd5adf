#include "job.hpp"

#include <fstream>
#include <sstream>

#include "graphmetro/errors.hpp"

namespace graphmetro::cli {
namespace {

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("job field \"") + key + "\" has the wrong type");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + s + "'");
  }
}

int to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("not an integer: '" + s + "'");
  }
}

}  // namespace

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(to_double(p));
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (const auto& p : split(text, ',')) out.push_back(to_int(p));
  return out;
}

ThetaSpec parse_theta_flag(const std::string& text) {
  ThetaSpec t;
  if (text == "limit") return t;
  t.kind = ThetaSpec::Kind::kExplicit;
  t.values = parse_doubles(text);
  return t;
}

ThetaSpec parse_sweep_flag(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3 && parts.size() != 4) {
    throw ValidationError("sweep must be start:stop:points[:axis]");
  }
  ThetaSpec t;
  t.kind = ThetaSpec::Kind::kSweep;
  t.start = to_double(parts[0]);
  t.stop = to_double(parts[1]);
  t.points = to_int(parts[2]);
  if (parts.size() == 4) t.axis = to_int(parts[3]);
  if (t.points < 2) throw ValidationError("sweep needs at least 2 points");
  return t;
}

Bounds parse_bounds_flag(const std::string& text) {
  Bounds b;
  for (const auto& part : split(text, ',')) {
    const auto lh = split(part, ':');
    if (lh.size() != 2) throw ValidationError("bounds must be lo:hi");
    b.emplace_back(to_double(lh[0]), to_double(lh[1]));
  }
  return b;
}

JobSpec job_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("job must be a JSON object");
  JobSpec job;

  if (!doc.contains("graph")) throw ValidationError("job needs a \"graph\"");
  const json& g = doc["graph"];
  if (g.is_string()) {
    job.graph.edges_path = g.get<std::string>();
  } else if (g.is_object()) {
    job.graph.catalog = get_or<std::string>(g, "catalog", "");
    job.graph.n = get_or<int>(g, "n", 0);
    job.graph.edges_path = get_or<std::string>(g, "edges", "");
  } else {
    throw ValidationError("\"graph\" must be an object or an edge-list path");
  }
  if (job.graph.catalog.empty() == job.graph.edges_path.empty()) {
    throw ValidationError("graph needs exactly one of \"catalog\" or \"edges\"");
  }

  if (doc.contains("dynamics")) {
    const json& d = doc["dynamics"];
    if (!d.is_object()) throw ValidationError("\"dynamics\" must be an object");
    job.dynamics.family = get_or<std::string>(d, "family", job.dynamics.family);
    job.dynamics.axes = get_or<std::vector<std::string>>(d, "axes", {});
    if (d.contains("axis")) job.dynamics.axes = {get_or<std::string>(d, "axis", "x")};
    job.dynamics.indices = get_or<std::vector<int>>(d, "indices", {});
    job.dynamics.m = get_or<int>(d, "m", 0);
    job.dynamics.offset = get_or<int>(d, "offset", 0);
    job.dynamics.scale = get_or<double>(d, "scale", 1.0);
  }

  if (doc.contains("theta")) {
    const json& t = doc["theta"];
    if (t.is_string()) {
      if (t.get<std::string>() != "limit") throw ValidationError("theta string must be \"limit\"");
    } else if (t.is_array()) {
      job.theta.kind = ThetaSpec::Kind::kExplicit;
      job.theta.values = get_or<std::vector<double>>(doc, "theta", {});
    } else if (t.is_object() && t.contains("sweep")) {
      const json& s = t["sweep"];
      job.theta.kind = ThetaSpec::Kind::kSweep;
      job.theta.start = get_or<double>(s, "start", 0.0);
      job.theta.stop = get_or<double>(s, "stop", 0.0);
      job.theta.points = get_or<int>(s, "points", 0);
      job.theta.axis = get_or<int>(s, "axis", 0);
      job.theta.base = get_or<std::vector<double>>(s, "base", {});
      if (job.theta.points < 2) throw ValidationError("sweep needs at least 2 points");
    } else {
      throw ValidationError("theta must be a list, \"limit\" or {\"sweep\": {...}}");
    }
  }

  if (doc.contains("measurement") && !doc["measurement"].is_null()) {
    const json& m = doc["measurement"];
    MeasurementSpec ms;
    if (m.is_string()) {
      ms.kind = m.get<std::string>();
    } else if (m.is_object()) {
      ms.kind = get_or<std::string>(m, "kind", "povm");
      ms.povm_path = get_or<std::string>(m, "povm", "");
    } else {
      throw ValidationError("\"measurement\" must be a string or an object");
    }
    if (ms.kind != "bell" && ms.kind != "computational" && ms.kind != "povm") {
      throw ValidationError("unknown measurement '" + ms.kind + "'");
    }
    if (ms.kind == "povm" && ms.povm_path.empty()) {
      throw ValidationError("povm measurement needs a \"povm\" file");
    }
    job.measurement = ms;
  }

  if (doc.contains("optimize")) {
    const json& o = doc["optimize"];
    auto& c = job.optimize;
    c.swarm_size = get_or<int>(o, "swarm_size", c.swarm_size);
    c.iterations = get_or<int>(o, "iterations", c.iterations);
    c.inertia = get_or<double>(o, "inertia", c.inertia);
    c.cognitive = get_or<double>(o, "cognitive", c.cognitive);
    c.social = get_or<double>(o, "social", c.social);
    c.seed = get_or<std::uint64_t>(o, "seed", c.seed);
    for (const auto& b : get_or<std::vector<std::vector<double>>>(o, "bounds", {})) {
      if (b.size() != 2) throw ValidationError("each bound must be [lo, hi]");
      c.bounds.emplace_back(b[0], b[1]);
    }
  }

  if (doc.contains("output")) {
    const json& o = doc["output"];
    job.output.format = get_or<std::string>(o, "format", "json");
    job.output.path = get_or<std::string>(o, "path", "");
  }
  if (job.output.format != "json" && job.output.format != "csv") {
    throw ValidationError("output format must be json or csv");
  }
  job.method = get_or<std::string>(doc, "method", job.method);
  job.series_order = get_or<int>(doc, "series_order", job.series_order);
  job.mu = get_or<double>(doc, "mu", job.mu);
  return job;
}

JobSpec load_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open job file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError("job file " + path + " is not valid JSON: " + e.what());
  }
  return job_from_json(doc);
}

json job_to_json(const JobSpec& job) {
  json doc;
  if (job.graph.catalog.empty()) {
    doc["graph"] = {{"edges", job.graph.edges_path}};
  } else {
    doc["graph"] = {{"catalog", job.graph.catalog}, {"n", job.graph.n}};
  }
  const auto& d = job.dynamics;
  doc["dynamics"] = {{"family", d.family}, {"axes", d.axes},    {"indices", d.indices},
                     {"m", d.m},           {"offset", d.offset}, {"scale", d.scale}};
  switch (job.theta.kind) {
    case ThetaSpec::Kind::kLimit: doc["theta"] = "limit"; break;
    case ThetaSpec::Kind::kExplicit: doc["theta"] = job.theta.values; break;
    case ThetaSpec::Kind::kSweep:
      doc["theta"] = {{"sweep",
                       {{"start", job.theta.start},
                        {"stop", job.theta.stop},
                        {"points", job.theta.points},
                        {"axis", job.theta.axis},
                        {"base", job.theta.base}}}};
      break;
  }
  if (job.measurement) {
    doc["measurement"] = {{"kind", job.measurement->kind}, {"povm", job.measurement->povm_path}};
  }
  const auto& c = job.optimize;
  json bounds = json::array();
  for (auto [lo, hi] : c.bounds) bounds.push_back({lo, hi});
  doc["optimize"] = {{"swarm_size", c.swarm_size}, {"iterations", c.iterations},
                     {"inertia", c.inertia},       {"cognitive", c.cognitive},
                     {"social", c.social},         {"seed", c.seed},
                     {"bounds", bounds}};
  doc["output"] = {{"format", job.output.format}, {"path", job.output.path}};
  doc["method"] = job.method;
  doc["series_order"] = job.series_order;
  doc["mu"] = job.mu;
  return doc;
}

Graph resolve_graph(const GraphSource& src) {
  if (!src.edges_path.empty()) return load_edge_list(src.edges_path);
  return catalog(src.catalog, src.n);
}

OperatorSet resolve_operators(const DynamicsSource& src, int n) {
  std::vector<Axis> axes;
  for (const auto& a : src.axes) axes.push_back(parse_axis(a));
  const std::string& f = src.family;
  if (f == "su2_collective") {
    return axes.empty() ? collective_set(n) : collective_set(n, axes);
  }
  if (f == "spin_j") {
    return axes.empty() ? spin_j_set(n) : spin_j_set(n, axes);
  }
  if (f == "su2_local_axis" || f == "su2_local_x" || f == "su2_local_y" || f == "su2_local_z") {
    Axis a = Axis::kX;
    if (f.size() == 11) {
      a = parse_axis(f.substr(10));
    } else if (axes.size() == 1) {
      a = axes.front();
    } else {
      throw ValidationError("su2_local_axis needs exactly one axis");
    }
    return local_pauli_set(n, a);
  }
  if (f == "suN_global" || f == "suN_embedded") {
    if (src.indices.empty()) throw ValidationError(f + " needs generator indices");
    const int m = f == "suN_global" ? n : src.m;
    const int offset = f == "suN_global" ? 0 : src.offset;
    return sun_set(n, m, offset, src.indices, src.scale);
  }
  throw ValidationError("unknown dynamics family '" + f + "'");
}

std::vector<RealVector> resolve_thetas(const ThetaSpec& spec, std::size_t d) {
  const auto dim = static_cast<Eigen::Index>(d);
  switch (spec.kind) {
    case ThetaSpec::Kind::kLimit: return {RealVector::Zero(dim)};
    case ThetaSpec::Kind::kExplicit: {
      if (spec.values.size() != d) {
        throw ValidationError("theta has " + std::to_string(spec.values.size()) +
                              " entries, dynamics has " + std::to_string(d) + " parameters");
      }
      return {Eigen::Map<const RealVector>(spec.values.data(), dim)};
    }
    case ThetaSpec::Kind::kSweep: {
      if (spec.axis < 0 || static_cast<std::size_t>(spec.axis) >= d) {
        throw ValidationError("sweep axis out of range");
      }
      RealVector base = RealVector::Zero(dim);
      if (!spec.base.empty()) {
        if (spec.base.size() != d) throw ValidationError("sweep base has the wrong length");
        base = Eigen::Map<const RealVector>(spec.base.data(), dim);
      }
      std::vector<RealVector> out;
      for (int i = 0; i < spec.points; ++i) {
        RealVector t = base;
        t(spec.axis) = spec.start + (spec.stop - spec.start) * i / (spec.points - 1);
        out.push_back(std::move(t));
      }
      return out;
    }
  }
  return {};
}

}  // namespace graphmetro::cli
