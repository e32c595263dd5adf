#include "graphmetro/measurement.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "graphmetro/errors.hpp"

namespace graphmetro {
namespace {

constexpr double kDropThreshold = 1e-12;

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

cplx parse_entry(const nlohmann::json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw ValidationError("POVM entry must be a number or a [re, im] pair");
}

}  // namespace

Povm::Povm(std::vector<ComplexMatrix> elements, std::vector<std::string> labels)
    : elements_(std::move(elements)), labels_(std::move(labels)) {
  if (elements_.empty()) throw ValidationError("POVM has no elements");
  if (labels_.empty()) {
    for (std::size_t m = 0; m < elements_.size(); ++m) labels_.push_back(std::to_string(m));
  }
  if (labels_.size() != elements_.size()) throw ValidationError("one label per POVM element");
  const Eigen::Index d = elements_.front().rows();
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (std::size_t m = 0; m < elements_.size(); ++m) {
    const auto& e = elements_[m];
    if (e.rows() != d || e.cols() != d) throw ValidationError("POVM elements differ in dimension");
    if (hermiticity_defect(e) > 1e-10) {
      throw ValidationError("POVM element " + labels_[m] + " is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig((e + e.adjoint()) / 2.0,
                                                     Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-10) {
      throw ValidationError("POVM element " + labels_[m] + " is not positive semidefinite");
    }
    total += e;
  }
  if ((total - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw ValidationError("POVM elements do not sum to the identity");
  }
}

Povm bell_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  auto vec = [&](int a, int b, double sign) {
    ComplexVector v = ComplexVector::Zero(4);
    v(a) = s;
    v(b) = sign * s;
    return v;
  };
  return Povm({projector(vec(0, 3, 1.0)), projector(vec(0, 3, -1.0)), projector(vec(1, 2, 1.0)),
               projector(vec(1, 2, -1.0))},
              {"Phi+", "Phi-", "Psi+", "Psi-"});
}

Povm computational_basis(int num_qubits) {
  require_dense_capacity(num_qubits);
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  std::vector<ComplexMatrix> elems;
  std::vector<std::string> labels;
  for (Eigen::Index k = 0; k < d; ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(k, k) = 1.0;
    elems.push_back(std::move(e));
    std::string bits;
    for (int q = num_qubits - 1; q >= 0; --q) bits += ((k >> q) & 1) ? '1' : '0';
    labels.push_back(bits);
  }
  return Povm(std::move(elems), std::move(labels));
}

Povm identity_povm(Eigen::Index dim) {
  return Povm({ComplexMatrix::Identity(dim, dim)}, {"I"});
}

Povm parse_povm(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("POVM file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("elements")) {
    throw ValidationError("POVM file needs \"dim\" and \"elements\"");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long>() < 1) {
    throw ValidationError("POVM \"dim\" must be a positive integer");
  }
  const auto d = static_cast<Eigen::Index>(doc["dim"].get<long>());
  std::vector<ComplexMatrix> elems;
  for (const auto& m : doc["elements"]) {
    if (!m.is_array() || static_cast<Eigen::Index>(m.size()) != d) {
      throw ValidationError("POVM element must have dim rows");
    }
    ComplexMatrix e(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      const auto& row = m[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
        throw ValidationError("POVM row must have dim entries");
      }
      for (Eigen::Index c = 0; c < d; ++c) e(r, c) = parse_entry(row[static_cast<std::size_t>(c)]);
    }
    elems.push_back(std::move(e));
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) labels = doc["labels"].get<std::vector<std::string>>();
  return Povm(std::move(elems), std::move(labels));
}

Povm load_povm(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open POVM file " + path.string());
  return parse_povm(in);
}

void write_povm(const Povm& povm, std::ostream& out) {
  nlohmann::json doc;
  doc["dim"] = povm.dim();
  doc["labels"] = povm.labels();
  doc["elements"] = nlohmann::json::array();
  for (const auto& e : povm.elements()) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < e.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < e.cols(); ++c) row.push_back({e(r, c).real(), e(r, c).imag()});
      rows.push_back(std::move(row));
    }
    doc["elements"].push_back(std::move(rows));
  }
  out << doc.dump() << '\n';
}

RealVector probabilities(const DensityMatrix& rho, const Povm& povm) {
  if (rho.dim() != povm.dim()) throw ValidationError("POVM dimension does not match the state");
  RealVector p(static_cast<Eigen::Index>(povm.size()));
  for (std::size_t m = 0; m < povm.size(); ++m) {
    const double v = (povm.elements()[m] * rho.matrix()).trace().real();
    if (v < -1e-12) throw DomainError("negative outcome probability");
    p(static_cast<Eigen::Index>(m)) = std::max(v, 0.0);
  }
  return p / p.sum();
}

RealMatrix probability_jacobian(const DensityMatrix& rho0, const DynamicsSpec& spec,
                                const Povm& povm, DerivativeMode mode, double step) {
  if (rho0.dim() != povm.dim()) throw ValidationError("POVM dimension does not match the state");
  const auto outcomes = static_cast<Eigen::Index>(povm.size());
  const auto d = static_cast<Eigen::Index>(spec.num_params());
  RealMatrix jac(outcomes, d);
  if (mode == DerivativeMode::kAnalytic) {
    const auto drho = state_derivatives(rho0, spec, param_generators(spec));
    for (Eigen::Index m = 0; m < outcomes; ++m)
      for (Eigen::Index j = 0; j < d; ++j)
        jac(m, j) = (povm.elements()[static_cast<std::size_t>(m)] *
                     drho[static_cast<std::size_t>(j)])
                        .trace()
                        .real();
    return jac;
  }
  const RealVector base = spec.mode == ThetaMode::kLimit ? RealVector::Zero(d) : spec.theta;
  for (Eigen::Index j = 0; j < d; ++j) {
    RealVector plus = base, minus = base;
    plus(j) += step;
    minus(j) -= step;
    const RealVector pp = probabilities(evolve(rho0, make_spec(spec.ops, plus)), povm);
    const RealVector pm = probabilities(evolve(rho0, make_spec(spec.ops, minus)), povm);
    jac.col(j) = (pp - pm) / (2.0 * step);
  }
  return jac;
}

CfimResult cfim(const DensityMatrix& rho0, const DynamicsSpec& spec, const Povm& povm,
                DerivativeMode mode) {
  CfimResult r;
  r.probabilities = probabilities(evolve(rho0, spec), povm);
  const RealMatrix jac = probability_jacobian(rho0, spec, povm, mode);
  const auto d = static_cast<Eigen::Index>(spec.num_params());
  r.matrix = RealMatrix::Zero(d, d);
  int kept = 0;
  for (Eigen::Index m = 0; m < r.probabilities.size(); ++m) {
    const double p = r.probabilities(m);
    if (p < kDropThreshold) {
      r.dropped_outcomes.push_back(static_cast<int>(m));
      continue;
    }
    ++kept;
    r.matrix += jac.row(m).transpose() * jac.row(m) / p;
  }
  if (kept == 0) throw DegenerateMeasurementError("every measurement outcome has p < 1e-12");
  r.matrix = (r.matrix + r.matrix.transpose()).eval() / 2.0;
  return r;
}

CfimComparison cfim_vs_qfim(const DensityMatrix& rho0, const DynamicsSpec& spec,
                            const Povm& povm) {
  CfimComparison c;
  c.qfim = qfim(rho0, spec);
  c.cfim = cfim(rho0, spec, povm);
  c.difference = c.qfim.matrix - c.cfim.matrix;
  c.max_abs_difference = c.difference.cwiseAbs().maxCoeff();
  c.slack_eigenvalues =
      Eigen::SelfAdjointEigenSolver<RealMatrix>(c.difference, Eigen::EigenvaluesOnly).eigenvalues();
  return c;
}

}  // namespace graphmetro
