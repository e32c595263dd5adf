#include "graphmetro/kernels.hpp"

#include <bit>
#include <exception>
#include <mutex>

#include <omp.h>

#include "graphmetro/errors.hpp"

namespace graphmetro::kernels {
namespace {

Eigen::Index checked_dimension(const StabilizerGroup& group) {
  require_dense_capacity(group.num_qubits());
  if (static_cast<int>(group.generators().size()) != group.num_qubits()) {
    throw DomainError("stabilizer density needs a full set of n generators");
  }
  return Eigen::Index{1} << group.num_qubits();
}

void check_generators(const ComplexVector& psi, std::span<const ComplexMatrix> gens) {
  for (const auto& g : gens) {
    if (g.rows() != psi.size() || g.cols() != psi.size()) {
      throw ValidationError("generator dimension does not match the state dimension");
    }
  }
}

// Column j of the result is G_j psi.
ComplexMatrix apply_all(const ComplexVector& psi, std::span<const ComplexMatrix> gens,
                        Backend backend) {
  ComplexMatrix applied(psi.size(), static_cast<Eigen::Index>(gens.size()));
  for_each_index(
      gens.size(),
      [&](std::size_t j) { applied.col(static_cast<Eigen::Index>(j)).noalias() = gens[j] * psi; },
      backend);
  return applied;
}

ComplexMatrix covariance_from_applied(const ComplexVector& psi, const ComplexMatrix& applied) {
  const ComplexVector means = applied.adjoint() * psi;  // conj(<G_j>)
  ComplexMatrix cov = applied.adjoint() * applied;
  const Eigen::Index d = applied.cols();
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k) cov(j, k) -= means(j) * std::conj(means(k));
  return cov;
}

}  // namespace

namespace serial {

void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

ComplexMatrix stabilizer_density(const StabilizerGroup& group) {
  const Eigen::Index dim = checked_dimension(group);
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  const double weight = 1.0 / static_cast<double>(dim);
  // Gray-code walk: each step multiplies one generator into the running product.
  PauliString running(group.num_qubits());
  std::uint64_t previous = 0;
  for (std::uint64_t step = 0; step < static_cast<std::uint64_t>(dim); ++step) {
    const std::uint64_t gray = step ^ (step >> 1);
    if (step > 0) {
      const int flipped = std::countr_zero(gray ^ previous);
      running = multiply(running, group.generators()[static_cast<std::size_t>(flipped)]);
    }
    previous = gray;
    accumulate_dense(running, weight, rho);
  }
  return rho;
}

std::vector<double> evaluate_batch(const PointObjective& f,
                                   std::span<const std::vector<double>> points) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = f(points[i]);
  return out;
}

ComplexMatrix generator_covariance(const ComplexVector& psi, std::span<const ComplexMatrix> gens) {
  check_generators(psi, gens);
  return covariance_from_applied(psi, apply_all(psi, gens, Backend::kSerial));
}

}  // namespace serial

namespace omp {

void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

ComplexMatrix stabilizer_density(const StabilizerGroup& group) {
  const Eigen::Index dim = checked_dimension(group);
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  const double weight = 1.0 / static_cast<double>(dim);
  // Subset S has x-part S, so distinct subsets touch disjoint matrix entries.
  for_each_index(static_cast<std::size_t>(dim),
                 [&](std::size_t mask) { accumulate_dense(group.element(mask), weight, rho); });
  return rho;
}

std::vector<double> evaluate_batch(const PointObjective& f,
                                   std::span<const std::vector<double>> points) {
  std::vector<double> out(points.size());
  for_each_index(points.size(), [&](std::size_t i) { out[i] = f(points[i]); });
  return out;
}

ComplexMatrix generator_covariance(const ComplexVector& psi, std::span<const ComplexMatrix> gens) {
  check_generators(psi, gens);
  return covariance_from_applied(psi, apply_all(psi, gens, Backend::kOpenMP));
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace omp

void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body,
                    Backend backend) {
  if (backend == Backend::kSerial) {
    serial::for_each_index(count, body);
  } else {
    omp::for_each_index(count, body);
  }
}

ComplexMatrix stabilizer_density(const StabilizerGroup& group, Backend backend) {
  return backend == Backend::kSerial ? serial::stabilizer_density(group)
                                     : omp::stabilizer_density(group);
}

std::vector<double> evaluate_batch(const PointObjective& f,
                                   std::span<const std::vector<double>> points, Backend backend) {
  return backend == Backend::kSerial ? serial::evaluate_batch(f, points)
                                     : omp::evaluate_batch(f, points);
}

ComplexMatrix generator_covariance(const ComplexVector& psi, std::span<const ComplexMatrix> gens,
                                   Backend backend) {
  return backend == Backend::kSerial ? serial::generator_covariance(psi, gens)
                                     : omp::generator_covariance(psi, gens);
}

}  // namespace graphmetro::kernels
