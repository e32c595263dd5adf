#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "graphmetro/pauli.hpp"
#include "graphmetro/types.hpp"

// Data-parallel hot loops. Every kernel has a serial reference in `serial::` and an
// OpenMP twin in `omp::`; the two produce identical results (outputs are written by
// index, never reduced across threads) and the test suite checks that.
namespace graphmetro::kernels {

enum class Backend { kSerial, kOpenMP };

using PointObjective = std::function<double(std::span<const double>)>;

namespace serial {

void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body);

/// rho0 = 2^-n sum over all generator subsets S of prod_{i in S} g_i.
ComplexMatrix stabilizer_density(const StabilizerGroup& group);

std::vector<double> evaluate_batch(const PointObjective& f,
                                   std::span<const std::vector<double>> points);

/// C_jk = <G_j G_k> - <G_j><G_k> in the pure state psi.
ComplexMatrix generator_covariance(const ComplexVector& psi, std::span<const ComplexMatrix> gens);

}  // namespace serial

namespace omp {

/// Runs body(i) for i in [0, count) across OpenMP threads. The first exception thrown by
/// any iteration is rethrown on the calling thread once the loop finishes.
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body);

ComplexMatrix stabilizer_density(const StabilizerGroup& group);

std::vector<double> evaluate_batch(const PointObjective& f,
                                   std::span<const std::vector<double>> points);

ComplexMatrix generator_covariance(const ComplexVector& psi, std::span<const ComplexMatrix> gens);

int max_threads();

}  // namespace omp

void for_each_index(std::size_t count, const std::function<void(std::size_t)>& body,
                    Backend backend = Backend::kOpenMP);
ComplexMatrix stabilizer_density(const StabilizerGroup& group, Backend backend = Backend::kOpenMP);
std::vector<double> evaluate_batch(const PointObjective& f,
                                   std::span<const std::vector<double>> points,
                                   Backend backend = Backend::kOpenMP);
ComplexMatrix generator_covariance(const ComplexVector& psi, std::span<const ComplexMatrix> gens,
                                   Backend backend = Backend::kOpenMP);

}  // namespace graphmetro::kernels
