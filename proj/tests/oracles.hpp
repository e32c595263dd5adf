#pragma once

// Independent reference implementations used only by the tests. None of these call
// into the library's dense Pauli, exponential or generator code.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "graphmetro/graph.hpp"
#include "graphmetro/types.hpp"

namespace oracle {

using graphmetro::ComplexMatrix;
using graphmetro::ComplexVector;
using graphmetro::RealMatrix;
using graphmetro::RealVector;
using cplx = std::complex<double>;

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexMatrix site(char c) {
  ComplexMatrix m(2, 2);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m = ComplexMatrix::Identity(2, 2);
  }
  return m;
}

/// Kronecker product of single-site matrices; letter q is the leftmost factor.
inline ComplexMatrix pauli_kron(const std::string& letters, cplx phase = 1.0) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (char c : letters) out = kron(out, site(c));
  return phase * out;
}

/// exp(A) by scaling and squaring of a Taylor polynomial.
inline ComplexMatrix expm(const ComplexMatrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const ComplexMatrix scaled = a / std::pow(2.0, squarings);
  ComplexMatrix term = ComplexMatrix::Identity(a.rows(), a.cols());
  ComplexMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

inline ComplexMatrix hamiltonian(const std::vector<ComplexMatrix>& ops, const RealVector& theta) {
  ComplexMatrix h = ComplexMatrix::Zero(ops.front().rows(), ops.front().cols());
  for (std::size_t k = 0; k < ops.size(); ++k) h += theta(static_cast<Eigen::Index>(k)) * ops[k];
  return h;
}

inline ComplexMatrix u_of(const std::vector<ComplexMatrix>& ops, const RealVector& theta) {
  return expm(cplx(0, -1) * hamiltonian(ops, theta));
}

/// i (d_j U^dag) U by central differences.
inline std::vector<ComplexMatrix> generators_fd(const std::vector<ComplexMatrix>& ops,
                                                const RealVector& theta, double eps = 1e-5) {
  const ComplexMatrix u = u_of(ops, theta);
  std::vector<ComplexMatrix> out;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    RealVector p = theta, m = theta;
    p(j) += eps;
    m(j) -= eps;
    const ComplexMatrix du_dag = (u_of(ops, p).adjoint() - u_of(ops, m).adjoint()) / (2 * eps);
    out.push_back(cplx(0, 1) * du_dag * u);
  }
  return out;
}

/// 4 Re(<d_j psi|d_k psi> - <d_j psi|psi><psi|d_k psi>) with finite-difference states.
inline RealMatrix qfim_state_fd(const ComplexVector& psi0, const std::vector<ComplexMatrix>& ops,
                                const RealVector& theta, double eps = 1e-5) {
  const auto d = theta.size();
  const ComplexVector psi = u_of(ops, theta) * psi0;
  std::vector<ComplexVector> dpsi;
  for (Eigen::Index j = 0; j < d; ++j) {
    RealVector p = theta, m = theta;
    p(j) += eps;
    m(j) -= eps;
    dpsi.push_back((u_of(ops, p) * psi0 - u_of(ops, m) * psi0) / (2 * eps));
  }
  RealMatrix f(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k) {
      const cplx v = dpsi[j].dot(dpsi[k]) - dpsi[j].dot(psi) * psi.dot(dpsi[k]);
      f(j, k) = 4.0 * v.real();
    }
  return f;
}

/// Covariance QFIM 4 Re(<A_j A_k> - <A_j><A_k>) straight from a state vector.
inline RealMatrix qfim_direct(const ComplexVector& psi, const std::vector<ComplexMatrix>& ops) {
  const auto d = static_cast<Eigen::Index>(ops.size());
  RealMatrix f(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = 0; k < d; ++k) {
      const cplx jk = psi.dot(ops[j] * ops[k] * psi);
      const cplx mj = psi.dot(ops[j] * psi);
      const cplx mk = psi.dot(ops[k] * psi);
      f(j, k) = 4.0 * (jk - mj * mk).real();
    }
  return f;
}

/// Graph state amplitude by direct enumeration: (-1)^{#edges inside the support of b}.
inline ComplexVector graph_state_bruteforce(const graphmetro::Graph& g) {
  const int n = g.size();
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexVector psi(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    int edges_inside = 0;
    for (auto [u, v] : g.edges()) {
      const bool bu = (b >> (n - 1 - u)) & 1;
      const bool bv = (b >> (n - 1 - v)) & 1;
      edges_inside += bu && bv;
    }
    psi(b) = (edges_inside % 2 ? -1.0 : 1.0) / std::sqrt(static_cast<double>(dim));
  }
  return psi;
}

inline graphmetro::Graph random_graph(std::mt19937_64& rng, int n, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  std::vector<graphmetro::Edge> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng)) edges.emplace_back(a, b);
  return graphmetro::build_graph(n, edges);
}

/// Random graph without isolated vertices (resampled until it has none).
inline graphmetro::Graph random_graph_no_isolated(std::mt19937_64& rng, int n, double p = 0.5) {
  for (;;) {
    auto g = random_graph(rng, n, p);
    if (g.no_isolated()) return g;
  }
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index dim, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = cplx(normal(rng), normal(rng));
  return scale * (a + a.adjoint()) / 2.0;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace oracle
