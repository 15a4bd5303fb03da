// SPDX-License-Identifier: Apache-2.0
//
// Small dense complex linear algebra helpers shared across the library.
// Everything here operates on Eigen matrices; states and measurements are
// layered on top in state.hpp / measurement.hpp.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcorr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Numeric tolerances used by validation and the entropy/optimizer stack.
namespace tol {
inline constexpr double hermitian = 1e-9;
inline constexpr double trace = 1e-9;
inline constexpr double psd = 1e-9;
// Below this magnitude an eigenvalue / probability is treated as an exact zero.
inline constexpr double spectrum_zero = 1e-12;
// Measurement outcomes with probability below this are dropped.
inline constexpr double outcome = 1e-12;
// Maximum dephasing disturbance for a classicality verdict.
inline constexpr double classical = 1e-7;
// Marginal eigenvalues closer than this are grouped into one degenerate block.
inline constexpr double degeneracy = 1e-8;
}  // namespace tol

// Dense storage only; all reference inputs are at most 8-dimensional.
inline constexpr int max_total_dim = 64;

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double eps = tol::hermitian) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= eps;
}

inline bool is_unitary(const Matrix& m, double eps = tol::hermitian) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) <= eps;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian eigensolver failed to converge");
  return es.eigenvalues();
}

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns match values
};

inline EigenSystem hermitian_eigensystem(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian eigensolver failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

// --- subsystem index arithmetic -------------------------------------------
//
// Subsystems are 0-based and composed row-major: the leftmost factor is the
// most significant digit of a flat index.

inline int dims_product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

inline std::vector<int> unflatten_index(int flat, const std::vector<int>& dims) {
  std::vector<int> mi(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    mi[k] = flat % dims[k];
    flat /= dims[k];
  }
  return mi;
}

inline int flatten_index(const std::vector<int>& mi, const std::vector<int>& dims) {
  int flat = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + mi[k];
  return flat;
}

// Products of the dimensions before / at / after one subsystem.
struct SubsystemSplit {
  int pre = 1;
  int dim = 1;
  int post = 1;
};

inline SubsystemSplit split_at(const std::vector<int>& dims, int subsystem) {
  if (subsystem < 0 || subsystem >= static_cast<int>(dims.size()))
    throw std::invalid_argument("subsystem index out of range");
  SubsystemSplit s;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
    if (k < subsystem) s.pre *= dims[k];
    else if (k == subsystem) s.dim = dims[k];
    else s.post *= dims[k];
  }
  return s;
}

// I_pre (x) op (x) I_post for an operator living on one subsystem.
inline Matrix embed_at(const Matrix& op, const std::vector<int>& dims, int subsystem) {
  SubsystemSplit s = split_at(dims, subsystem);
  if (op.rows() != s.dim || op.cols() != s.dim)
    throw std::invalid_argument("embedded operator does not match subsystem dimension");
  Matrix out = op;
  if (s.pre > 1) out = kron(Matrix::Identity(s.pre, s.pre), out);
  if (s.post > 1) out = kron(out, Matrix::Identity(s.post, s.post));
  return out;
}

}  // namespace qcorr
