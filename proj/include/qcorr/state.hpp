// SPDX-License-Identifier: Apache-2.0
//
// Density operators over tensor-product spaces: validation, composition,
// reduction, partial transposition and the negativity witness.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "qcorr/linalg.hpp"

namespace qcorr {

namespace detail {

inline void check_dims(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("subsystem dimension list is empty");
  for (int d : dims)
    if (d < 2) throw std::invalid_argument("subsystem dimensions must be >= 2");
  if (dims_product(dims) > max_total_dim)
    throw std::invalid_argument("total dimension exceeds cap of " +
                                std::to_string(max_total_dim));
}

}  // namespace detail

// A normalized pure state with a subsystem decomposition.
class Ket {
 public:
  Ket(std::vector<int> dims, Vector amplitudes)
      : dims_(std::move(dims)), v_(std::move(amplitudes)) {
    detail::check_dims(dims_);
    if (v_.size() != dims_product(dims_))
      throw std::invalid_argument("amplitude vector does not match dims");
    const double n = v_.norm();
    if (std::abs(n - 1.0) > tol::trace)
      throw std::invalid_argument("ket is not normalized");
    if (std::abs(n - 1.0) > tol::spectrum_zero) v_ /= n;
  }

  const std::vector<int>& dims() const { return dims_; }
  const Vector& amplitudes() const { return v_; }
  int total_dim() const { return static_cast<int>(v_.size()); }

  Matrix projector() const { return v_ * v_.adjoint(); }

 private:
  std::vector<int> dims_;
  Vector v_;
};

inline Ket tensor(const Ket& a, const Ket& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return Ket(std::move(dims), kron(a.amplitudes(), b.amplitudes()));
}

inline Ket qubit_ket(Complex a0, Complex a1) {
  Vector v(2);
  v << a0, a1;
  return Ket({2}, std::move(v));
}

inline Ket ket0() { return qubit_ket(1, 0); }
inline Ket ket1() { return qubit_ket(0, 1); }
inline Ket ket_plus() { return qubit_ket(1 / std::sqrt(2.0), 1 / std::sqrt(2.0)); }
inline Ket ket_minus() { return qubit_ket(1 / std::sqrt(2.0), -1 / std::sqrt(2.0)); }

inline Ket basis_ket(std::vector<int> dims, int index) {
  Vector v = Vector::Zero(dims_product(dims));
  if (index < 0 || index >= v.size())
    throw std::invalid_argument("basis index out of range");
  v(index) = 1.0;
  return Ket(std::move(dims), std::move(v));
}

// A state of a finite-dimensional composite system. Immutable once built;
// construction validates hermiticity, unit trace and positivity with the
// module tolerances, repairing eigenvalue noise in [-tol::psd, 0) by
// clipping and renormalizing. Inputs already exact are stored untouched so
// that serialization round-trips bit-for-bit.
class DensityOperator {
 public:
  DensityOperator(std::vector<int> dims, Matrix matrix)
      : dims_(std::move(dims)), m_(std::move(matrix)) {
    detail::check_dims(dims_);
    const int d = dims_product(dims_);
    if (m_.rows() != d || m_.cols() != d)
      throw std::invalid_argument("matrix does not match dims");
    if (!is_hermitian(m_, tol::hermitian))
      throw std::invalid_argument("density operator is not Hermitian");
    double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > tol::trace)
      throw std::invalid_argument("density operator trace differs from one");
    const Eigen::VectorXd evals = hermitian_eigenvalues(m_);
    if (evals.minCoeff() < -tol::psd)
      throw std::invalid_argument("density operator is not positive semidefinite");
    if (evals.minCoeff() < -tol::spectrum_zero) {
      // Clip eigenvalue noise to zero and rebuild.
      EigenSystem es = hermitian_eigensystem(m_);
      Eigen::VectorXd clipped = es.values.cwiseMax(0.0);
      m_ = es.vectors * clipped.asDiagonal() * es.vectors.adjoint();
      tr = m_.trace().real();
    }
    if (std::abs(tr - 1.0) > tol::spectrum_zero) m_ /= tr;
  }

  const std::vector<int>& dims() const { return dims_; }
  const Matrix& matrix() const { return m_; }
  int total_dim() const { return static_cast<int>(m_.rows()); }
  int subsystem_count() const { return static_cast<int>(dims_.size()); }

  int dim_of(int subsystem) const {
    if (subsystem < 0 || subsystem >= subsystem_count())
      throw std::invalid_argument("subsystem index out of range");
    return dims_[subsystem];
  }

  double purity() const { return (m_ * m_).trace().real(); }

 private:
  std::vector<int> dims_;
  Matrix m_;
};

inline DensityOperator pure_state(const Ket& k) {
  return DensityOperator(k.dims(), k.projector());
}

inline DensityOperator maximally_mixed(std::vector<int> dims) {
  const int d = dims_product(dims);
  return DensityOperator(std::move(dims), Matrix::Identity(d, d) / double(d));
}

// Convex combination of states on identical dims.
class Ensemble {
 public:
  struct Entry {
    double prob;
    DensityOperator state;
  };

  explicit Ensemble(std::vector<Entry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("ensemble is empty");
    double sum = 0.0;
    for (const Entry& e : entries_) {
      if (e.prob < -tol::psd) throw std::invalid_argument("ensemble probability is negative");
      if (e.state.dims() != entries_.front().state.dims())
        throw std::invalid_argument("ensemble members have mismatched dims");
      sum += e.prob;
    }
    if (std::abs(sum - 1.0) > tol::trace)
      throw std::invalid_argument("ensemble probabilities do not sum to one");
  }

  static Ensemble of_kets(const std::vector<std::pair<double, Ket>>& entries) {
    std::vector<Entry> out;
    out.reserve(entries.size());
    for (const auto& [p, k] : entries) out.push_back({p, pure_state(k)});
    return Ensemble(std::move(out));
  }

  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<int>& dims() const { return entries_.front().state.dims(); }

 private:
  std::vector<Entry> entries_;
};

inline DensityOperator mix(const Ensemble& e) {
  Matrix m = Matrix::Zero(dims_product(e.dims()), dims_product(e.dims()));
  for (const auto& entry : e.entries()) m += entry.prob * entry.state.matrix();
  return DensityOperator(e.dims(), std::move(m));
}

inline DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityOperator(std::move(dims), kron(a.matrix(), b.matrix()));
}

namespace detail {

// keep is normalized to ascending order; the result dims follow that order.
inline std::vector<int> normalize_keep(const std::vector<int>& keep, int n) {
  if (keep.empty()) throw std::invalid_argument("keep set is empty");
  std::vector<int> k = keep;
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  if (k.front() < 0 || k.back() >= n)
    throw std::invalid_argument("keep set contains an invalid subsystem index");
  return k;
}

}  // namespace detail

namespace detail {

// Trace out the complement of `keep` (normalized ascending) from a raw
// matrix with the given subsystem layout.
inline Matrix partial_trace_raw(const Matrix& m, const std::vector<int>& dims,
                                const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  std::vector<int> kept_dims, traced_dims, traced_idx;
  for (int s = 0, j = 0; s < n; ++s) {
    if (j < static_cast<int>(keep.size()) && keep[j] == s) {
      kept_dims.push_back(dims[s]);
      ++j;
    } else {
      traced_dims.push_back(dims[s]);
      traced_idx.push_back(s);
    }
  }
  const int dk = dims_product(kept_dims);
  const int dt = dims_product(traced_dims);

  // Flat index of (kept multi-index, traced multi-index) in the full space.
  std::vector<int> pos(static_cast<std::size_t>(dk) * dt);
  for (int a = 0; a < dk; ++a) {
    const std::vector<int> ka = unflatten_index(a, kept_dims);
    for (int t = 0; t < dt; ++t) {
      const std::vector<int> ta = unflatten_index(t, traced_dims);
      std::vector<int> full(n);
      for (std::size_t j = 0; j < keep.size(); ++j) full[keep[j]] = ka[j];
      for (std::size_t j = 0; j < traced_idx.size(); ++j) full[traced_idx[j]] = ta[j];
      pos[static_cast<std::size_t>(a) * dt + t] = flatten_index(full, dims);
    }
  }

  Matrix out = Matrix::Zero(dk, dk);
  for (int r = 0; r < dk; ++r)
    for (int c = 0; c < dk; ++c) {
      Complex sum = 0.0;
      for (int t = 0; t < dt; ++t)
        sum += m(pos[static_cast<std::size_t>(r) * dt + t],
                 pos[static_cast<std::size_t>(c) * dt + t]);
      out(r, c) = sum;
    }
  return out;
}

}  // namespace detail

inline DensityOperator partial_trace(const DensityOperator& rho,
                                     const std::vector<int>& keep) {
  const int n = rho.subsystem_count();
  std::vector<int> k = detail::normalize_keep(keep, n);
  if (static_cast<int>(k.size()) == n) return rho;

  std::vector<int> kept_dims;
  for (int s : k) kept_dims.push_back(rho.dims()[s]);
  return DensityOperator(std::move(kept_dims),
                         detail::partial_trace_raw(rho.matrix(), rho.dims(), k));
}

inline std::vector<int> complement_subsystems(const DensityOperator& rho,
                                              const std::vector<int>& side) {
  std::vector<int> s = detail::normalize_keep(side, rho.subsystem_count());
  std::vector<int> out;
  for (int i = 0, j = 0; i < rho.subsystem_count(); ++i) {
    if (j < static_cast<int>(s.size()) && s[j] == i) ++j;
    else out.push_back(i);
  }
  if (out.empty()) throw std::invalid_argument("bipartition side covers the whole system");
  return out;
}

// Transpose the listed subsystems; the result is Hermitian but in general
// not positive, so it is returned as a raw matrix.
inline Matrix partial_transpose(const DensityOperator& rho,
                                const std::vector<int>& subsystems) {
  const std::vector<int>& dims = rho.dims();
  std::vector<int> s = detail::normalize_keep(subsystems, rho.subsystem_count());
  std::vector<bool> flip(dims.size(), false);
  for (int i : s) flip[i] = true;

  const int d = rho.total_dim();
  const Matrix& m = rho.matrix();
  Matrix out(d, d);
  for (int r = 0; r < d; ++r) {
    std::vector<int> ri = unflatten_index(r, dims);
    for (int c = 0; c < d; ++c) {
      std::vector<int> ci = unflatten_index(c, dims);
      std::vector<int> rs = ri, cs = ci;
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (flip[k]) std::swap(rs[k], cs[k]);
      out(flatten_index(rs, dims), flatten_index(cs, dims)) = m(r, c);
    }
  }
  return out;
}

inline Matrix partial_transpose(const DensityOperator& rho, int subsystem) {
  return partial_transpose(rho, std::vector<int>{subsystem});
}

// Sum of |negative eigenvalues| of the partial transpose across the cut.
// Zero for every separable state; an entanglement witness otherwise.
inline double negativity(const DensityOperator& rho, const std::vector<int>& cut) {
  const Eigen::VectorXd evals = hermitian_eigenvalues(partial_transpose(rho, cut));
  double neg = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    if (evals(i) < 0.0) neg -= evals(i);
  return neg;
}

}  // namespace qcorr
