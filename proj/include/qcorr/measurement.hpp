// SPDX-License-Identifier: Apache-2.0
//
// Local projective measurements: parametrized orthonormal bases, the
// dephasing channel, conditional ensembles and measurement-based
// conditional entropy / classical correlations.
#pragma once

#include <cmath>

#include "qcorr/entropy.hpp"

namespace qcorr {

// Ordered projectors on one subsystem. Any rank is accepted as long as the
// list is a complete orthogonal projective decomposition.
class ProjectiveMeasurement {
 public:
  ProjectiveMeasurement(int subsystem, std::vector<Matrix> projectors)
      : subsystem_(subsystem), projectors_(std::move(projectors)) {
    if (projectors_.empty()) throw std::invalid_argument("no projectors given");
    const Eigen::Index d = projectors_.front().rows();
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < projectors_.size(); ++i) {
      const Matrix& p = projectors_[i];
      if (p.rows() != d || p.cols() != d)
        throw std::invalid_argument("projector dimensions are inconsistent");
      if (!is_hermitian(p)) throw std::invalid_argument("projector is not Hermitian");
      if (max_abs(p * p - p) > tol::hermitian)
        throw std::invalid_argument("projector is not idempotent");
      for (std::size_t j = 0; j < i; ++j)
        if (max_abs(projectors_[i] * projectors_[j]) > tol::hermitian)
          throw std::invalid_argument("projectors are not mutually orthogonal");
      sum += p;
    }
    if (max_abs(sum - Matrix::Identity(d, d)) > tol::hermitian)
      throw std::invalid_argument("projectors do not resolve the identity");
  }

  int subsystem() const { return subsystem_; }
  const std::vector<Matrix>& projectors() const { return projectors_; }
  int dim() const { return static_cast<int>(projectors_.front().rows()); }
  std::size_t outcomes() const { return projectors_.size(); }

 private:
  int subsystem_;
  std::vector<Matrix> projectors_;
};

// Angles parametrizing an orthonormal basis of one subsystem.
// dim 2: (theta, phi) on the Bloch sphere. dim d: one (theta, phi) pair per
// Givens rotation, d(d-1)/2 pairs in column-elimination order; the product
// reaches every basis up to per-column phases, which do not affect projectors.
struct MeasurementParameters {
  std::vector<double> angles;
};

inline int parameter_count(int dim) {
  if (dim < 2) throw std::invalid_argument("measurement dimension must be >= 2");
  return dim * (dim - 1);
}

namespace detail {

inline Matrix givens_rotation(int d, int i, int j, double theta, double phi) {
  Matrix g = Matrix::Identity(d, d);
  const double c = std::cos(theta), s = std::sin(theta);
  g(i, i) = c;
  g(j, j) = c;
  g(i, j) = -std::exp(Complex(0, -phi)) * s;
  g(j, i) = std::exp(Complex(0, phi)) * s;
  return g;
}

}  // namespace detail

// Unitary whose columns form the parametrized basis.
inline Matrix basis_unitary(const MeasurementParameters& p, int dim) {
  if (static_cast<int>(p.angles.size()) != parameter_count(dim))
    throw std::invalid_argument("wrong parameter count for measurement dimension");
  if (dim == 2) {
    const double t = p.angles[0] / 2.0, phi = p.angles[1];
    Matrix u(2, 2);
    u(0, 0) = std::cos(t);
    u(1, 0) = std::exp(Complex(0, phi)) * std::sin(t);
    u(0, 1) = -std::exp(Complex(0, -phi)) * std::sin(t);
    u(1, 1) = std::cos(t);
    return u;
  }
  Matrix u = Matrix::Identity(dim, dim);
  std::size_t k = 0;
  for (int c = 0; c < dim - 1; ++c)
    for (int r = c + 1; r < dim; ++r) {
      u = u * detail::givens_rotation(dim, c, r, p.angles[k], p.angles[k + 1]);
      k += 2;
    }
  return u;
}

inline ProjectiveMeasurement basis_from_parameters(const MeasurementParameters& p,
                                                   int dim, int subsystem = 0) {
  const Matrix u = basis_unitary(p, dim);
  std::vector<Matrix> projectors;
  projectors.reserve(dim);
  for (int a = 0; a < dim; ++a)
    projectors.push_back(u.col(a) * u.col(a).adjoint());
  return ProjectiveMeasurement(subsystem, std::move(projectors));
}

inline ProjectiveMeasurement computational_measurement(int dim, int subsystem = 0) {
  std::vector<Matrix> projectors;
  for (int a = 0; a < dim; ++a) {
    Matrix p = Matrix::Zero(dim, dim);
    p(a, a) = 1.0;
    projectors.push_back(std::move(p));
  }
  return ProjectiveMeasurement(subsystem, std::move(projectors));
}

namespace detail {

// sum_a (P_a (x) 1) rho (P_a (x) 1) on raw matrices; dephases the measured
// subsystem in the given projector set.
inline Matrix dephase_raw(const Matrix& rho, const std::vector<int>& dims,
                          int subsystem, const std::vector<Matrix>& projectors) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const Matrix& p : projectors) {
    const Matrix e = embed_at(p, dims, subsystem);
    out += e * rho * e;
  }
  return out;
}

// Unnormalized conditional state of the unmeasured subsystems after seeing
// the rank-1 outcome |v> on `subsystem`; its trace is the outcome probability.
inline Matrix rank1_conditional(const Matrix& rho, const std::vector<int>& dims,
                                int subsystem, const Vector& v) {
  const SubsystemSplit s = split_at(dims, subsystem);
  const int rest = s.pre * s.post;
  Matrix out = Matrix::Zero(rest, rest);
  // Full index (p, k, q) -> p * dim * post + k * post + q; rest index (p, q).
  for (int pr = 0; pr < s.pre; ++pr)
    for (int qr = 0; qr < s.post; ++qr) {
      const int r_out = pr * s.post + qr;
      for (int pc = 0; pc < s.pre; ++pc)
        for (int qc = 0; qc < s.post; ++qc) {
          const int c_out = pc * s.post + qc;
          Complex sum = 0.0;
          for (int k = 0; k < s.dim; ++k) {
            const int row = (pr * s.dim + k) * s.post + qr;
            for (int l = 0; l < s.dim; ++l) {
              const int col = (pc * s.dim + l) * s.post + qc;
              sum += std::conj(v(k)) * v(l) * rho(row, col);
            }
          }
          out(r_out, c_out) = sum;
        }
    }
  return out;
}

// sum_a p_a S(rho_{rest|a}) for a rank-1 basis given as unitary columns.
inline double measured_cond_entropy_raw(const Matrix& rho, const std::vector<int>& dims,
                                        int subsystem, const Matrix& basis) {
  double h = 0.0;
  for (Eigen::Index a = 0; a < basis.cols(); ++a) {
    const Matrix cond = rank1_conditional(rho, dims, subsystem, basis.col(a));
    const double pa = cond.trace().real();
    if (pa < tol::outcome) continue;
    h += pa * spectrum_entropy(cond / pa);
  }
  return h;
}

}  // namespace detail

// The measurement channel: outcome projectors applied and outcomes discarded.
inline DensityOperator measure_channel(const DensityOperator& rho,
                                       const ProjectiveMeasurement& m) {
  if (m.dim() != rho.dim_of(m.subsystem()))
    throw std::invalid_argument("measurement does not match subsystem dimension");
  return DensityOperator(
      rho.dims(), detail::dephase_raw(rho.matrix(), rho.dims(), m.subsystem(),
                                      m.projectors()));
}

struct ConditionalOutcome {
  double prob;
  DensityOperator state;  // state of the unmeasured subsystems
};

using ConditionalEnsemble = std::vector<ConditionalOutcome>;

// (p_a, rho_{rest|a}) for each outcome; outcomes below tol::outcome dropped.
inline ConditionalEnsemble conditional_ensemble(const DensityOperator& rho,
                                                const ProjectiveMeasurement& m) {
  if (m.dim() != rho.dim_of(m.subsystem()))
    throw std::invalid_argument("measurement does not match subsystem dimension");
  const std::vector<int> rest = complement_subsystems(rho, {m.subsystem()});
  std::vector<int> rest_dims;
  for (int s : rest) rest_dims.push_back(rho.dims()[s]);

  ConditionalEnsemble out;
  for (const Matrix& p : m.projectors()) {
    const Matrix e = embed_at(p, rho.dims(), m.subsystem());
    const Matrix post = e * rho.matrix() * e;
    const double pa = post.trace().real();
    if (pa < tol::outcome) continue;
    DensityOperator branch(rho.dims(), post / pa);
    out.push_back({pa, partial_trace(branch, rest)});
  }
  return out;
}

// sum_a p_a S(rho_{rest|a}); always nonnegative.
inline double measured_conditional_entropy(const DensityOperator& rho,
                                           const ProjectiveMeasurement& m) {
  double h = 0.0;
  for (const ConditionalOutcome& o : conditional_ensemble(rho, m))
    h += o.prob * von_neumann_entropy(o.state);
  return h;
}

// J = S(rest) - S(rest | measurement): information about the rest extracted
// by measuring the chosen subsystem.
inline double classical_correlations_J(const DensityOperator& rho,
                                       const ProjectiveMeasurement& m) {
  const std::vector<int> rest = complement_subsystems(rho, {m.subsystem()});
  return von_neumann_entropy(partial_trace(rho, rest)) -
         measured_conditional_entropy(rho, m);
}

}  // namespace qcorr
