// SPDX-License-Identifier: Apache-2.0
//
// Shannon and von Neumann entropies, the two quantum conditional entropies
// that disagree, and mutual information. All entropies are in bits.
#pragma once

#include <cmath>
#include <span>

#include "qcorr/state.hpp"

namespace qcorr {

class ProbabilityDistribution {
 public:
  explicit ProbabilityDistribution(std::vector<double> probs)
      : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("probability distribution is empty");
    double sum = 0.0;
    for (double p : probs_) {
      if (p < -tol::psd) throw std::invalid_argument("negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol::trace)
      throw std::invalid_argument("probabilities do not sum to one");
  }

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

namespace detail {

// -sum p log2 p with entries below tol::spectrum_zero treated as exact zeros.
inline double entropy_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs)
    if (p > tol::spectrum_zero) h -= p * std::log2(p);
  return h;
}

// Entropy of a Hermitian PSD matrix's spectrum, clipped and renormalized.
inline double spectrum_entropy(const Matrix& m) {
  Eigen::VectorXd evals = hermitian_eigenvalues(m).cwiseMax(0.0);
  const double sum = evals.sum();
  if (sum <= 0.0) return 0.0;
  double h = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    const double p = evals(i) / sum;
    if (p > tol::spectrum_zero) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace detail

inline double shannon_entropy(const ProbabilityDistribution& p) {
  return detail::entropy_bits(p.probs());
}

inline double von_neumann_entropy(const DensityOperator& rho) {
  return detail::spectrum_entropy(rho.matrix());
}

// S(rest | given) = S(full) - S(given); negative values signal entanglement
// (minus this quantity is the coherent information).
inline double conditional_entropy_subtractive(const DensityOperator& rho,
                                              const std::vector<int>& given) {
  return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace(rho, given));
}

inline double conditional_entropy_subtractive(const DensityOperator& rho, int given) {
  return conditional_entropy_subtractive(rho, std::vector<int>{given});
}

// I(A:B) = S(A) + S(B) - S(AB) for the cut (side_a | complement).
inline double mutual_information(const DensityOperator& rho,
                                 const std::vector<int>& side_a) {
  const std::vector<int> side_b = complement_subsystems(rho, side_a);
  return von_neumann_entropy(partial_trace(rho, side_a)) +
         von_neumann_entropy(partial_trace(rho, side_b)) - von_neumann_entropy(rho);
}

inline double mutual_information(const DensityOperator& rho, int side_a) {
  return mutual_information(rho, std::vector<int>{side_a});
}

// Classical mutual information of a joint table; rows index a, columns b.
inline double classical_mutual_information(const Eigen::MatrixXd& joint) {
  if (joint.rows() < 1 || joint.cols() < 1)
    throw std::invalid_argument("joint distribution table is empty");
  double sum = 0.0;
  for (Eigen::Index r = 0; r < joint.rows(); ++r)
    for (Eigen::Index c = 0; c < joint.cols(); ++c) {
      if (joint(r, c) < -tol::psd)
        throw std::invalid_argument("negative joint probability");
      sum += joint(r, c);
    }
  if (std::abs(sum - 1.0) > tol::trace)
    throw std::invalid_argument("joint probabilities do not sum to one");

  std::vector<double> pa(joint.rows(), 0.0), pb(joint.cols(), 0.0), pab;
  pab.reserve(joint.size());
  for (Eigen::Index r = 0; r < joint.rows(); ++r)
    for (Eigen::Index c = 0; c < joint.cols(); ++c) {
      pa[r] += joint(r, c);
      pb[c] += joint(r, c);
      pab.push_back(joint(r, c));
    }
  return detail::entropy_bits(pa) + detail::entropy_bits(pb) -
         detail::entropy_bits(pab);
}

// Classical conditional entropy H(b|a) = H(ab) - H(a) of a joint table.
inline double classical_conditional_entropy(const Eigen::MatrixXd& joint) {
  std::vector<double> pa(joint.rows(), 0.0), pab;
  pab.reserve(joint.size());
  for (Eigen::Index r = 0; r < joint.rows(); ++r)
    for (Eigen::Index c = 0; c < joint.cols(); ++c) {
      pa[r] += joint(r, c);
      pab.push_back(joint(r, c));
    }
  return detail::entropy_bits(pab) - detail::entropy_bits(pa);
}

}  // namespace qcorr
