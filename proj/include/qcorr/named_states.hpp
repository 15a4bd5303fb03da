// SPDX-License-Identifier: Apache-2.0
//
// Factories for the reference states used throughout the library and CLI,
// plus the LOCC-ensemble constructor they are built from.
#pragma once


#include "qcorr/measurement.hpp"

namespace qcorr {

struct LoccEntry {
  double prob;
  Ket alice;
  Ket bob;
};

// State prepared by local operations coordinated through a shared classical
// record k. With keep_flag the record is kept as an orthonormal flag
// register (dimension max(K, 2)); without it the flag is forgotten and the
// result is the separable mixture sum_k p_k |a_k b_k><a_k b_k|.
inline DensityOperator locc_ensemble(const std::vector<LoccEntry>& entries,
                                     bool keep_flag = false) {
  if (entries.empty()) throw std::invalid_argument("LOCC ensemble is empty");
  double sum = 0.0;
  for (const LoccEntry& e : entries) {
    if (e.prob < -tol::psd) throw std::invalid_argument("negative LOCC probability");
    if (e.alice.dims() != entries.front().alice.dims() ||
        e.bob.dims() != entries.front().bob.dims())
      throw std::invalid_argument("LOCC ensemble members have mismatched dims");
    sum += e.prob;
  }
  if (std::abs(sum - 1.0) > tol::trace)
    throw std::invalid_argument("LOCC probabilities do not sum to one");

  std::vector<int> dims = entries.front().alice.dims();
  dims.insert(dims.end(), entries.front().bob.dims().begin(),
              entries.front().bob.dims().end());
  const int d_ab = dims_product(dims);

  if (!keep_flag) {
    Matrix m = Matrix::Zero(d_ab, d_ab);
    for (const LoccEntry& e : entries)
      m += e.prob * kron(e.alice.projector(), e.bob.projector());
    return DensityOperator(std::move(dims), std::move(m));
  }

  const int flag_dim = std::max<int>(2, static_cast<int>(entries.size()));
  Matrix m = Matrix::Zero(d_ab * flag_dim, d_ab * flag_dim);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    Matrix flag = Matrix::Zero(flag_dim, flag_dim);
    flag(k, k) = 1.0;
    m += entries[k].prob *
         kron(kron(entries[k].alice.projector(), entries[k].bob.projector()), flag);
  }
  dims.push_back(flag_dim);
  return DensityOperator(std::move(dims), std::move(m));
}

// Two perfectly correlated records in the given local pure states:
// (|a0 b0><a0 b0| + |a1 b1><a1 b1|) / 2.
inline DensityOperator correlated_pair(const Ket& a0, const Ket& b0, const Ket& a1,
                                       const Ket& b1) {
  return locc_ensemble({{0.5, a0, b0}, {0.5, a1, b1}});
}

// (|00><00| + |11><11|) / 2: a classically correlated pair of bits.
inline DensityOperator maximally_classical() {
  return correlated_pair(ket0(), ket0(), ket1(), ket1());
}

// The same construction rotated to the Hadamard basis on both sides.
inline DensityOperator maximally_classical_x() {
  return correlated_pair(ket_plus(), ket_plus(), ket_minus(), ket_minus());
}

// Correlated records with the second side in the Hadamard basis.
inline DensityOperator maximally_classical_zx() {
  return correlated_pair(ket0(), ket_plus(), ket1(), ket_minus());
}

// Average state of the two-coin preparation game; psi/phi/chi default to |+>.
inline DensityOperator coin_flip_state(const Ket& psi = ket_plus(),
                                       const Ket& phi = ket_plus(),
                                       const Ket& chi = ket_plus()) {
  return locc_ensemble({{0.25, ket0(), ket0()},
                        {0.25, ket0(), psi},
                        {0.25, psi, ket0()},
                        {0.25, phi, chi}});
}

// (|00> + |11>) / sqrt(2) as a density operator.
inline DensityOperator bell() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return pure_state(Ket({2, 2}, std::move(v)));
}

// Average state of the BB84 rounds with the sender's record kept in the
// preparation basis: an equal mixture of the two maximally classical
// constructions in the computational and Hadamard bases. Discordant as seen
// by the receiver. Writing the record in the computational basis instead
// (maximally_classical_zx as the second ingredient) collapses the discord:
// that mixture's conditional blocks commute, so it is classically correlated.
inline DensityOperator bb84_state() {
  Matrix m = 0.5 * maximally_classical().matrix() +
             0.5 * maximally_classical_x().matrix();
  return DensityOperator({2, 2}, std::move(m));
}

// Branch states of the three-party deficit example: one side holds a
// classical bit, the other a nonorthogonal pair.
inline DensityOperator classical_on_b_branch() {
  return correlated_pair(ket0(), ket0(), ket_plus(), ket1());
}

inline DensityOperator classical_on_a_branch() {
  return correlated_pair(ket0(), ket0(), ket1(), ket_plus());
}

// Three-qubit state with finite discord whose correlations become locally
// accessible once the third party announces its bit: each branch, selected
// by the flag qubit C, is one-sidedly classical.
inline DensityOperator deficit_state() {
  Matrix m0 = Matrix::Zero(2, 2), m1 = Matrix::Zero(2, 2);
  m0(0, 0) = 1.0;
  m1(1, 1) = 1.0;
  Matrix m = 0.5 * kron(classical_on_b_branch().matrix(), m0) +
             0.5 * kron(classical_on_a_branch().matrix(), m1);
  return DensityOperator({2, 2, 2}, std::move(m));
}

// Equal mixture of two maximally entangled states supported on orthogonal
// halves of a four-level system: a block measurement reveals which state is
// shared without disturbing it, even though both members are entangled.
inline DensityOperator partially_classical_state() {
  Vector v1 = Vector::Zero(8), v2 = Vector::Zero(8);
  // |0,0> + |1,1| and |2,+> + |3,->, first factor dimension 4.
  v1(0) = v1(3) = 1.0 / std::sqrt(2.0);
  v2(4) = v2(5) = 0.5;
  v2(6) = 0.5;
  v2(7) = -0.5;
  const Ket k1({4, 2}, std::move(v1)), k2({4, 2}, std::move(v2));
  Matrix m = 0.5 * k1.projector() + 0.5 * k2.projector();
  return DensityOperator({4, 2}, std::move(m));
}

// The two members of the scenario above as a labeled ensemble.
inline Ensemble partially_classical_members() {
  Vector v1 = Vector::Zero(8), v2 = Vector::Zero(8);
  v1(0) = v1(3) = 1.0 / std::sqrt(2.0);
  v2(4) = v2(5) = 0.5;
  v2(6) = 0.5;
  v2(7) = -0.5;
  return Ensemble({{0.5, pure_state(Ket({4, 2}, std::move(v1)))},
                   {0.5, pure_state(Ket({4, 2}, std::move(v2)))}});
}

// Rank-2 block measurement distinguishing the two halves of the four-level
// side: P = |0><0| + |1><1| and P' = |2><2| + |3><3|.
inline ProjectiveMeasurement coarse_block_measurement(int subsystem = 0) {
  Matrix p01 = Matrix::Zero(4, 4), p23 = Matrix::Zero(4, 4);
  p01(0, 0) = p01(1, 1) = 1.0;
  p23(2, 2) = p23(3, 3) = 1.0;
  return ProjectiveMeasurement(subsystem, {p01, p23});
}

// Mixing two classically correlated states in conjugate bases yields a
// separable state with discord; numerically identical to bb84_state but kept
// as its own registry entry for the non-convexity narrative.
inline DensityOperator discordant_separable() {
  Matrix m = 0.5 * maximally_classical().matrix() +
             0.5 * maximally_classical_x().matrix();
  return DensityOperator({2, 2}, std::move(m));
}

struct NamedState {
  std::string name;
  DensityOperator state;
};

inline const std::vector<std::string>& state_registry() {
  static const std::vector<std::string> names = {
      "bell",        "classical_zz",         "classical_xx",
      "classical_zx", "coin_flip",           "bb84",
      "deficit",     "partially_classical", "discordant_separable",
  };
  return names;
}

inline NamedState make_named_state(const std::string& name) {
  if (name == "bell") return {name, bell()};
  if (name == "classical_zz") return {name, maximally_classical()};
  if (name == "classical_xx") return {name, maximally_classical_x()};
  if (name == "classical_zx") return {name, maximally_classical_zx()};
  if (name == "coin_flip") return {name, coin_flip_state()};
  if (name == "bb84") return {name, bb84_state()};
  if (name == "deficit") return {name, deficit_state()};
  if (name == "partially_classical") return {name, partially_classical_state()};
  if (name == "discordant_separable") return {name, discordant_separable()};
  std::string known;
  for (const std::string& n : state_registry()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown state '" + name + "'; known states: " + known);
}

}  // namespace qcorr
