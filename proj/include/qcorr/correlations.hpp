// SPDX-License-Identifier: Apache-2.0
//
// Headline quantities: quantum discord (minimized over rank-1 projective
// measurements), the one-way information deficit, classicality detectors,
// and the mutual-information-preservation criterion for local channels.
#pragma once

#include "qcorr/optimize.hpp"

namespace qcorr {

struct OptimizationReport {
  double value = 0.0;  // bits
  int measured = 0;    // subsystem the measurement acted on
  MeasurementParameters argmin;
  int grid_size = 0;
  int refinement_steps = 0;
  std::vector<double> value_history;  // non-increasing
};

namespace detail {

// sum_a (|u_a><u_a| (x) 1) rho (|u_a><u_a| (x) 1) for basis columns u_a.
inline Matrix dephase_rank1_raw(const Matrix& rho, const std::vector<int>& dims,
                                int subsystem, const Matrix& basis) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (Eigen::Index a = 0; a < basis.cols(); ++a) {
    const Matrix p = basis.col(a) * basis.col(a).adjoint();
    const Matrix e = embed_at(p, dims, subsystem);
    out += e * rho * e;
  }
  return out;
}

}  // namespace detail

// delta(rest|measured) = min over rank-1 projective measurements of
// I(measured:rest) - J(rest|measurement). Equals the gap between the two
// conditional entropies at the minimizing basis. Nonnegative up to optimizer
// noise; values in (-1e-7, 0) are clipped to zero.
inline OptimizationReport discord(const DensityOperator& rho, int measured,
                                  const OptimizerConfig& cfg = {}) {
  const int d = rho.dim_of(measured);
  const double s_measured = von_neumann_entropy(partial_trace(rho, {measured}));
  const double s_total = von_neumann_entropy(rho);
  const Matrix& m = rho.matrix();
  const std::vector<int>& dims = rho.dims();

  const Objective f = [&](const std::vector<double>& angles) {
    return detail::measured_cond_entropy_raw(m, dims, measured,
                                             basis_unitary({angles}, d));
  };
  const MinimizeResult r = minimize_over_bases(d, f, cfg);

  OptimizationReport rep;
  rep.measured = measured;
  rep.value = s_measured - s_total + r.value;
  if (rep.value < 0.0 && rep.value > -1e-7) rep.value = 0.0;
  rep.argmin.angles = r.argmin;
  rep.grid_size = r.grid_size;
  rep.refinement_steps = r.refinement_steps;
  rep.value_history.reserve(r.history.size());
  for (double h : r.history) rep.value_history.push_back(s_measured - s_total + h);
  return rep;
}

// min over rank-1 projective measurements of S(dephased) - S(rho): the
// entropy cost of making the measured side classical. Zero iff some basis
// dephases without disturbance.
inline OptimizationReport one_way_deficit(const DensityOperator& rho, int measured,
                                          const OptimizerConfig& cfg = {}) {
  const int d = rho.dim_of(measured);
  const double s_total = von_neumann_entropy(rho);
  const Matrix& m = rho.matrix();
  const std::vector<int>& dims = rho.dims();

  const Objective f = [&](const std::vector<double>& angles) {
    return detail::spectrum_entropy(detail::dephase_rank1_raw(
               m, dims, measured, basis_unitary({angles}, d))) -
           s_total;
  };
  const MinimizeResult r = minimize_over_bases(d, f, cfg);

  OptimizationReport rep;
  rep.measured = measured;
  rep.value = r.value;
  if (rep.value < 0.0 && rep.value > -1e-7) rep.value = 0.0;
  rep.argmin.angles = r.argmin;
  rep.grid_size = r.grid_size;
  rep.refinement_steps = r.refinement_steps;
  rep.value_history = r.history;
  return rep;
}

// Convenience: the larger of the two one-sided discords of a bipartite state.
inline double symmetric_discord(const DensityOperator& rho,
                                const OptimizerConfig& cfg = {}) {
  if (rho.subsystem_count() != 2)
    throw std::invalid_argument("symmetric discord needs exactly two subsystems");
  return std::max(discord(rho, 0, cfg).value, discord(rho, 1, cfg).value);
}

struct ClassicalityVerdict {
  bool is_classical = false;
  double max_disturbance = 0.0;     // max-norm distance to the dephased state
  std::vector<int> dephased_sides;  // subsystems the witness basis lives on
  std::vector<Matrix> witness_basis;  // per side, unitary columns = basis
};

namespace detail {

// Search space for one side: the marginal eigenbasis with free unitary
// rotations inside each degenerate eigenvalue block. Any basis that leaves
// the state's dephasing invariant must diagonalize the marginal, so this
// covers all candidates.
struct BlockBasis {
  Matrix eigvecs;
  std::vector<int> block_sizes;
  int free_params = 0;
};

inline BlockBasis block_basis_for(const Matrix& marginal) {
  BlockBasis bb;
  const EigenSystem es = hermitian_eigensystem(marginal);
  bb.eigvecs = es.vectors;
  int start = 0;
  for (int i = 1; i <= es.values.size(); ++i) {
    if (i == es.values.size() || es.values(i) - es.values(i - 1) > tol::degeneracy) {
      bb.block_sizes.push_back(i - start);
      start = i;
    }
  }
  for (int b : bb.block_sizes)
    if (b > 1) bb.free_params += parameter_count(b);
  return bb;
}

inline Matrix block_basis_apply(const BlockBasis& bb, const double* params) {
  Matrix u = bb.eigvecs;
  int col = 0;
  const double* p = params;
  for (int b : bb.block_sizes) {
    if (b > 1) {
      MeasurementParameters mp{std::vector<double>(p, p + parameter_count(b))};
      u.middleCols(col, b) = bb.eigvecs.middleCols(col, b) * basis_unitary(mp, b);
      p += parameter_count(b);
    }
    col += b;
  }
  return u;
}

// Tr_rest[rho (1 (x) W)] for a seeded Hermitian product operator W on the
// other subsystems, symmetrized. When the state is classical on `side` this
// compression is diagonal in the classical basis, so diagonalizing it inside
// the degenerate marginal blocks recovers that basis exactly.
inline Matrix side_compression(const DensityOperator& rho, int side,
                               std::uint64_t seed) {
  SplitMix64 rng(seed);
  Matrix op = rho.matrix();
  for (int s : complement_subsystems(rho, {side})) {
    const int d = rho.dims()[s];
    Matrix g(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        g(r, c) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
    op = op * embed_at(g + g.adjoint(), rho.dims(), s);
  }
  const Matrix t = partial_trace_raw(op, rho.dims(), {side});
  return 0.5 * (t + t.adjoint());
}

inline void refine_blocks_with(BlockBasis& bb, const Matrix& h) {
  int col = 0;
  for (int b : bb.block_sizes) {
    if (b > 1) {
      const Matrix sub = bb.eigvecs.middleCols(col, b).adjoint() * h *
                         bb.eigvecs.middleCols(col, b);
      const EigenSystem es = hermitian_eigensystem(0.5 * (sub + sub.adjoint()));
      bb.eigvecs.middleCols(col, b) = bb.eigvecs.middleCols(col, b) * es.vectors;
    }
    col += b;
  }
}

// Cartesian product of per-pair (theta, phi) lattices for small parameter
// counts; keeps the coarse stage deterministic.
inline std::vector<std::vector<double>> angle_lattice(int n_pairs, int n_theta,
                                                      int n_phi) {
  std::vector<std::vector<double>> out = {{}};
  const auto pair_grid = qubit_angle_grid(n_theta, n_phi);
  for (int k = 0; k < n_pairs; ++k) {
    std::vector<std::vector<double>> next;
    next.reserve(out.size() * pair_grid.size());
    for (const auto& prefix : out)
      for (const auto& pair : pair_grid) {
        std::vector<double> x = prefix;
        x.insert(x.end(), pair.begin(), pair.end());
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

inline ClassicalityVerdict classicality_search(const DensityOperator& rho,
                                               const std::vector<int>& sides,
                                               double tolerance,
                                               const OptimizerConfig& cfg) {
  std::vector<BlockBasis> bases;
  std::vector<int> offsets;
  int total_params = 0;
  for (int s : sides) {
    BlockBasis bb = block_basis_for(partial_trace(rho, {s}).matrix());
    offsets.push_back(total_params);
    total_params += bb.free_params;
    bases.push_back(std::move(bb));
  }

  const Matrix& m = rho.matrix();
  const std::vector<int>& dims = rho.dims();
  auto side_bases = [&](const std::vector<double>& params) {
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < sides.size(); ++i)
      out.push_back(block_basis_apply(bases[i], params.data() + offsets[i]));
    return out;
  };
  const Objective disturbance = [&](const std::vector<double>& params) {
    Matrix dephased = m;
    const auto us = side_bases(params);
    for (std::size_t i = 0; i < sides.size(); ++i)
      dephased = dephase_rank1_raw(dephased, dims, sides[i], us[i]);
    return max_abs(m - dephased);
  };

  MinimizeResult r;
  if (total_params == 0) {
    r.value = disturbance({});
    r.grid_size = 1;
    r.history.push_back(r.value);
  } else {
    // Pick the best block-refined representative eigenbasis before the
    // angle search; for classical states this already lands on a witness.
    const std::vector<double> zero(total_params, 0.0);
    std::vector<BlockBasis> best_bases = bases;
    double best_zero = disturbance(zero);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<BlockBasis> refined = bases;
      for (std::size_t i = 0; i < sides.size(); ++i) {
        SplitMix64 mixer = SplitMix64::substream(
            cfg.seed ^ 0x51dec0deULL, 16 * trial + static_cast<int>(i));
        refine_blocks_with(refined[i],
                           side_compression(rho, sides[i], mixer.next_u64()));
      }
      std::swap(bases, refined);
      const double v = disturbance(zero);
      if (v < best_zero) {
        best_zero = v;
        best_bases = bases;
      }
      std::swap(bases, refined);
    }
    bases = std::move(best_bases);

    std::vector<std::vector<double>> candidates;
    if (total_params == 2) {
      candidates = qubit_angle_grid(cfg.grid_theta, cfg.grid_phi);
    } else if (total_params == 4) {
      candidates = angle_lattice(2, std::max(4, cfg.grid_theta / 3),
                                 std::max(8, cfg.grid_phi / 3));
    } else {
      candidates = angle_samples(total_params, cfg.multistart * 8, cfg.seed);
    }
    // The unrotated marginal eigenbasis is always the first candidate.
    candidates.insert(candidates.begin(), std::vector<double>(total_params, 0.0));
    const std::vector<double> step(total_params, 0.2);
    r = grid_refine_minimize(disturbance, candidates, step, cfg);
  }

  ClassicalityVerdict v;
  v.max_disturbance = r.value;
  v.is_classical = r.value <= tolerance;
  v.dephased_sides = sides;
  v.witness_basis = side_bases(total_params == 0 ? std::vector<double>{} : r.argmin);
  return v;
}

}  // namespace detail

// True iff some orthonormal product basis dephases the state onto itself:
// the state can be read out completely without disturbing it.
inline ClassicalityVerdict is_classically_correlated(const DensityOperator& rho,
                                                     double tolerance = tol::classical,
                                                     const OptimizerConfig& cfg = {}) {
  if (rho.subsystem_count() != 2)
    throw std::invalid_argument("classicality test needs exactly two subsystems");
  return detail::classicality_search(rho, {0, 1}, tolerance, cfg);
}

// True iff some orthonormal basis on classical_side alone dephases the state
// onto itself (zero one-way discord when measured on that side).
inline ClassicalityVerdict is_classical_quantum(const DensityOperator& rho,
                                                int classical_side,
                                                double tolerance = tol::classical,
                                                const OptimizerConfig& cfg = {}) {
  if (classical_side < 0 || classical_side >= rho.subsystem_count())
    throw std::invalid_argument("classical side index out of range");
  return detail::classicality_search(rho, {classical_side}, tolerance, cfg);
}

// A channel acting on a single subsystem, given by Kraus operators.
struct LocalChannel {
  int subsystem = 0;
  std::vector<Matrix> kraus;

  static LocalChannel from_measurement(const ProjectiveMeasurement& m) {
    return {m.subsystem(), m.projectors()};
  }
  static LocalChannel identity_channel(int subsystem, int dim) {
    return {subsystem, {Matrix::Identity(dim, dim)}};
  }
};

inline DensityOperator apply_channel(const DensityOperator& rho,
                                     const LocalChannel& ch) {
  if (ch.kraus.empty()) throw std::invalid_argument("channel has no Kraus operators");
  const int d = rho.dim_of(ch.subsystem);
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& k : ch.kraus) {
    if (k.rows() != d || k.cols() != d)
      throw std::invalid_argument("Kraus operator does not match subsystem dimension");
    sum += k.adjoint() * k;
  }
  if (max_abs(sum - Matrix::Identity(d, d)) > tol::hermitian)
    throw std::invalid_argument("channel is not trace-preserving");

  Matrix out = Matrix::Zero(rho.total_dim(), rho.total_dim());
  for (const Matrix& k : ch.kraus) {
    const Matrix e = embed_at(k, rho.dims(), ch.subsystem);
    out += e * rho.matrix() * e.adjoint();
  }
  return DensityOperator(rho.dims(), std::move(out));
}

struct ChannelReport {
  bool preserved = false;
  double mi_before = 0.0;
  double mi_after = 0.0;
  double state_change = 0.0;  // max-norm distance between input and output
  bool state_unchanged = false;
};

// Checks whether a local channel leaves the mutual information across the
// cut intact; such a channel extracts only classical information.
inline ChannelReport preserves_mutual_information(const DensityOperator& rho,
                                                  const LocalChannel& ch,
                                                  const std::vector<int>& cut_a,
                                                  double tolerance = 1e-9) {
  ChannelReport rep;
  rep.mi_before = mutual_information(rho, cut_a);
  const DensityOperator after = apply_channel(rho, ch);
  rep.mi_after = mutual_information(after, cut_a);
  rep.state_change = max_abs(rho.matrix() - after.matrix());
  rep.state_unchanged = rep.state_change <= tol::spectrum_zero;
  rep.preserved = std::abs(rep.mi_before - rep.mi_after) <= tolerance;
  return rep;
}

}  // namespace qcorr
