// SPDX-License-Identifier: Apache-2.0
//
// Derivative-free minimization used by the discord / deficit / classicality
// searches: a deterministic coarse stage (angle grid for a qubit basis,
// seeded samples for larger parameter counts) followed by Nelder-Mead
// refinement from the best candidates. Ties resolve to the lowest candidate
// index so results are reproducible.
#pragma once

#include <algorithm>
#include <functional>
#include <numbers>

#include "qcorr/measurement.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

struct OptimizerConfig {
  int grid_theta = 24;        // polar grid points for a qubit basis
  int grid_phi = 48;          // azimuthal grid points
  int multistart = 128;       // seeded starts when the parameter space is larger
  int top_k = 5;              // candidates kept for refinement
  double refine_tol = 1e-9;   // Nelder-Mead f-spread stop
  int max_refine_iter = 400;
  int max_polish_evals = 4000;  // coordinate-descent budget after refinement
  std::uint64_t seed = 12345;
};

struct MinimizeResult {
  double value = 0.0;
  std::vector<double> argmin;
  int grid_size = 0;
  int refinement_steps = 0;
  std::vector<double> history;  // running best, non-increasing
};

using Objective = std::function<double(const std::vector<double>&)>;

namespace detail {

struct NelderMeadResult {
  double value;
  std::vector<double> x;
  int iterations;
};

inline NelderMeadResult nelder_mead(const Objective& f, const std::vector<double>& x0,
                                    const std::vector<double>& step, double tol,
                                    int max_iter) {
  const int n = static_cast<int>(x0.size());
  std::vector<std::vector<double>> x(n + 1, x0);
  for (int i = 0; i < n; ++i) x[i + 1][i] += step[i];
  std::vector<double> fx(n + 1);
  for (int i = 0; i <= n; ++i) fx[i] = f(x[i]);

  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  std::vector<int> idx(n + 1);
  int it = 0;
  for (; it < max_iter; ++it) {
    for (int i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    if (std::abs(fx[idx[n]] - fx[idx[0]]) <= tol) break;

    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) centroid[j] += x[idx[i]][j] / n;

    const std::vector<double>& worst = x[idx[n]];
    std::vector<double> xr(n);
    for (int j = 0; j < n; ++j) xr[j] = centroid[j] + alpha * (centroid[j] - worst[j]);
    const double fr = f(xr);

    if (fr < fx[idx[0]]) {
      std::vector<double> xe(n);
      for (int j = 0; j < n; ++j) xe[j] = centroid[j] + gamma * (xr[j] - centroid[j]);
      const double fe = f(xe);
      if (fe < fr) {
        x[idx[n]] = xe;
        fx[idx[n]] = fe;
      } else {
        x[idx[n]] = xr;
        fx[idx[n]] = fr;
      }
      continue;
    }
    if (fr < fx[idx[n - 1]]) {
      x[idx[n]] = xr;
      fx[idx[n]] = fr;
      continue;
    }
    std::vector<double> xc(n);
    if (fr < fx[idx[n]]) {
      for (int j = 0; j < n; ++j) xc[j] = centroid[j] + rho * (xr[j] - centroid[j]);
    } else {
      for (int j = 0; j < n; ++j) xc[j] = centroid[j] + rho * (worst[j] - centroid[j]);
    }
    const double fc = f(xc);
    if (fc < fx[idx[n]]) {
      x[idx[n]] = xc;
      fx[idx[n]] = fc;
      continue;
    }
    for (int i = 1; i <= n; ++i) {
      for (int j = 0; j < n; ++j)
        x[idx[i]][j] = x[idx[0]][j] + sigma * (x[idx[i]][j] - x[idx[0]][j]);
      fx[idx[i]] = f(x[idx[i]]);
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fx[i] < fx[best]) best = i;
  return {fx[best], x[best], it};
}

// Coordinate descent with step halving. Simplex refinement can stall on
// max-norm objectives; axis probes recover the last digits there.
inline int compass_polish(const Objective& f, std::vector<double>& x, double& fx,
                          double step, int max_evals) {
  int evals = 0;
  while (step > 1e-10 && evals < max_evals) {
    bool improved = false;
    for (std::size_t i = 0; i < x.size() && evals < max_evals; ++i)
      for (double sign : {1.0, -1.0}) {
        std::vector<double> y = x;
        y[i] += sign * step;
        const double fy = f(y);
        ++evals;
        if (fy < fx) {
          x = std::move(y);
          fx = fy;
          improved = true;
        }
      }
    if (!improved) step *= 0.5;
  }
  return evals;
}

}  // namespace detail

// (theta, phi) lattice over the qubit basis manifold. theta = i*pi/n covers
// every projector pair (theta and pi-theta give the same pair) and includes
// the computational and Hadamard bases exactly.
inline std::vector<std::vector<double>> qubit_angle_grid(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("grid density must be >= 1");
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j)
      out.push_back({std::numbers::pi * i / n_theta,
                     2.0 * std::numbers::pi * j / n_phi});
  return out;
}

// Seeded uniform angle vectors: even slots polar-like in [0, pi), odd slots
// azimuthal in [0, 2*pi).
inline std::vector<std::vector<double>> angle_samples(int n_params, int count,
                                                      std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (int s = 0; s < count; ++s) {
    std::vector<double> x(n_params);
    for (int k = 0; k < n_params; ++k)
      x[k] = (k % 2 == 0 ? std::numbers::pi : 2.0 * std::numbers::pi) * rng.uniform();
    out.push_back(std::move(x));
  }
  return out;
}

// Evaluate all candidates in order, then refine the best top_k with
// Nelder-Mead. `step` is the initial simplex spread per coordinate.
inline MinimizeResult grid_refine_minimize(const Objective& f,
                                           const std::vector<std::vector<double>>& candidates,
                                           const std::vector<double>& step,
                                           const OptimizerConfig& cfg) {
  if (candidates.empty()) throw std::invalid_argument("no optimizer candidates");
  std::vector<double> values(candidates.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    values[i] = f(candidates[i]);
    if (values[i] < values[best]) best = i;
  }

  MinimizeResult r;
  r.grid_size = static_cast<int>(candidates.size());
  r.value = values[best];
  r.argmin = candidates[best];
  r.history.push_back(r.value);

  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] != values[b] ? values[a] < values[b] : a < b;
  });

  const int k = std::min<int>(cfg.top_k, static_cast<int>(order.size()));
  for (int i = 0; i < k; ++i) {
    auto nm = detail::nelder_mead(f, candidates[order[i]], step, cfg.refine_tol,
                                  cfg.max_refine_iter);
    r.refinement_steps += nm.iterations;
    if (nm.value < r.value) {
      r.value = nm.value;
      r.argmin = nm.x;
      r.history.push_back(nm.value);
    }
  }

  double initial = 0.0;
  for (double s : step) initial = std::max(initial, s);
  std::vector<double> polished = r.argmin;
  double value = r.value;
  r.refinement_steps +=
      detail::compass_polish(f, polished, value, initial, cfg.max_polish_evals);
  if (value < r.value) {
    r.value = value;
    r.argmin = std::move(polished);
    r.history.push_back(value);
  }
  return r;
}

// Minimize an objective over the rank-1 projective bases of a dim-d
// subsystem, parametrized as in basis_unitary.
inline MinimizeResult minimize_over_bases(int dim, const Objective& f,
                                          const OptimizerConfig& cfg) {
  if (dim == 2) {
    const auto grid = qubit_angle_grid(cfg.grid_theta, cfg.grid_phi);
    const std::vector<double> step = {0.5 * std::numbers::pi / cfg.grid_theta,
                                      std::numbers::pi / cfg.grid_phi};
    return grid_refine_minimize(f, grid, step, cfg);
  }
  const int n = parameter_count(dim);
  auto candidates = angle_samples(n, cfg.multistart, cfg.seed);
  candidates.insert(candidates.begin(), std::vector<double>(n, 0.0));
  const std::vector<double> step(n, 0.3);
  return grid_refine_minimize(f, candidates, step, cfg);
}

}  // namespace qcorr
