// SPDX-License-Identifier: Apache-2.0
//
// JSON interchange: the state file format used by the CLI and the
// serialized report/record shapes. Key order is fixed so that
// emit -> load -> emit round-trips byte-for-byte.
#pragma once

#include <fstream>

#include <json.hpp>

#include "qcorr/correlations.hpp"
#include "qcorr/protocols.hpp"

namespace qcorr {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json matrix_real_part(const Matrix& m, bool imag) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(imag ? m(r, c).imag() : m(r, c).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

// {"dims":[...],"re":[[...]],"im":[[...]]}, matrices row-major.
inline Json state_to_json(const DensityOperator& rho) {
  Json j;
  j["dims"] = rho.dims();
  j["re"] = detail::matrix_real_part(rho.matrix(), false);
  j["im"] = detail::matrix_real_part(rho.matrix(), true);
  return j;
}

inline DensityOperator state_from_json(const Json& j) {
  if (!j.contains("dims") || !j.contains("re") || !j.contains("im"))
    throw std::invalid_argument("state file needs dims, re and im fields");
  const std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  const int d = dims_product(dims);
  if (static_cast<int>(re.size()) != d || static_cast<int>(im.size()) != d)
    throw std::invalid_argument("matrix row count does not match dims");
  Matrix m(d, d);
  for (int r = 0; r < d; ++r) {
    if (static_cast<int>(re[r].size()) != d || static_cast<int>(im[r].size()) != d)
      throw std::invalid_argument("matrix column count does not match dims");
    for (int c = 0; c < d; ++c)
      m(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
  }
  return DensityOperator(dims, std::move(m));
}

inline std::string state_to_string(const DensityOperator& rho) {
  return state_to_json(rho).dump(2) + "\n";
}

inline void save_state(const std::string& path, const DensityOperator& rho) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << state_to_string(rho);
}

inline DensityOperator load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open state file '" + path + "'");
  Json j;
  in >> j;
  return state_from_json(j);
}

inline Json report_to_json(const OptimizationReport& r) {
  Json j;
  j["value"] = r.value;
  j["measured"] = r.measured;
  j["argmin"] = r.argmin.angles;
  j["grid_size"] = r.grid_size;
  j["refinement_steps"] = r.refinement_steps;
  j["value_history"] = r.value_history;
  return j;
}

inline Json verdict_to_json(const ClassicalityVerdict& v) {
  Json j;
  j["is_classical"] = v.is_classical;
  j["max_disturbance"] = v.max_disturbance;
  j["dephased_sides"] = v.dephased_sides;
  Json bases = Json::array();
  for (const Matrix& u : v.witness_basis) {
    Json b;
    b["re"] = detail::matrix_real_part(u, false);
    b["im"] = detail::matrix_real_part(u, true);
    bases.push_back(std::move(b));
  }
  j["witness_basis"] = std::move(bases);
  return j;
}

inline Json bb84_to_json(const BB84Run& run) {
  Json j;
  j["rounds"] = run.rounds;
  j["seed"] = run.seed;
  j["eavesdrop"] = run.eavesdrop;
  j["rng_algorithm"] = run.rng_algorithm;
  j["sifted_length"] = run.sifted_key_a.size();
  j["sifted_errors"] = run.sifted_errors;
  j["qber"] = run.qber;
  j["sifted_key_a"] = run.sifted_key_a;
  j["sifted_key_b"] = run.sifted_key_b;
  Json ms;
  ms["rounds"] = run.mismatch_stats.rounds;
  ms["agreements"] = run.mismatch_stats.agreements;
  ms["agreement_rate"] = run.mismatch_stats.agreement_rate;
  ms["correlation"] = run.mismatch_stats.correlation;
  ms["sigma"] = run.mismatch_stats.sigma;
  j["mismatch_stats"] = std::move(ms);
  Json records = Json::array();
  for (const BB84Round& r : run.records)
    records.push_back({r.alice_bit, static_cast<int>(r.alice_basis),
                       static_cast<int>(r.bob_basis), r.bob_outcome});
  j["records"] = std::move(records);
  return j;
}

inline Json decode_to_json(const DecodingExperiment& e) {
  Json j;
  j["x_alphabet"] = e.x_alphabet;
  j["prior_entropy"] = e.prior_entropy;
  j["holevo"] = e.holevo;
  j["global_result"] = e.global_result;
  j["locc_result"] = e.locc_result;
  j["advantage"] = e.advantage;
  j["global_angles"] = e.global_angles;
  Json locc;
  locc["first_side_angles"] = e.locc_strategy.first_side_angles;
  locc["second_side_angles"] = e.locc_strategy.second_side_angles;
  j["locc_strategy"] = std::move(locc);
  j["global_diagnostics"] = {{"candidates", e.global_diag.candidates},
                             {"refinement_steps", e.global_diag.refinement_steps}};
  j["locc_diagnostics"] = {{"candidates", e.locc_diag.candidates},
                           {"refinement_steps", e.locc_diag.refinement_steps}};
  return j;
}

}  // namespace qcorr
