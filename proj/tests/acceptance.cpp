// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Each criterion prints one [PASS]/[FAIL] line;
// the process exits nonzero if any criterion fails.
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "qcorr/io.hpp"
#include "test_support.hpp"

using namespace qcorr;
using test_support::haar_ket;
using test_support::random_density;
using test_support::random_joint_table;
using test_support::random_probs;
using test_support::random_unitary;

namespace {

int g_failures = 0;

void criterion(const std::string& name, const std::function<void()>& body) {
  try {
    body();
    std::printf("[PASS] %s\n", name.c_str());
  } catch (const std::exception& e) {
    std::printf("[FAIL] %s: %s\n", name.c_str(), e.what());
    ++g_failures;
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

void require_close(double actual, double expected, double tol,
                   const std::string& what) {
  if (std::abs(actual - expected) > tol)
    throw std::runtime_error(what + ": got " + std::to_string(actual) +
                             ", expected " + std::to_string(expected) +
                             " +- " + std::to_string(tol));
}

// Pinned once from dense-grid brute force (96x192 plus compass polish).
constexpr double kBb84DiscordOnB = 0.311278124459;
// Pinned once from the default decode configuration.
constexpr double kPinnedAdvantage = 0.311278124465;

void criterion_bell() {
  const DensityOperator b = bell();
  require_close(von_neumann_entropy(b), 0.0, 1e-9, "S(AB)");
  require_close(von_neumann_entropy(partial_trace(b, {0})), 1.0, 1e-9, "S(A)");
  require_close(von_neumann_entropy(partial_trace(b, {1})), 1.0, 1e-9, "S(B)");
  require_close(conditional_entropy_subtractive(b, 0), -1.0, 1e-9, "S(B|A)");
  require_close(mutual_information(b, 0), 2.0, 1e-9, "I(A:B)");
  require_close(discord(b, 0).value, 1.0, 1e-6, "discord measured on A");
  require_close(discord(b, 1).value, 1.0, 1e-6, "discord measured on B");
  require_close(negativity(b, {0}), 0.5, 1e-9, "negativity");
}

void criterion_classical_state() {
  const DensityOperator zz = maximally_classical();
  const ClassicalityVerdict v = is_classically_correlated(zz);
  require(v.is_classical, "ZZ state must be classical");
  for (const Matrix& u : v.witness_basis)
    require(std::abs(u(0, 1)) <= 1e-6 && std::abs(u(1, 0)) <= 1e-6,
            "witness must be the computational basis on both sides");
  const DensityOperator dephased =
      measure_channel(measure_channel(zz, computational_measurement(2, 0)),
                      computational_measurement(2, 1));
  require(max_abs(dephased.matrix() - zz.matrix()) <= 1e-12,
          "computational dephasing must leave the state invariant");
  require(discord(zz, 0).value <= 1e-7, "discord on A");
  require(discord(zz, 1).value <= 1e-7, "discord on B");
  require_close(mutual_information(zz, 0), 1.0, 1e-9, "I(A:B)");

  const DensityOperator xx = maximally_classical_x();
  const ClassicalityVerdict vx = is_classically_correlated(xx);
  require(vx.is_classical, "XX construction must be classical");
  require(std::abs(vx.witness_basis[0](1, 0)) > 0.1,
          "XX witness must be a rotated basis");
  Matrix dephased_x = xx.matrix();
  for (std::size_t i = 0; i < vx.dephased_sides.size(); ++i)
    dephased_x = detail::dephase_rank1_raw(dephased_x, xx.dims(),
                                           vx.dephased_sides[i],
                                           vx.witness_basis[i]);
  require(max_abs(dephased_x - xx.matrix()) <= 1e-7,
          "witness dephasing must leave the XX state invariant");
}

void criterion_bb84_state() {
  const DensityOperator rho = bb84_state();
  require(!is_classical_quantum(rho, 1).is_classical,
          "must not be classical on the transmitted side");
  const double d = discord(rho, 1).value;
  require(d > 1e-3, "discord measured on B must be finite");
  require_close(d, kBb84DiscordOnB, 1e-6, "pinned discord value");
}

void criterion_deficit_state() {
  const DensityOperator rho = deficit_state();
  require(discord(rho, 0).value > 1e-3, "discord of the A|(BC) grouping");
  require(discord(rho, 1).value > 1e-3, "discord of the B|(AC) grouping");

  const ClassicalityVerdict vb = is_classical_quantum(classical_on_b_branch(), 1);
  require(vb.is_classical && vb.max_disturbance <= 1e-9,
          "first branch must be classical on B without disturbance");
  const ClassicalityVerdict va = is_classical_quantum(classical_on_a_branch(), 0);
  require(va.is_classical && va.max_disturbance <= 1e-9,
          "second branch must be classical on A without disturbance");
}

void criterion_coarse_measurement() {
  const DensityOperator rho = partially_classical_state();
  const ProjectiveMeasurement coarse = coarse_block_measurement();
  const DensityOperator after = measure_channel(rho, coarse);
  require(max_abs(after.matrix() - rho.matrix()) <= 1e-12,
          "coarse measurement must leave the mixture invariant");
  const ChannelReport rep = preserves_mutual_information(
      rho, LocalChannel::from_measurement(coarse), {0}, 1e-9);
  require(rep.preserved, "mutual information must be unchanged");
  require(negativity(rho, {0}) > 0.0, "entangled before");
  require(negativity(after, {0}) > 0.0, "entangled after");
}

void criterion_nonconvexity() {
  require(discord(discordant_separable(), 0).value > 1e-3,
          "mixture must be discordant");
  require(discord(maximally_classical(), 0).value <= 1e-7,
          "first ingredient must be classical");
  require(discord(maximally_classical_x(), 0).value <= 1e-7,
          "second ingredient must be classical");
}

void criterion_bb84_protocol() {
  const BB84Run clean = run_bb84(10000, 2024);
  require(clean.sifted_errors == 0, "sifted keys must agree exactly");
  require(clean.sifted_key_a == clean.sifted_key_b, "key mismatch");
  require(std::abs(clean.mismatch_stats.correlation) <=
              3.0 * clean.mismatch_stats.sigma,
          "mismatched-basis correlation exceeds 3 sigma");

  const BB84Run attacked = run_bb84(10000, 2024, true);
  const double sigma =
      std::sqrt(0.25 * 0.75 / static_cast<double>(attacked.sifted_key_a.size()));
  require_close(attacked.qber, 0.25, 3.0 * sigma, "intercept-resend error rate");
}

void criterion_decoding_game() {
  const DecodingExperiment classical =
      run_decoding({maximally_classical(), encoding_flip2()});
  require(std::abs(classical.advantage) <= 1e-6,
          "classical initial state: local strategy must reach the optimum");

  const DecodingExperiment disc =
      run_decoding({discordant_separable(), encoding_pauli4()});
  require(disc.advantage > 0.0, "discordant initial state must show advantage");
  require_close(disc.advantage, kPinnedAdvantage, 1e-6, "pinned advantage");

  const DecodeConfig fast = decode_fast_config();
  for (int i = 0; i < 50; ++i) {
    SplitMix64 rng = SplitMix64::substream(999, i);
    const DensityOperator rho = random_density({2, 2}, 1 + i % 4, rng);
    const int k = 2 + i % 3;
    const auto probs = random_probs(k, rng);
    std::vector<EncodingEntry> enc;
    for (int j = 0; j < k; ++j)
      enc.push_back({probs[j], random_unitary(2, rng), "u" + std::to_string(j)});
    const DecodingExperiment e = run_decoding({rho, enc}, fast);
    require(e.locc_result <= e.global_result + 1e-6,
            "locc must not beat the global strategy");
    require(e.global_result <= e.holevo + 1e-6,
            "global strategy must respect the Holevo bound");
    require(e.holevo <= e.prior_entropy + 1e-6,
            "Holevo bound must respect the prior entropy");
  }
}

void criterion_property_suites() {
  SplitMix64 rng(771);
  for (int i = 0; i < 100; ++i) {
    const DensityOperator rho = random_density({2, 2}, 1 + i % 4, rng);
    const Matrix u = random_unitary(4, rng);
    const DensityOperator rotated({2, 2}, u * rho.matrix() * u.adjoint());
    require(std::abs(von_neumann_entropy(rotated) - von_neumann_entropy(rho)) <=
                1e-8,
            "entropy must be unitarily invariant");
  }
  for (int i = 0; i < 100; ++i) {
    const DensityOperator rho = random_density({2, 2}, 1 + i % 4, rng);
    const MeasurementParameters p{{rng.uniform() * std::numbers::pi,
                                   rng.uniform() * 2 * std::numbers::pi}};
    const ProjectiveMeasurement m = basis_from_parameters(p, 2, i % 2);
    require(mutual_information(measure_channel(rho, m), 0) <=
                mutual_information(rho, 0) + 1e-9,
            "mutual information must not increase under measurement");
    require(measured_conditional_entropy(rho, m) >= -1e-12,
            "measured conditional entropy must be nonnegative");
  }
  for (int i = 0; i < 100; ++i) {
    const Eigen::MatrixXd joint = random_joint_table(2 + i % 3, 2 + (i / 3) % 3, rng);
    double weighted = 0.0;
    for (int a = 0; a < joint.rows(); ++a) {
      const double pa = joint.row(a).sum();
      if (pa <= 0.0) continue;
      std::vector<double> cond(joint.cols());
      for (int b = 0; b < joint.cols(); ++b) cond[b] = joint(a, b) / pa;
      weighted += pa * shannon_entropy(ProbabilityDistribution(cond));
    }
    require(std::abs(classical_conditional_entropy(joint) - weighted) <= 1e-12,
            "the two classical conditional entropy routes must agree");
  }
  for (int i = 0; i < 25; ++i) {
    const DensityOperator rho = random_density({2, 2}, 1 + i % 4, rng);
    const Matrix u = kron(random_unitary(2, rng), random_unitary(2, rng));
    const DensityOperator rotated({2, 2}, u * rho.matrix() * u.adjoint());
    require(std::abs(discord(rotated, 0).value - discord(rho, 0).value) <= 2e-6,
            "discord must be invariant under local unitaries");
  }
}

}  // namespace

int main() {
  criterion("criterion 1: Bell state entropies, discord and negativity",
            criterion_bell);
  criterion("criterion 2: maximally classical state and its rotated twin",
            criterion_classical_state);
  criterion("criterion 3: key-distribution state is discordant for the receiver",
            criterion_bb84_state);
  criterion("criterion 4: deficit state discord and branch classicality",
            criterion_deficit_state);
  criterion("criterion 5: coarse measurement preserves state, information and "
            "entanglement",
            criterion_coarse_measurement);
  criterion("criterion 6: mixing classical states creates discord",
            criterion_nonconvexity);
  criterion("criterion 7: key-distribution protocol statistics",
            criterion_bb84_protocol);
  criterion("criterion 8: decoding game bounds and pinned advantage",
            criterion_decoding_game);
  criterion("criterion 9: entropy, data-processing and invariance property "
            "suites",
            criterion_property_suites);

  if (g_failures > 0) std::printf("%d criterion(s) failed\n", g_failures);
  else std::printf("all criteria passed\n");
  return g_failures;
}
