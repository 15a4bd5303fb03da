// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch.hpp>

#include "qcorr/entropy.hpp"
#include "qcorr/named_states.hpp"
#include "test_support.hpp"

using namespace qcorr;
using test_support::haar_ket;
using test_support::random_probs;

TEST_CASE("every registered state constructs and validates") {
  for (const std::string& name : state_registry()) {
    const NamedState s = make_named_state(name);
    REQUIRE(std::abs(s.state.matrix().trace().real() - 1.0) <= tol::trace);
  }
}

TEST_CASE("unknown state names report the registry") {
  try {
    make_named_state("nope");
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    REQUIRE(std::string(e.what()).find("bell") != std::string::npos);
  }
}

TEST_CASE("classical two-bit state matches its literal matrix") {
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.5;
  REQUIRE(max_abs(maximally_classical().matrix() - expected) == 0.0);
}

TEST_CASE("Bell state is pure with the known entropy signature") {
  const DensityOperator b = bell();
  REQUIRE(b.purity() == Approx(1.0).margin(1e-12));
  REQUIRE(conditional_entropy_subtractive(b, 0) == Approx(-1.0).margin(1e-12));
  REQUIRE(negativity(b, {0}) == Approx(0.5).margin(1e-12));
}

TEST_CASE("key-distribution average state matches its literal matrix") {
  // Summing the four projectors by hand: the Hadamard-basis pairs contribute
  // 1/8 on every diagonal entry plus the corner / inner couplings.
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.375;
  expected(1, 1) = expected(2, 2) = 0.125;
  expected(0, 3) = expected(3, 0) = 0.125;
  expected(1, 2) = expected(2, 1) = 0.125;
  REQUIRE(max_abs(bb84_state().matrix() - expected) <= 1e-15);
  REQUIRE(std::abs(bb84_state().matrix().trace().real() - 1.0) <= 1e-15);
}

TEST_CASE("key-distribution state is the exact even mixture of the two "
          "correlated-pair constructions") {
  const Matrix structural = 0.5 * maximally_classical().matrix() +
                            0.5 * maximally_classical_x().matrix();
  REQUIRE(max_abs(bb84_state().matrix() - structural) == 0.0);
}

TEST_CASE("LOCC ensemble constructor") {
  SECTION("coin-flip entries average to the coin-flip state") {
    const DensityOperator avg = locc_ensemble({{0.25, ket0(), ket0()},
                                               {0.25, ket0(), ket_plus()},
                                               {0.25, ket_plus(), ket0()},
                                               {0.25, ket_plus(), ket_plus()}});
    REQUIRE(max_abs(avg.matrix() - coin_flip_state().matrix()) <= 1e-15);
  }
  SECTION("a single entry gives a product state") {
    const DensityOperator rho = locc_ensemble({{1.0, ket_plus(), ket1()}});
    REQUIRE(max_abs(rho.matrix() -
                    kron(ket_plus().projector(), ket1().projector())) <= 1e-15);
  }
  SECTION("tracing the flag register recovers the unflagged mixture") {
    const std::vector<LoccEntry> entries = {{0.3, ket0(), ket_minus()},
                                            {0.2, ket_plus(), ket1()},
                                            {0.5, ket1(), ket1()}};
    const DensityOperator flagged = locc_ensemble(entries, true);
    REQUIRE(flagged.dims() == std::vector<int>{2, 2, 3});
    const DensityOperator unflagged = locc_ensemble(entries, false);
    REQUIRE(max_abs(partial_trace(flagged, {0, 1}).matrix() - unflagged.matrix()) <=
            1e-15);
  }
  SECTION("invalid ensembles are rejected") {
    REQUIRE_THROWS_AS(locc_ensemble({{0.7, ket0(), ket0()}}), std::invalid_argument);
  }
}

TEST_CASE("LOCC ensembles are PPT across the A|B cut") {
  SplitMix64 rng(101);
  for (int i = 0; i < 25; ++i) {
    const int k = 2 + i % 3;
    const std::vector<double> p = random_probs(k, rng);
    std::vector<LoccEntry> entries;
    for (int j = 0; j < k; ++j)
      entries.push_back({p[j], haar_ket({2}, rng), haar_ket({2}, rng)});
    REQUIRE(negativity(locc_ensemble(entries), {0}) <= 1e-10);
  }
}

TEST_CASE("deficit state structure") {
  const DensityOperator rho = deficit_state();
  REQUIRE(rho.dims() == std::vector<int>{2, 2, 2});

  SECTION("the flag marginal is maximally mixed") {
    // Both branches have unit trace and equal weight.
    REQUIRE(max_abs(partial_trace(rho, {2}).matrix() -
                    0.5 * Matrix::Identity(2, 2)) <= 1e-15);
  }
  SECTION("conditioning on the flag recovers the two branches") {
    const Matrix& m = rho.matrix();
    Matrix branch0(4, 4), branch1(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        branch0(r, c) = 2.0 * m(2 * r, 2 * c);
        branch1(r, c) = 2.0 * m(2 * r + 1, 2 * c + 1);
      }
    REQUIRE(max_abs(branch0 - classical_on_b_branch().matrix()) <= 1e-15);
    REQUIRE(max_abs(branch1 - classical_on_a_branch().matrix()) <= 1e-15);
  }
}

TEST_CASE("two-entangled-state mixture is invariant under the coarse block "
          "measurement and stays entangled") {
  const DensityOperator rho = partially_classical_state();
  REQUIRE(rho.dims() == std::vector<int>{4, 2});
  REQUIRE(std::abs(rho.matrix().trace().real() - 1.0) <= 1e-15);

  const DensityOperator out = measure_channel(rho, coarse_block_measurement());
  REQUIRE(max_abs(out.matrix() - rho.matrix()) <= 1e-14);

  // Each member is maximally entangled inside its block; the partial
  // transpose picks up a -1/4 eigenvalue per block.
  REQUIRE(negativity(rho, {0}) == Approx(0.5).margin(1e-12));

  const Ensemble members = partially_classical_members();
  REQUIRE(members.entries().size() == 2);
  REQUIRE(max_abs(mix(members).matrix() - rho.matrix()) <= 1e-15);
}

TEST_CASE("discordant separable mixture has the expected marginals") {
  const DensityOperator rho = discordant_separable();
  // Average of two states with maximally mixed marginals.
  REQUIRE(max_abs(partial_trace(rho, {0}).matrix() - 0.5 * Matrix::Identity(2, 2)) <=
          1e-15);
  REQUIRE(negativity(rho, {0}) <= 1e-12);
}

TEST_CASE("coin flip state accepts custom preparations") {
  const DensityOperator custom = coin_flip_state(ket1(), ket_plus(), ket_minus());
  Matrix expected = Matrix::Zero(4, 4);
  expected += 0.25 * kron(ket0().projector(), ket0().projector());
  expected += 0.25 * kron(ket0().projector(), ket1().projector());
  expected += 0.25 * kron(ket1().projector(), ket0().projector());
  expected += 0.25 * kron(ket_plus().projector(), ket_minus().projector());
  REQUIRE(max_abs(custom.matrix() - expected) <= 1e-15);
}
