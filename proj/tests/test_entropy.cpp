// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch.hpp>

#include "qcorr/entropy.hpp"
#include "qcorr/named_states.hpp"
#include "test_support.hpp"

using namespace qcorr;
using test_support::haar_ket;
using test_support::random_density;
using test_support::random_joint_table;
using test_support::random_unitary;

TEST_CASE("shannon entropy on reference distributions") {
  REQUIRE(shannon_entropy(ProbabilityDistribution({1.0, 0.0})) == 0.0);
  REQUIRE(shannon_entropy(ProbabilityDistribution({0.5, 0.5})) == Approx(1.0));
  // Direct evaluation: four equal outcomes carry two bits.
  REQUIRE(shannon_entropy(ProbabilityDistribution({0.25, 0.25, 0.25, 0.25})) ==
          Approx(2.0));
}

TEST_CASE("shannon entropy is permutation invariant") {
  const ProbabilityDistribution p({0.1, 0.2, 0.3, 0.4});
  const ProbabilityDistribution q({0.4, 0.1, 0.3, 0.2});
  REQUIRE(shannon_entropy(p) == Approx(shannon_entropy(q)).margin(1e-15));
}

TEST_CASE("probability distribution validation") {
  REQUIRE_THROWS_AS(ProbabilityDistribution({0.5, 0.4}), std::invalid_argument);
  REQUIRE_THROWS_AS(ProbabilityDistribution({1.2, -0.2}), std::invalid_argument);
  REQUIRE_NOTHROW(ProbabilityDistribution({1.0 + 1e-10, -1e-10}));
}

TEST_CASE("von Neumann entropy of pure, mixed and classical states") {
  SplitMix64 rng(31);
  REQUIRE(von_neumann_entropy(pure_state(haar_ket({2, 2}, rng))) ==
          Approx(0.0).margin(1e-9));
  REQUIRE(von_neumann_entropy(maximally_mixed({2})) == Approx(1.0));
  // Spectrum {1/2, 1/2, 0, 0}.
  REQUIRE(von_neumann_entropy(maximally_classical()) == Approx(1.0));
}

TEST_CASE("von Neumann entropy is invariant under unitary conjugation") {
  SplitMix64 rng(37);
  for (int i = 0; i < 30; ++i) {
    const DensityOperator rho = random_density({2, 2}, 3, rng);
    const Matrix u = random_unitary(4, rng);
    const DensityOperator rotated({2, 2}, u * rho.matrix() * u.adjoint());
    REQUIRE(std::abs(von_neumann_entropy(rotated) - von_neumann_entropy(rho)) <=
            1e-8);
  }
}

TEST_CASE("subtractive conditional entropy") {
  SplitMix64 rng(41);
  SECTION("product state: S(B|A) = S(B)") {
    const DensityOperator a = random_density({2}, 2, rng);
    const DensityOperator b = random_density({2}, 2, rng);
    REQUIRE(conditional_entropy_subtractive(tensor(a, b), 0) ==
            Approx(von_neumann_entropy(b)).margin(1e-12));
  }
  SECTION("Bell state: S(B|A) = -1") {
    REQUIRE(conditional_entropy_subtractive(bell(), 0) ==
            Approx(-1.0).margin(1e-12));
  }
  SECTION("classical correlated bits: S(AB) - S(A) = 1 - 1 = 0") {
    REQUIRE(conditional_entropy_subtractive(maximally_classical(), 0) ==
            Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("mutual information reference values") {
  SplitMix64 rng(43);
  const DensityOperator product =
      tensor(random_density({2}, 2, rng), random_density({2}, 2, rng));
  REQUIRE(mutual_information(product, 0) == Approx(0.0).margin(1e-12));
  // 1 + 1 - 1 and 1 + 1 - 0.
  REQUIRE(mutual_information(maximally_classical(), 0) == Approx(1.0).margin(1e-12));
  REQUIRE(mutual_information(bell(), 0) == Approx(2.0).margin(1e-12));
}

TEST_CASE("mutual information is nonnegative on random states") {
  SplitMix64 rng(47);
  for (int i = 0; i < 50; ++i) {
    const DensityOperator rho = random_density({2, 2}, 1 + i % 4, rng);
    REQUIRE(mutual_information(rho, 0) >= -1e-10);
  }
}

TEST_CASE("classical mutual information of reference tables") {
  Eigen::MatrixXd correlated(2, 2);
  correlated << 0.5, 0.0, 0.0, 0.5;
  REQUIRE(classical_mutual_information(correlated) == Approx(1.0));

  Eigen::MatrixXd independent(2, 2);
  independent << 0.25, 0.25, 0.25, 0.25;
  REQUIRE(classical_mutual_information(independent) == Approx(0.0).margin(1e-15));

  // Sifted same-basis rounds: preparation and measurement agree exactly, so
  // the joint table is diagonal with equal weights.
  Eigen::MatrixXd sifted(2, 2);
  sifted << 0.5, 0.0, 0.0, 0.5;
  REQUIRE(classical_mutual_information(sifted) == Approx(1.0));
}

TEST_CASE("classical mutual information validates the table") {
  Eigen::MatrixXd bad(2, 2);
  bad << 0.5, 0.2, 0.1, 0.1;
  REQUIRE_THROWS_AS(classical_mutual_information(bad), std::invalid_argument);
}

TEST_CASE("both classical conditional entropy routes agree exactly") {
  // H(ab) - H(a) versus sum_a p_a H(b|a) on random joint tables.
  SplitMix64 rng(53);
  for (int i = 0; i < 100; ++i) {
    const Eigen::MatrixXd joint = random_joint_table(3, 4, rng);
    double weighted = 0.0;
    for (int a = 0; a < joint.rows(); ++a) {
      const double pa = joint.row(a).sum();
      if (pa <= 0.0) continue;
      std::vector<double> cond(joint.cols());
      for (int b = 0; b < joint.cols(); ++b) cond[b] = joint(a, b) / pa;
      weighted += pa * shannon_entropy(ProbabilityDistribution(cond));
    }
    REQUIRE(classical_conditional_entropy(joint) == Approx(weighted).margin(1e-12));
  }
}

TEST_CASE("subtractive conditional entropy matches the classical table on "
          "product-diagonal states") {
  SplitMix64 rng(59);
  for (int i = 0; i < 20; ++i) {
    const auto p = test_support::random_probs(4, rng);
    Eigen::MatrixXd joint(2, 2);
    joint << p[0], p[1], p[2], p[3];
    Matrix m = Matrix::Zero(4, 4);
    for (int idx = 0; idx < 4; ++idx) m(idx, idx) = p[idx];
    const DensityOperator rho({2, 2}, m);
    REQUIRE(conditional_entropy_subtractive(rho, 0) ==
            Approx(classical_conditional_entropy(joint)).margin(1e-12));
  }
}
