// Copyright 2026 The qpclass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpclass/sparse_state.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qpclass/errors.hpp"
#include "support/generators.hpp"

namespace qpclass {
namespace {

using testing::make_training;
using testing::random_pattern;
using testing::random_training;
using testing::Rng;

constexpr double kTight = 1e-12;

TEST(SparseState, Psi0IsUniform) {
  const auto t = make_training({{"01", 0}, {"11", 1}, {"10", 1}}, 2);
  const auto psi0 = prepare_psi0(t, BinaryPattern::from_string("00"));
  ASSERT_EQ(psi0.terms().size(), 3u);
  for (const auto& term : psi0.terms()) {
    EXPECT_EQ(term.ancilla, 0);
    EXPECT_NEAR(std::abs(term.amplitude - 1.0 / std::sqrt(3.0)), 0.0, kTight);
    EXPECT_EQ(term.d_register, t[term.pattern_index].pattern);
  }
}

TEST(SparseState, StageOrderEnforced) {
  const auto t = make_training({{"01", 0}}, 1);
  const auto psi0 = prepare_psi0(t, BinaryPattern::from_string("00"));
  EXPECT_THROW(encode_matches(psi0), StageError);
  EXPECT_THROW(apply_phase_unitary(psi0, 1.0), StageError);
  EXPECT_THROW(postselect_ancilla_zero(psi0), StageError);
  const auto psi1 = hadamard_ancilla(psi0);
  EXPECT_THROW(hadamard_ancilla(psi1), StageError);
  const auto psi2 = encode_matches(psi1);
  EXPECT_THROW(apply_phase_unitary(psi2, 0.0), ParameterError);
  EXPECT_THROW(apply_phase_unitary(psi2, -1.0), ParameterError);
}

TEST(SparseState, EncodeMatchesMarksAgreement) {
  const auto t = make_training({{"0110", 0}}, 1);
  const auto psi2 = encode_matches(
      hadamard_ancilla(prepare_psi0(t, BinaryPattern::from_string("0101"))));
  for (const auto& term : psi2.terms()) {
    EXPECT_EQ(term.d_register.to_string(), "1100");
  }
}

// Frozen from an independent closed-form evaluation.
TEST(SparseState, TwoPatternDeskInstance) {
  const auto t = make_training({{"01", 0}, {"11", 1}}, 2);
  const auto psi4 = run_to_psi4(t, BinaryPattern::from_string("00"), 1.0);
  EXPECT_NEAR(psi4.ancilla_zero_probability(), 0.25, kTight);
  const auto* a0 = psi4.find(0, 0);
  const auto* a1 = psi4.find(0, 1);
  ASSERT_NE(a0, nullptr);
  ASSERT_NE(a1, nullptr);
  EXPECT_NEAR(std::abs(a0->amplitude), 0.5, kTight);
  EXPECT_NEAR(a0->amplitude.real(), 0.5, kTight);
  EXPECT_NEAR(a1->amplitude.imag(), -0.5, kTight);
  EXPECT_NEAR(std::abs(psi4.find(1, 0)->amplitude), 0.0, kTight);
  EXPECT_NEAR(psi4.find(1, 1)->amplitude.imag(), -0.7071067811865475, kTight);

  const auto post = postselect_ancilla_zero(psi4);
  EXPECT_NEAR(post.probability, 0.25, kTight);
  EXPECT_NEAR(post.state.norm_squared(), 1.0, kTight);
  EXPECT_EQ(post.state.stage(), Stage::PostSelected);
}

// e^{-i phi}|0> + e^{+i phi}|1> under H gives cos(phi)|0> - i sin(phi)|1>.
TEST(SparseState, HadamardOnPhasedPair) {
  const double phi = 0.3;
  const BinaryPattern d = BinaryPattern::from_string("1");
  std::vector<SparseTerm> terms{
      {0, d, ClassLabel{0}, 0, std::polar(1.0 / std::sqrt(2.0), -phi)},
      {0, d, ClassLabel{0}, 1, std::polar(1.0 / std::sqrt(2.0), phi)}};
  const SparseQState psi3(d, 1, std::move(terms), Stage::Psi3);
  const auto psi4 = hadamard_ancilla(psi3);
  EXPECT_NEAR(psi4.find(0, 0)->amplitude.real(), 0.955336489125606, kTight);
  EXPECT_NEAR(psi4.find(0, 0)->amplitude.imag(), 0.0, kTight);
  EXPECT_NEAR(psi4.find(0, 1)->amplitude.imag(), -0.29552020666134, kTight);
}

TEST(SparseState, HadamardIsInvolution) {
  Rng rng(3);
  const auto t = random_training(rng, 6, 5, 3);
  const auto psi0 = prepare_psi0(t, random_pattern(rng, 5));
  const auto twice =
      hadamard_ancilla(detail::with_stage(hadamard_ancilla(psi0), Stage::Psi0));
  ASSERT_EQ(twice.terms().size(), 2 * t.size());
  for (const auto& term : twice.terms()) {
    const double expected = term.ancilla == 0 ? 1.0 / std::sqrt(6.0) : 0.0;
    EXPECT_NEAR(std::abs(term.amplitude), expected, kTight);
  }
}

TEST(SparseState, PostselectionImpossible) {
  const auto t = make_training({{"11", 0}}, 1);
  const auto psi4 = run_to_psi4(t, BinaryPattern::from_string("00"), 1.0);
  EXPECT_THROW(postselect_ancilla_zero(psi4), PostselectionImpossible);
}

TEST(SparseState, DuplicatesStayDistinct) {
  const auto t = make_training({{"10", 0}, {"10", 0}, {"01", 1}}, 2);
  const auto psi4 = run_to_psi4(t, BinaryPattern::from_string("10"), 1.0);
  EXPECT_EQ(psi4.terms().size(), 6u);
  EXPECT_NEAR(psi4.norm_squared(), 1.0, kTight);
}

TEST(SparseState, InvariantValidation) {
  const BinaryPattern x = BinaryPattern::from_string("01");
  EXPECT_THROW(SparseQState(x, 1, {{0, x, ClassLabel{0}, 0, 0.5}}, Stage::Psi0),
               ConstructionError);
  EXPECT_THROW(SparseQState(x, 1, {{1, x, ClassLabel{0}, 0, 1.0}}, Stage::Psi0),
               ConstructionError);
  EXPECT_THROW(SparseQState(x, 1,
                            {{0, BinaryPattern(3), ClassLabel{0}, 0, 1.0}},
                            Stage::Psi0),
               DimensionError);
  EXPECT_THROW(SparseQState(x, 2,
                            {{0, x, ClassLabel{0}, 0, std::sqrt(0.5)},
                             {0, x, ClassLabel{0}, 0, std::sqrt(0.5)}},
                            Stage::Psi0),
               ConstructionError);
}

// Property: every stage is normalized, psi4 has 2N terms, and each member's
// amplitudes match cos / -i sin of gamma * d_H over sqrt(N).
TEST(SparseStateProperty, ClosedFormAmplitudes) {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = testing::uniform_int(rng, 1, 90);
    const auto N = testing::uniform_int(rng, 1, 25);
    const auto d = static_cast<std::uint32_t>(testing::uniform_int(rng, 1, 5));
    const double eps = 0.1 + 3.0 * std::uniform_real_distribution<>(0, 1)(rng);
    const auto t = random_training(rng, N, n, d);
    const auto x = random_pattern(rng, n);

    auto s = prepare_psi0(t, x);
    s = hadamard_ancilla(s);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    s = encode_matches(s);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    s = apply_phase_unitary(s, eps);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    s = hadamard_ancilla(s);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    ASSERT_LE(s.terms().size(), 2 * N);

    const double gamma = phase_slope(eps, n);
    double p0 = 0.0;
    for (std::size_t p = 0; p < N; ++p) {
      const double dh = static_cast<double>(hamming_distance(x, t[p].pattern));
      const double c = std::cos(gamma * dh) / std::sqrt(double(N));
      const double sn = std::sin(gamma * dh) / std::sqrt(double(N));
      p0 += c * c;
      const auto* a0 = s.find(p, 0);
      const auto* a1 = s.find(p, 1);
      ASSERT_TRUE(a0 && a1);
      EXPECT_NEAR(std::abs(a0->amplitude - Amplitude(c, 0)), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(a1->amplitude - Amplitude(0, -sn)), 0.0, 1e-12);
      EXPECT_EQ(a0->label, t[p].label);
      EXPECT_EQ(match_count(x, t[p].pattern), a0->d_register.count_ones());
    }
    EXPECT_NEAR(s.ancilla_zero_probability(), p0, 1e-12);
  }
}

TEST(SparseState, PhaseSlope) {
  EXPECT_DOUBLE_EQ(phase_slope(1.0, 2), std::numbers::pi / 4);
  EXPECT_DOUBLE_EQ(phase_slope(2.0, 784), std::numbers::pi / 784);
}

}  // namespace
}  // namespace qpclass
