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

// Sparse simulation of the classifier circuit.
//
// The register content |x; v^p, c^p; a> of the circuit is never a full
// 2^m vector: only the training members are populated, and each carries at
// most two ancilla branches. A state is therefore stored as at most 2N
// terms keyed by (pattern index, ancilla). The input register x is shared
// by every term and is stored once.
//
// The gate sequence, in the only order the stage machine accepts:
//
//   prepare_psi0          Psi0   1/sqrt(N) sum_p |x; v^p, c^p; 0>
//   hadamard_ancilla      Psi1   ancilla -> (|0> + |1>)/sqrt(2)
//   encode_matches        Psi2   d_k = NOT(x_k XOR v_k)  (cNOT then X)
//   apply_phase_unitary   Psi3   exp(-i gamma H), H = sum_k (sz+1)/2 on d_k
//                                 times sz on the ancilla
//   hadamard_ancilla      Psi4
//   postselect_ancilla_zero       PostSelected
//
// (sz+1)/2 has eigenvalue 1 on |0>, so H counts the zeros of the d-register,
// i.e. the ordinary Hamming distance d_H(x, v^p). After the last Hadamard
// the ancilla-0 amplitude of member p is cos(gamma d_H) / sqrt(N), largest
// for identical patterns. gamma = epsilon * pi / (2n).

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qpclass/bit_pattern.hpp"

namespace qpclass {

using Amplitude = std::complex<double>;

enum class Stage { Psi0, Psi1, Psi2, Psi3, Psi4, PostSelected };

std::string_view to_string(Stage stage);

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kPostselectionFloor = 1e-15;

/// Phase slope gamma = epsilon * pi / (2n).
double phase_slope(double epsilon, std::size_t feature_count);

struct SparseTerm {
  std::size_t pattern_index = 0;
  BinaryPattern d_register;
  ClassLabel label;
  std::uint8_t ancilla = 0;
  Amplitude amplitude;
};

/// Immutable sparse superposition. Terms are kept sorted by
/// (pattern_index, ancilla).
class SparseQState {
 public:
  /// Validates the invariants: finite amplitudes, unique sorted keys,
  /// d-register lengths equal to the input length, pattern indices below
  /// pattern_count, at most 2 * pattern_count terms, unit norm.
  SparseQState(BinaryPattern input, std::size_t pattern_count,
               std::vector<SparseTerm> terms, Stage stage);

  const BinaryPattern& input() const noexcept { return input_; }
  std::size_t pattern_count() const noexcept { return pattern_count_; }
  std::span<const SparseTerm> terms() const noexcept { return terms_; }
  Stage stage() const noexcept { return stage_; }

  double norm_squared() const noexcept;
  /// Sum of |amplitude|^2 over ancilla-0 terms.
  double ancilla_zero_probability() const noexcept;

  /// Returns nullptr if (pattern_index, ancilla) is not populated.
  const SparseTerm* find(std::size_t pattern_index,
                         std::uint8_t ancilla) const noexcept;

 private:
  BinaryPattern input_;
  std::size_t pattern_count_;
  std::vector<SparseTerm> terms_;
  Stage stage_;
};

SparseQState prepare_psi0(const TrainingSet& training,
                          const BinaryPattern& input);

/// Psi0 -> Psi1 or Psi3 -> Psi4.
SparseQState hadamard_ancilla(const SparseQState& state);

/// Psi1 -> Psi2.
SparseQState encode_matches(const SparseQState& state);

/// Psi2 -> Psi3. epsilon must be positive.
SparseQState apply_phase_unitary(const SparseQState& state, double epsilon);

struct Postselection {
  SparseQState state;
  double probability;
};

/// Psi4 -> PostSelected. Throws PostselectionImpossible when
/// P(0_a) < kPostselectionFloor.
Postselection postselect_ancilla_zero(const SparseQState& state);

/// prepare_psi0 through the second Hadamard.
SparseQState run_to_psi4(const TrainingSet& training,
                         const BinaryPattern& input, double epsilon);

namespace detail {

/// Relabels the stage without touching the amplitudes. Test-only escape
/// hatch for checking gate identities (H * H = 1) outside the normal order.
SparseQState with_stage(const SparseQState& state, Stage stage);

}  // namespace detail

}  // namespace qpclass
