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

// Brute-force state-vector oracle for the classifier circuit.
//
// Every register is materialized: 2^m amplitudes with
//   m = n (input) + n (d-register) + ceil(log2 d) (class) + 1 (ancilla).
// Gates are applied matrix-free on basis indices. The phase unitary is
// applied from its eigenvalues: each basis state picks up
// exp(-i gamma * zeros(d) * (+1 | -1 for ancilla 0 | 1)).
//
// Only for desk-scale validation of the sparse simulator (m <= 22).

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qpclass/bit_pattern.hpp"
#include "qpclass/sparse_state.hpp"

namespace qpclass {

inline constexpr std::size_t kMaxDenseQubits = 22;

/// Bit positions of the registers inside a basis index (LSB first):
///   bit 0                               ancilla
///   bits [1, 1 + class_bits)            class label, binary
///   bits [d_offset, d_offset + n)       d-register, qubit k at d_offset + k
///   bits [x_offset, x_offset + n)       input register
struct DenseLayout {
  std::size_t feature_count = 0;
  std::size_t class_bits = 0;

  static DenseLayout for_problem(std::size_t feature_count,
                                 std::uint32_t num_classes);

  std::size_t class_offset() const noexcept { return 1; }
  std::size_t d_offset() const noexcept { return 1 + class_bits; }
  std::size_t x_offset() const noexcept { return 1 + class_bits + feature_count; }
  std::size_t num_qubits() const noexcept {
    return 1 + class_bits + 2 * feature_count;
  }
  std::size_t dimension() const noexcept { return std::size_t{1} << num_qubits(); }

  std::size_t index_of(const BinaryPattern& x, const BinaryPattern& d,
                       ClassLabel c, std::uint8_t ancilla) const;
};

class DenseQState {
 public:
  const DenseLayout& layout() const noexcept { return layout_; }
  Stage stage() const noexcept { return stage_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  const BinaryPattern& input() const noexcept { return input_; }
  std::span<const LabeledPattern> members() const noexcept { return members_; }

  double norm_squared() const noexcept;

 private:
  friend DenseQState dense_prepare(const TrainingSet&, const BinaryPattern&);
  friend DenseQState dense_hadamard_ancilla(const DenseQState&);
  friend DenseQState dense_encode_matches(const DenseQState&);
  friend DenseQState dense_apply_phase_unitary(const DenseQState&, double);

  DenseLayout layout_;
  Stage stage_ = Stage::Psi0;
  std::vector<Amplitude> amps_;
  BinaryPattern input_{1};
  std::vector<LabeledPattern> members_;
};

/// Psi0. Throws CapacityError if m > kMaxDenseQubits, and ConstructionError
/// for repeated (pattern, label) members, which this layout (no index
/// register) cannot hold as separate terms.
DenseQState dense_prepare(const TrainingSet& training,
                          const BinaryPattern& input);
DenseQState dense_hadamard_ancilla(const DenseQState& state);
DenseQState dense_encode_matches(const DenseQState& state);
DenseQState dense_apply_phase_unitary(const DenseQState& state,
                                      double epsilon);

/// Psi4 via the four steps above.
DenseQState dense_run(const TrainingSet& training, const BinaryPattern& input,
                      double epsilon);

/// Amplitude of the basis state that member `pattern_index` occupies at the
/// state's stage (v^p in the second register before encoding, d^p after).
Amplitude dense_amplitude_of(const DenseQState& state,
                             std::size_t pattern_index, std::uint8_t ancilla);

/// Raw amplitude lookup; IndexError if basis_index >= 2^m.
Amplitude dense_amplitude_at(const DenseQState& state,
                             std::size_t basis_index);

}  // namespace qpclass
