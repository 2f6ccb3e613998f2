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

#include "qpclass/dense_state.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <utility>

#include "qpclass/errors.hpp"

namespace qpclass {

namespace {

std::size_t bit_mask(std::size_t pos) { return std::size_t{1} << pos; }

void require_stage(const DenseQState& s, Stage expected, const char* op) {
  if (s.stage() != expected) {
    throw StageError(std::string(op) + ": expected stage " +
                     std::string(to_string(expected)) + ", got " +
                     std::string(to_string(s.stage())));
  }
}

// X on one qubit: swap every amplitude pair differing in `target`,
// restricted to indices where `control` (if any) is set.
void apply_x(std::vector<Amplitude>& amps, std::size_t target,
             std::size_t control_mask) {
  const std::size_t t = bit_mask(target);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & t) != 0) continue;
    if ((i & control_mask) != control_mask) continue;
    std::swap(amps[i], amps[i | t]);
  }
}

}  // namespace

DenseLayout DenseLayout::for_problem(std::size_t feature_count,
                                     std::uint32_t num_classes) {
  DenseLayout layout;
  layout.feature_count = feature_count;
  layout.class_bits =
      num_classes <= 1 ? 0 : std::bit_width(std::uint32_t{num_classes - 1});
  return layout;
}

std::size_t DenseLayout::index_of(const BinaryPattern& x,
                                  const BinaryPattern& d, ClassLabel c,
                                  std::uint8_t ancilla) const {
  std::size_t idx = ancilla & 1u;
  idx |= static_cast<std::size_t>(c.value) << class_offset();
  for (std::size_t k = 0; k < feature_count; ++k) {
    if (d.bit(k)) idx |= bit_mask(d_offset() + k);
    if (x.bit(k)) idx |= bit_mask(x_offset() + k);
  }
  return idx;
}

double DenseQState::norm_squared() const noexcept {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return total;
}

DenseQState dense_prepare(const TrainingSet& training,
                          const BinaryPattern& input) {
  training.check_input(input);
  const auto layout =
      DenseLayout::for_problem(training.feature_count(), training.num_classes());
  if (layout.num_qubits() > kMaxDenseQubits) {
    throw CapacityError("dense oracle: " + std::to_string(layout.num_qubits()) +
                        " qubits exceed the cap of " +
                        std::to_string(kMaxDenseQubits));
  }
  std::set<std::pair<BinaryPattern, std::uint32_t>> seen;
  for (const auto& m : training) {
    if (!seen.emplace(m.pattern, m.label.value).second) {
      throw ConstructionError(
          "dense oracle: repeated (pattern, label) member " +
          m.pattern.to_string() + " cannot be represented without an index "
          "register");
    }
  }

  DenseQState s;
  s.layout_ = layout;
  s.stage_ = Stage::Psi0;
  s.amps_.assign(layout.dimension(), Amplitude{});
  s.input_ = input;
  s.members_.assign(training.begin(), training.end());
  const double amp = 1.0 / std::sqrt(static_cast<double>(training.size()));
  for (const auto& m : training) {
    s.amps_[layout.index_of(input, m.pattern, m.label, 0)] = amp;
  }
  return s;
}

DenseQState dense_hadamard_ancilla(const DenseQState& state) {
  Stage next;
  if (state.stage() == Stage::Psi0) {
    next = Stage::Psi1;
  } else if (state.stage() == Stage::Psi3) {
    next = Stage::Psi4;
  } else {
    throw StageError("dense_hadamard_ancilla: expected stage Psi0 or Psi3");
  }
  DenseQState out = state;
  out.stage_ = next;
  const double r = 1.0 / std::numbers::sqrt2;
  for (std::size_t i = 0; i < out.amps_.size(); i += 2) {
    const Amplitude a0 = out.amps_[i];
    const Amplitude a1 = out.amps_[i + 1];
    out.amps_[i] = (a0 + a1) * r;
    out.amps_[i + 1] = (a0 - a1) * r;
  }
  return out;
}

DenseQState dense_encode_matches(const DenseQState& state) {
  require_stage(state, Stage::Psi1, "dense_encode_matches");
  DenseQState out = state;
  out.stage_ = Stage::Psi2;
  const auto& L = out.layout_;
  for (std::size_t k = 0; k < L.feature_count; ++k) {
    apply_x(out.amps_, L.d_offset() + k, bit_mask(L.x_offset() + k));  // cNOT
    apply_x(out.amps_, L.d_offset() + k, 0);                           // X
  }
  return out;
}

DenseQState dense_apply_phase_unitary(const DenseQState& state,
                                      double epsilon) {
  require_stage(state, Stage::Psi2, "dense_apply_phase_unitary");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("dense_apply_phase_unitary: epsilon must be positive");
  }
  DenseQState out = state;
  out.stage_ = Stage::Psi3;
  const auto& L = out.layout_;
  const double gamma =
      epsilon * std::numbers::pi / (2.0 * static_cast<double>(L.feature_count));
  const std::size_t d_mask = (bit_mask(L.feature_count) - 1) << L.d_offset();
  for (std::size_t i = 0; i < out.amps_.size(); ++i) {
    if (out.amps_[i] == Amplitude{}) continue;
    // Eigenvalue of sum_k (sz + 1)/2 on d_k: number of d-qubits in |0>.
    const auto ones = static_cast<std::size_t>(std::popcount(i & d_mask));
    const double zeros = static_cast<double>(L.feature_count - ones);
    // Eigenvalue of sz on the ancilla.
    const double sz = (i & 1u) ? -1.0 : 1.0;
    out.amps_[i] *= std::polar(1.0, -gamma * zeros * sz);
  }
  return out;
}

DenseQState dense_run(const TrainingSet& training, const BinaryPattern& input,
                      double epsilon) {
  auto s = dense_prepare(training, input);
  s = dense_hadamard_ancilla(s);
  s = dense_encode_matches(s);
  s = dense_apply_phase_unitary(s, epsilon);
  return dense_hadamard_ancilla(s);
}

Amplitude dense_amplitude_of(const DenseQState& state,
                             std::size_t pattern_index, std::uint8_t ancilla) {
  if (pattern_index >= state.members().size()) {
    throw IndexError("dense_amplitude_of: pattern index " +
                     std::to_string(pattern_index) + " out of range");
  }
  if (ancilla > 1) throw IndexError("dense_amplitude_of: ancilla must be 0/1");
  const auto& m = state.members()[pattern_index];
  BinaryPattern second = m.pattern;
  if (state.stage() != Stage::Psi0 && state.stage() != Stage::Psi1) {
    for (std::size_t k = 0; k < second.size(); ++k) {
      second.set(k, m.pattern.bit(k) == state.input().bit(k));
    }
  }
  return state.amplitudes()[state.layout().index_of(state.input(), second,
                                                    m.label, ancilla)];
}

Amplitude dense_amplitude_at(const DenseQState& state,
                             std::size_t basis_index) {
  if (basis_index >= state.amplitudes().size()) {
    throw IndexError("dense_amplitude_at: basis index " +
                     std::to_string(basis_index) + " >= 2^m = " +
                     std::to_string(state.amplitudes().size()));
  }
  return state.amplitudes()[basis_index];
}

}  // namespace qpclass
