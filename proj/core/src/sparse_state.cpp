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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "qpclass/errors.hpp"

namespace qpclass {

namespace {

void require_stage(const SparseQState& state, Stage expected,
                   std::string_view op) {
  if (state.stage() != expected) {
    throw StageError(std::string(op) + ": expected stage " +
                     std::string(to_string(expected)) + ", got " +
                     std::string(to_string(state.stage())));
  }
}

bool key_less(const SparseTerm& a, const SparseTerm& b) {
  if (a.pattern_index != b.pattern_index) {
    return a.pattern_index < b.pattern_index;
  }
  return a.ancilla < b.ancilla;
}

}  // namespace

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Psi0: return "Psi0";
    case Stage::Psi1: return "Psi1";
    case Stage::Psi2: return "Psi2";
    case Stage::Psi3: return "Psi3";
    case Stage::Psi4: return "Psi4";
    case Stage::PostSelected: return "PostSelected";
  }
  return "?";
}

double phase_slope(double epsilon, std::size_t feature_count) {
  return epsilon * std::numbers::pi / (2.0 * static_cast<double>(feature_count));
}

SparseQState::SparseQState(BinaryPattern input, std::size_t pattern_count,
                           std::vector<SparseTerm> terms, Stage stage)
    : input_(std::move(input)), pattern_count_(pattern_count),
      terms_(std::move(terms)), stage_(stage) {
  if (terms_.size() > 2 * pattern_count_) {
    throw ConstructionError("SparseQState: " + std::to_string(terms_.size()) +
                            " terms exceed 2N = " +
                            std::to_string(2 * pattern_count_));
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (t.pattern_index >= pattern_count_) {
      throw ConstructionError("SparseQState: pattern index out of range");
    }
    if (t.ancilla > 1) {
      throw ConstructionError("SparseQState: ancilla must be 0 or 1");
    }
    if (t.d_register.size() != input_.size()) {
      throw DimensionError("SparseQState: d-register length mismatch");
    }
    if (!std::isfinite(t.amplitude.real()) ||
        !std::isfinite(t.amplitude.imag())) {
      throw ConstructionError("SparseQState: non-finite amplitude");
    }
    if (i > 0 && !key_less(terms_[i - 1], t)) {
      throw ConstructionError(
          "SparseQState: terms must be unique and sorted by "
          "(pattern_index, ancilla)");
    }
  }
  if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
    throw ConstructionError("SparseQState: norm^2 = " +
                            std::to_string(norm_squared()) + ", expected 1");
  }
}

double SparseQState::norm_squared() const noexcept {
  double total = 0.0;
  for (const auto& t : terms_) total += std::norm(t.amplitude);
  return total;
}

double SparseQState::ancilla_zero_probability() const noexcept {
  double total = 0.0;
  for (const auto& t : terms_) {
    if (t.ancilla == 0) total += std::norm(t.amplitude);
  }
  return total;
}

const SparseTerm* SparseQState::find(std::size_t pattern_index,
                                     std::uint8_t ancilla) const noexcept {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), std::pair{pattern_index, ancilla},
      [](const SparseTerm& t, const std::pair<std::size_t, std::uint8_t>& k) {
        return std::pair{t.pattern_index, t.ancilla} < k;
      });
  if (it != terms_.end() && it->pattern_index == pattern_index &&
      it->ancilla == ancilla) {
    return &*it;
  }
  return nullptr;
}

SparseQState prepare_psi0(const TrainingSet& training,
                          const BinaryPattern& input) {
  training.check_input(input);
  const double amp = 1.0 / std::sqrt(static_cast<double>(training.size()));
  std::vector<SparseTerm> terms;
  terms.reserve(training.size());
  for (std::size_t p = 0; p < training.size(); ++p) {
    terms.push_back(SparseTerm{p, training[p].pattern, training[p].label, 0,
                               Amplitude(amp, 0.0)});
  }
  return SparseQState(input, training.size(), std::move(terms), Stage::Psi0);
}

SparseQState hadamard_ancilla(const SparseQState& state) {
  Stage next;
  if (state.stage() == Stage::Psi0) {
    next = Stage::Psi1;
  } else if (state.stage() == Stage::Psi3) {
    next = Stage::Psi4;
  } else {
    throw StageError("hadamard_ancilla: expected stage Psi0 or Psi3, got " +
                     std::string(to_string(state.stage())));
  }

  const double r = 1.0 / std::numbers::sqrt2;
  const auto in = state.terms();
  std::vector<SparseTerm> out;
  out.reserve(2 * state.pattern_count());
  for (std::size_t i = 0; i < in.size();) {
    // Gather the (up to two) ancilla branches of one pattern index.
    Amplitude a0{}, a1{};
    const SparseTerm& head = in[i];
    std::size_t j = i;
    for (; j < in.size() && in[j].pattern_index == head.pattern_index; ++j) {
      (in[j].ancilla == 0 ? a0 : a1) = in[j].amplitude;
    }
    out.push_back(SparseTerm{head.pattern_index, head.d_register, head.label,
                             0, (a0 + a1) * r});
    out.push_back(SparseTerm{head.pattern_index, head.d_register, head.label,
                             1, (a0 - a1) * r});
    i = j;
  }
  return SparseQState(state.input(), state.pattern_count(), std::move(out),
                      next);
}

SparseQState encode_matches(const SparseQState& state) {
  require_stage(state, Stage::Psi1, "encode_matches");
  std::vector<SparseTerm> terms(state.terms().begin(), state.terms().end());
  const auto& x = state.input();
  for (std::size_t k = 0; k < x.size(); ++k) {
    // cNOT(x_k -> d_k): acts only where the control qubit is 1.
    if (x.bit(k)) {
      for (auto& t : terms) t.d_register.flip(k);
    }
    // X on d_k.
    for (auto& t : terms) t.d_register.flip(k);
  }
  return SparseQState(x, state.pattern_count(), std::move(terms), Stage::Psi2);
}

SparseQState apply_phase_unitary(const SparseQState& state, double epsilon) {
  require_stage(state, Stage::Psi2, "apply_phase_unitary");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("apply_phase_unitary: epsilon must be positive, got " +
                         std::to_string(epsilon));
  }
  const std::size_t n = state.input().size();
  const double gamma = phase_slope(epsilon, n);

  // U factorizes into one diagonal gate per d-qubit; their eigenvalue
  // exponents add, so accumulate the exponent per term and exponentiate once.
  std::vector<SparseTerm> terms(state.terms().begin(), state.terms().end());
  std::vector<std::size_t> zeros(terms.size(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t t = 0; t < terms.size(); ++t) {
      zeros[t] += terms[t].d_register.bit(k) ? 0 : 1;
    }
  }
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const double sign = terms[t].ancilla == 0 ? 1.0 : -1.0;
    const double angle = -sign * gamma * static_cast<double>(zeros[t]);
    terms[t].amplitude *= std::polar(1.0, angle);
  }
  return SparseQState(state.input(), state.pattern_count(), std::move(terms),
                      Stage::Psi3);
}

Postselection postselect_ancilla_zero(const SparseQState& state) {
  require_stage(state, Stage::Psi4, "postselect_ancilla_zero");
  const double p0 = state.ancilla_zero_probability();
  if (p0 < kPostselectionFloor) {
    throw PostselectionImpossible(
        "postselect_ancilla_zero: P(0_a) = " + std::to_string(p0) +
        "; every training pattern sits at a cosine zero");
  }
  const double scale = 1.0 / std::sqrt(p0);
  std::vector<SparseTerm> kept;
  kept.reserve(state.pattern_count());
  for (const auto& t : state.terms()) {
    if (t.ancilla != 0) continue;
    SparseTerm copy = t;
    copy.amplitude *= scale;
    kept.push_back(std::move(copy));
  }
  return Postselection{SparseQState(state.input(), state.pattern_count(),
                                    std::move(kept), Stage::PostSelected),
                       p0};
}

SparseQState run_to_psi4(const TrainingSet& training,
                         const BinaryPattern& input, double epsilon) {
  auto psi = prepare_psi0(training, input);
  psi = hadamard_ancilla(psi);
  psi = encode_matches(psi);
  psi = apply_phase_unitary(psi, epsilon);
  return hadamard_ancilla(psi);
}

namespace detail {

SparseQState with_stage(const SparseQState& state, Stage stage) {
  return SparseQState(state.input(), state.pattern_count(),
                      std::vector<SparseTerm>(state.terms().begin(),
                                              state.terms().end()),
                      stage);
}

}  // namespace detail

}  // namespace qpclass
