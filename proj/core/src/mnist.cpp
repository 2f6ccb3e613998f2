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

#include "qpclass/mnist.hpp"

#include <charconv>
#include <numeric>
#include <random>

#include "qpclass/errors.hpp"

namespace qpclass {

namespace {

// First `count` entries of a seeded Fisher-Yates shuffle of [0, size).
std::vector<std::size_t> pick(std::size_t size, std::size_t count,
                              const SubsetSelection& sel, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (sel.first_n) {
    idx.resize(count);
    return idx;
  }
  for (std::size_t i = 0; i < count; ++i) {
    // Unbiased index in [i, size).
    const std::uint64_t span = size - i;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do {
      r = rng();
    } while (r >= limit);
    std::swap(idx[i], idx[i + r % span]);
  }
  idx.resize(count);
  return idx;
}

}  // namespace

BinaryPattern binarize(const GrayImage& image, std::uint8_t threshold) {
  if (image.pixels.size() != image.width * image.height) {
    throw ConstructionError("GrayImage: pixel count does not match " +
                            std::to_string(image.width) + "x" +
                            std::to_string(image.height));
  }
  BinaryPattern p(image.pixels.size());
  for (std::size_t k = 0; k < image.pixels.size(); ++k) {
    if (image.pixels[k] >= threshold) p.set(k, true);
  }
  return p;
}

SubsetSelection SubsetSelection::parse(std::string_view text) {
  if (text == "first") return first();
  constexpr std::string_view prefix = "seed:";
  if (text.starts_with(prefix)) {
    const auto digits = text.substr(prefix.size());
    std::uint64_t seed = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() &&
        !digits.empty()) {
      return seeded(seed);
    }
  }
  throw ParameterError("subset must be 'first' or 'seed:<u64>', got '" +
                       std::string(text) + "'");
}

std::string SubsetSelection::to_string() const {
  return first_n ? "first" : "seed:" + std::to_string(seed);
}

ExperimentData make_subsets(const IdxDataset& train, const IdxDataset& test,
                            std::size_t n_train, std::size_t n_test,
                            const SubsetSelection& selection,
                            std::uint8_t threshold) {
  train.validate();
  test.validate();
  if (n_train == 0 || n_train > train.size()) {
    throw ParameterError("n_train = " + std::to_string(n_train) +
                         " must lie in [1, " + std::to_string(train.size()) +
                         "]");
  }
  if (n_test > test.size()) {
    throw ParameterError("n_test = " + std::to_string(n_test) + " exceeds " +
                         std::to_string(test.size()) + " available");
  }

  std::mt19937_64 rng(selection.seed);
  const auto train_idx = pick(train.size(), n_train, selection, rng);
  const auto test_idx = pick(test.size(), n_test, selection, rng);

  std::vector<LabeledPattern> members;
  members.reserve(n_train);
  for (auto i : train_idx) {
    members.push_back({binarize(train.images[i], threshold),
                       ClassLabel{train.labels[i]}});
  }
  std::vector<TestExample> tests;
  tests.reserve(n_test);
  for (auto i : test_idx) {
    tests.push_back({binarize(test.images[i], threshold),
                     ClassLabel{test.labels[i]}});
  }
  ExperimentData data{TrainingSet(std::move(members), kDigitClasses),
                      std::move(tests)};
  for (const auto& t : data.tests) data.training.check_input(t.pattern);
  return data;
}

}  // namespace qpclass
