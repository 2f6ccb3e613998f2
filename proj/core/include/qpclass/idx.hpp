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

// IDX container reader/writer (the MNIST distribution format).
//
//   images: u32be 2051, u32be count, u32be rows, u32be cols, count*rows*cols bytes
//   labels: u32be 2049, u32be count, count bytes (each <= 9)
//
// Parsing is strict: short payloads and surplus trailing bytes are both
// LengthErrors.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace qpclass {

inline constexpr std::uint32_t kIdxImageMagic = 2051;
inline constexpr std::uint32_t kIdxLabelMagic = 2049;

struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

struct IdxDataset {
  std::vector<GrayImage> images;
  std::vector<std::uint8_t> labels;

  /// Throws ConstructionError on length mismatch or a label above 9.
  void validate() const;
  std::size_t size() const noexcept { return images.size(); }
};

std::vector<GrayImage> parse_idx_images(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes);

/// Inverse of parse_idx_images. Uses the images' own dimensions, or
/// rows x cols when the list is empty.
std::vector<std::uint8_t> serialize_idx_images(std::span<const GrayImage> images,
                                               std::size_t rows = 28,
                                               std::size_t cols = 28);
std::vector<std::uint8_t> serialize_idx_labels(
    std::span<const std::uint8_t> labels);

/// True if the buffer starts with the gzip signature 1f 8b.
bool is_gzip(std::span<const std::uint8_t> bytes) noexcept;
std::vector<std::uint8_t> gunzip(std::span<const std::uint8_t> bytes);

/// Whole file, gunzipped when the content is gzip. Throws DataError with the
/// path on I/O failure.
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);

/// Parses an image/label file pair; errors carry the offending path.
IdxDataset load_idx_dataset(const std::filesystem::path& images,
                            const std::filesystem::path& labels);

}  // namespace qpclass
