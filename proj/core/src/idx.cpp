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

#include "qpclass/idx.hpp"

#include <zlib.h>

#include <cstdint>
#include <fstream>
#include <iterator>
#include <string>

#include "qpclass/errors.hpp"

namespace qpclass {

namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> b, std::size_t at) {
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) |
         (std::uint32_t{b[at + 2]} << 8) | std::uint32_t{b[at + 3]};
}

void write_be32(std::vector<std::uint8_t>& out, std::uint64_t v) {
  if (v > 0xffffffffu) throw ParameterError("IDX field exceeds 32 bits");
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xffu));
  }
}

void check_magic(std::span<const std::uint8_t> bytes, std::uint32_t expected,
                 const char* what) {
  if (bytes.size() < 4) {
    throw LengthError(std::string("IDX ") + what + ": expected at least 4 "
                      "header bytes, got " + std::to_string(bytes.size()));
  }
  const auto magic = read_be32(bytes, 0);
  if (magic != expected) {
    throw FormatError(std::string("IDX ") + what + ": bad magic " +
                      std::to_string(magic) + ", expected " +
                      std::to_string(expected));
  }
}

void check_length(std::uint64_t expected, std::uint64_t actual,
                  const char* what) {
  if (expected != actual) {
    throw LengthError(std::string("IDX ") + what + ": expected " +
                      std::to_string(expected) + " bytes, got " +
                      std::to_string(actual));
  }
}

}  // namespace

void IdxDataset::validate() const {
  if (images.size() != labels.size()) {
    throw ConstructionError("IdxDataset: " + std::to_string(images.size()) +
                            " images but " + std::to_string(labels.size()) +
                            " labels");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] > 9) {
      throw ConstructionError("IdxDataset: label " + std::to_string(i) +
                              " is " + std::to_string(labels[i]));
    }
  }
}

std::vector<GrayImage> parse_idx_images(std::span<const std::uint8_t> bytes) {
  check_magic(bytes, kIdxImageMagic, "images");
  if (bytes.size() < 16) {
    throw LengthError("IDX images: expected 16 header bytes, got " +
                      std::to_string(bytes.size()));
  }
  const std::uint64_t count = read_be32(bytes, 4);
  const std::uint64_t rows = read_be32(bytes, 8);
  const std::uint64_t cols = read_be32(bytes, 12);
  const std::uint64_t stride64 = rows * cols;
  if (stride64 != 0 && count > (UINT64_MAX - 16) / stride64) {
    throw LengthError("IDX images: header claims an impossible payload size");
  }
  check_length(16 + count * stride64, bytes.size(), "images");

  std::vector<GrayImage> images;
  images.reserve(count);
  const std::size_t stride = rows * cols;
  auto cursor = bytes.begin() + 16;
  for (std::uint64_t i = 0; i < count; ++i) {
    images.push_back(GrayImage{cols, rows,
                               std::vector<std::uint8_t>(cursor, cursor + stride)});
    cursor += static_cast<std::ptrdiff_t>(stride);
  }
  return images;
}

std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes) {
  check_magic(bytes, kIdxLabelMagic, "labels");
  if (bytes.size() < 8) {
    throw LengthError("IDX labels: expected 8 header bytes, got " +
                      std::to_string(bytes.size()));
  }
  const std::uint64_t count = read_be32(bytes, 4);
  check_length(8 + count, bytes.size(), "labels");
  std::vector<std::uint8_t> labels(bytes.begin() + 8, bytes.end());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] > 9) {
      throw ValueError("IDX labels: record " + std::to_string(i) +
                       " has label " + std::to_string(labels[i]) + " > 9");
    }
  }
  return labels;
}

std::vector<std::uint8_t> serialize_idx_images(std::span<const GrayImage> images,
                                               std::size_t rows,
                                               std::size_t cols) {
  if (!images.empty()) {
    rows = images.front().height;
    cols = images.front().width;
  }
  std::vector<std::uint8_t> out;
  out.reserve(16 + images.size() * rows * cols);
  write_be32(out, kIdxImageMagic);
  write_be32(out, images.size());
  write_be32(out, rows);
  write_be32(out, cols);
  for (const auto& img : images) {
    if (img.height != rows || img.width != cols ||
        img.pixels.size() != rows * cols) {
      throw DimensionError("serialize_idx_images: inconsistent image sizes");
    }
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  }
  return out;
}

std::vector<std::uint8_t> serialize_idx_labels(
    std::span<const std::uint8_t> labels) {
  std::vector<std::uint8_t> out;
  out.reserve(8 + labels.size());
  write_be32(out, kIdxLabelMagic);
  write_be32(out, labels.size());
  out.insert(out.end(), labels.begin(), labels.end());
  return out;
}

bool is_gzip(std::span<const std::uint8_t> bytes) noexcept {
  return bytes.size() >= 2 && bytes[0] == 0x1f && bytes[1] == 0x8b;
}

std::vector<std::uint8_t> gunzip(std::span<const std::uint8_t> bytes) {
  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) {
    throw DataError("gunzip: inflateInit2 failed");
  }
  zs.next_in = const_cast<Bytef*>(bytes.data());
  zs.avail_in = static_cast<uInt>(bytes.size());

  std::vector<std::uint8_t> out;
  std::vector<std::uint8_t> chunk(1 << 16);
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    zs.next_out = chunk.data();
    zs.avail_out = static_cast<uInt>(chunk.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc == Z_BUF_ERROR) {
      inflateEnd(&zs);
      throw LengthError("gunzip: truncated gzip stream");
    }
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw FormatError("gunzip: corrupt gzip stream (zlib code " +
                        std::to_string(rc) + ")");
    }
    out.insert(out.end(), chunk.data(),
               chunk.data() + (chunk.size() - zs.avail_out));
    if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
      inflateEnd(&zs);
      throw LengthError("gunzip: truncated gzip stream");
    }
  }
  inflateEnd(&zs);
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
  if (in.bad()) throw DataError("read error on " + path.string());
  if (is_gzip(raw)) return gunzip(raw);
  return raw;
}

IdxDataset load_idx_dataset(const std::filesystem::path& images,
                            const std::filesystem::path& labels) {
  auto with_path = [](const std::filesystem::path& p, auto&& parse) {
    try {
      return parse(read_file_bytes(p));
    } catch (const FormatError& e) {
      throw FormatError(p.string() + ": " + e.what());
    } catch (const LengthError& e) {
      throw LengthError(p.string() + ": " + e.what());
    } catch (const ValueError& e) {
      throw ValueError(p.string() + ": " + e.what());
    }
  };
  IdxDataset ds;
  ds.images = with_path(images, [](const auto& b) { return parse_idx_images(b); });
  ds.labels = with_path(labels, [](const auto& b) { return parse_idx_labels(b); });
  if (ds.images.size() != ds.labels.size()) {
    throw LengthError(images.string() + " holds " +
                      std::to_string(ds.images.size()) + " images but " +
                      labels.string() + " holds " +
                      std::to_string(ds.labels.size()) + " labels");
  }
  return ds;
}

}  // namespace qpclass
