// Copyright 2026 The opd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "opd/errors.hpp"
#include "opd/geo.hpp"

namespace opd {

/// Affine mapping between pixel space and geographic degrees.
///
/// Pixel (0,0) is the north-west corner of the grid; latitude decreases
/// with increasing row. Fractional pixel coordinates are meaningful, so a
/// cell's center sits at (col + 0.5, row + 0.5).
struct GeoTransform {
  double origin_lon = 0;
  double origin_lat = 0;
  double pixel_width = 1e-4;   // degrees per pixel, > 0
  double pixel_height = 1e-4;  // degrees per pixel, > 0, applied southward

  bool valid() const { return pixel_width > 0 && pixel_height > 0; }

  LonLat pixel_to_geo(double col, double row) const {
    return {origin_lon + col * pixel_width, origin_lat - row * pixel_height};
  }

  /// Inverse of pixel_to_geo; integer pixel indices round-trip to within
  /// floating-point rounding of the exact index.
  void geo_to_pixel(LonLat p, double& col, double& row) const {
    col = (p.lon - origin_lon) / pixel_width;
    row = (origin_lat - p.lat) / pixel_height;
  }

  bool operator==(const GeoTransform&) const = default;
};

enum class PixelKind : std::uint8_t { kDbFloat, kU8 };

inline constexpr float kDefaultNoData = -9999.0f;
inline constexpr double kDbFloor = -40.0;
inline constexpr double kDbCeil = 0.0;

/// Row-major single-band raster. Values are stored as float regardless of
/// kind; kU8 rasters hold integral values in [0,255].
class Raster {
 public:
  Raster() = default;

  Raster(int width, int height, GeoTransform transform, PixelKind kind,
         float fill = 0.0f, float nodata = kDefaultNoData)
      : width_(width),
        height_(height),
        transform_(transform),
        kind_(kind),
        nodata_(nodata),
        values_(static_cast<std::size_t>(width) * height, fill) {
    if (width <= 0 || height <= 0) {
      throw ShapeError("raster dimensions must be positive");
    }
    if (!transform.valid()) {
      throw ShapeError("pixel sizes must be strictly positive");
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  const GeoTransform& transform() const { return transform_; }
  PixelKind kind() const { return kind_; }
  float nodata() const { return nodata_; }

  std::vector<float>& values() { return values_; }
  const std::vector<float>& values() const { return values_; }

  float at(int col, int row) const {
    return values_[static_cast<std::size_t>(row) * width_ + col];
  }
  float& at(int col, int row) {
    return values_[static_cast<std::size_t>(row) * width_ + col];
  }

  bool is_nodata(int col, int row) const { return at(col, row) == nodata_; }

  bool in_bounds(int col, int row) const {
    return col >= 0 && col < width_ && row >= 0 && row < height_;
  }

  /// Cell whose area contains the point; false if outside the footprint.
  bool cell_at(LonLat p, int& col, int& row) const {
    double c, r;
    transform_.geo_to_pixel(p, c, r);
    col = static_cast<int>(std::floor(c));
    row = static_cast<int>(std::floor(r));
    return in_bounds(col, row);
  }

  GeoBox footprint() const {
    LonLat nw = transform_.pixel_to_geo(0, 0);
    LonLat se = transform_.pixel_to_geo(width_, height_);
    return {nw.lon, se.lat, se.lon, nw.lat};
  }

  bool same_grid(const Raster& o) const {
    return width_ == o.width_ && height_ == o.height_ &&
           transform_ == o.transform_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  GeoTransform transform_{};
  PixelKind kind_ = PixelKind::kDbFloat;
  float nodata_ = kDefaultNoData;
  std::vector<float> values_;
};

/// Linear 8-bit scaling of backscatter: [-40 dB, 0 dB] maps to [0, 255]
/// with round-half-up, out-of-range inputs clamped.
inline std::uint8_t db_to_u8(double db) {
  if (!std::isfinite(db)) {
    throw ValueError("backscatter value is not finite");
  }
  double clamped = std::clamp(db, kDbFloor, kDbCeil);
  double scaled = (clamped - kDbFloor) / (kDbCeil - kDbFloor) * 255.0;
  return static_cast<std::uint8_t>(std::floor(scaled + 0.5));
}

/// Inverse of db_to_u8 up to quantization: maps level to the dB value at
/// that level, level/255 * 40 - 40.
inline double u8_to_db(std::uint8_t level) {
  return static_cast<double>(level) / 255.0 * (kDbCeil - kDbFloor) + kDbFloor;
}

/// Quantizes a dB composite to 8-bit levels. Nodata cells become level 0,
/// which is the -40 dB floor and can never pass the noise gate.
inline Raster quantize_to_u8(const Raster& db) {
  if (db.kind() != PixelKind::kDbFloat) {
    throw ShapeError("quantize expects a dB raster");
  }
  Raster out(db.width(), db.height(), db.transform(), PixelKind::kU8, 0.0f);
  const auto& src = db.values();
  auto& dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = src[i] == db.nodata()
                 ? 0.0f
                 : static_cast<float>(db_to_u8(static_cast<double>(src[i])));
  }
  return out;
}

/// Per-pixel temporal median over co-registered dB scenes. Nodata cells are
/// excluded per pixel; an even count takes the mean of the two middle
/// values; a pixel with no valid value stays nodata.
inline Raster median_composite(std::span<const Raster> stack) {
  if (stack.empty()) throw ShapeError("median composite of an empty stack");
  const Raster& first = stack.front();
  for (const Raster& r : stack) {
    if (!r.same_grid(first)) {
      throw ShapeError("scene grids differ within one composite stack");
    }
    if (r.kind() != PixelKind::kDbFloat) {
      throw ShapeError("median composite expects dB scenes");
    }
  }
  Raster out(first.width(), first.height(), first.transform(),
             PixelKind::kDbFloat, first.nodata(), first.nodata());
  std::vector<float> vals;
  vals.reserve(stack.size());
  const std::size_t n_px = first.values().size();
  for (std::size_t i = 0; i < n_px; ++i) {
    vals.clear();
    for (const Raster& r : stack) {
      float v = r.values()[i];
      if (v != r.nodata()) vals.push_back(v);
    }
    if (vals.empty()) continue;
    std::size_t mid = vals.size() / 2;
    std::nth_element(vals.begin(), vals.begin() + mid, vals.end());
    float m = vals[mid];
    if (vals.size() % 2 == 0) {
      float lo = *std::max_element(vals.begin(), vals.begin() + mid);
      m = (lo + m) / 2.0f;
    }
    out.values()[i] = m;
  }
  return out;
}

/// Pads a raster on the right/bottom up to the requested size. dB rasters
/// are padded with the -40 dB floor, 8-bit rasters with level 0; either way
/// the padding sits far below the level-150 noise gate.
inline Raster pad_to_min(const Raster& r, int min_width, int min_height) {
  int w = std::max(r.width(), min_width);
  int h = std::max(r.height(), min_height);
  if (w == r.width() && h == r.height()) return r;
  float fill = r.kind() == PixelKind::kU8 ? 0.0f
                                          : static_cast<float>(kDbFloor);
  Raster out(w, h, r.transform(), r.kind(), fill, r.nodata());
  for (int row = 0; row < r.height(); ++row) {
    std::copy_n(r.values().begin() + static_cast<std::size_t>(row) * r.width(),
                r.width(),
                out.values().begin() + static_cast<std::size_t>(row) * w);
  }
  return out;
}

inline constexpr int kChipSize = 640;
inline constexpr double kChipOverlap = 0.2;
inline constexpr int kChipStride = 512;  // 640 * (1 - 0.2)

/// One model-input window within a tile, in tile pixel offsets.
struct ChipWindow {
  std::string tile_id;
  int col0 = 0;
  int row0 = 0;
  int size = kChipSize;

  bool operator==(const ChipWindow&) const = default;
};

namespace detail {
inline std::vector<int> chip_offsets(int dim) {
  std::vector<int> offsets;
  int pos = 0;
  while (true) {
    if (pos + kChipSize >= dim) {
      offsets.push_back(dim - kChipSize);
      break;
    }
    offsets.push_back(pos);
    pos += kChipStride;
  }
  return offsets;
}
}  // namespace detail

/// 640x640 windows at stride 512 covering the whole tile; the last window
/// per axis is shifted so its far edge lands exactly on the tile edge.
/// Tiles smaller than 640 px must be padded first (see pad_to_min).
inline std::vector<ChipWindow> chip_grid(int tile_width, int tile_height,
                                         std::string tile_id = {}) {
  if (tile_width < kChipSize || tile_height < kChipSize) {
    throw ShapeError("tile smaller than chip size; pad before chipping");
  }
  std::vector<int> cols = detail::chip_offsets(tile_width);
  std::vector<int> rows = detail::chip_offsets(tile_height);
  std::vector<ChipWindow> windows;
  windows.reserve(cols.size() * rows.size());
  for (int row0 : rows) {
    for (int col0 : cols) {
      windows.push_back(ChipWindow{tile_id, col0, row0, kChipSize});
    }
  }
  return windows;
}

}  // namespace opd
