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

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "opd/errors.hpp"
#include "opd/geo.hpp"
#include "opd/quarter.hpp"
#include "opd/raster.hpp"

namespace opd {

enum class DetClass : int {
  kSinglePlatform = 0,
  kPlatformCluster = 1,
  kWindTurbine = 2,
};

inline const char* class_name(DetClass c) {
  switch (c) {
    case DetClass::kSinglePlatform: return "single_platform";
    case DetClass::kPlatformCluster: return "platform_cluster";
    case DetClass::kWindTurbine: return "wind_turbine";
  }
  return "unknown";
}

inline DetClass class_from_name(std::string_view s) {
  if (s == "single_platform") return DetClass::kSinglePlatform;
  if (s == "platform_cluster") return DetClass::kPlatformCluster;
  if (s == "wind_turbine") return DetClass::kWindTurbine;
  throw InputError("unknown detection class '" + std::string(s) + "'");
}

/// One georeferenced model detection.
struct Detection {
  std::string id;
  Quarter quarter;
  std::string tile_id;
  DetClass cls = DetClass::kSinglePlatform;
  double confidence = 0;
  GeoBox box{};
  int max_level = 0;  // 0..255, filled by attach_max_level
};

/// Georeferencing context of the tile a chip belongs to.
struct TileContext {
  std::string tile_id;
  GeoTransform transform;
  int width = 0;  // pixels, after padding
  int height = 0;
};

struct RejectedRecord {
  std::size_t line_no = 0;
  std::string reason;
};

struct ChipParseResult {
  std::vector<Detection> detections;
  std::vector<RejectedRecord> rejected;
};

namespace detail {

inline bool parse_double_field(std::string_view s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc{} && res.ptr == end && std::isfinite(out);
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

}  // namespace detail

/// Parses one chip detection file: records of
/// `class_id cx cy w h confidence`, all normalized to [0,1] in chip
/// coordinates. Boxes are scaled by the chip size, offset by the window
/// position, georeferenced through the tile transform, and clipped to the
/// tile extent.
///
/// Structurally malformed lines raise ParseError with the line number.
/// Records with out-of-range values (or empty after clipping) are dropped
/// and reported in `rejected`. Detection ids are derived from the tile,
/// window, quarter, and line number, so re-runs produce identical ids.
inline ChipParseResult parse_chip_detections(std::string_view text,
                                             const TileContext& tile,
                                             const ChipWindow& window,
                                             Quarter quarter) {
  ChipParseResult out;
  GeoBox tile_extent{
      tile.transform.pixel_to_geo(0, tile.height).lon,
      tile.transform.pixel_to_geo(0, tile.height).lat,
      tile.transform.pixel_to_geo(tile.width, 0).lon,
      tile.transform.pixel_to_geo(tile.width, 0).lat,
  };
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    auto fields = detail::split_ws(line);
    if (fields.empty()) continue;
    if (fields.size() != 6) {
      throw ParseError("expected 6 fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    double raw[6];
    for (int i = 0; i < 6; ++i) {
      if (!detail::parse_double_field(fields[i], raw[i])) {
        throw ParseError("bad numeric field '" + std::string(fields[i]) + "'",
                         line_no);
      }
    }
    double class_id = raw[0];
    double cx = raw[1], cy = raw[2], w = raw[3], h = raw[4], conf = raw[5];
    if (class_id != 0 && class_id != 1 && class_id != 2) {
      out.rejected.push_back({line_no, "unknown class id"});
      continue;
    }
    bool in_range = cx >= 0 && cx <= 1 && cy >= 0 && cy <= 1 && w > 0 &&
                    w <= 1 && h > 0 && h <= 1 && conf >= 0 && conf <= 1;
    if (!in_range) {
      out.rejected.push_back({line_no, "normalized value out of range"});
      continue;
    }

    double size = static_cast<double>(window.size);
    double left_px = window.col0 + (cx - w / 2) * size;
    double right_px = window.col0 + (cx + w / 2) * size;
    double top_px = window.row0 + (cy - h / 2) * size;
    double bottom_px = window.row0 + (cy + h / 2) * size;

    GeoBox box{
        tile.transform.pixel_to_geo(left_px, 0).lon,
        tile.transform.pixel_to_geo(0, bottom_px).lat,
        tile.transform.pixel_to_geo(right_px, 0).lon,
        tile.transform.pixel_to_geo(0, top_px).lat,
    };
    // Clip to the tile extent.
    box.min_lon = std::max(box.min_lon, tile_extent.min_lon);
    box.min_lat = std::max(box.min_lat, tile_extent.min_lat);
    box.max_lon = std::min(box.max_lon, tile_extent.max_lon);
    box.max_lat = std::min(box.max_lat, tile_extent.max_lat);
    if (!box.valid()) {
      out.rejected.push_back({line_no, "empty box after clipping to tile"});
      continue;
    }

    Detection d;
    d.id = tile.tile_id + "_" + quarter.str() + "_" +
           std::to_string(window.col0) + "_" + std::to_string(window.row0) +
           "_L" + std::to_string(line_no);
    d.quarter = quarter;
    d.tile_id = tile.tile_id;
    d.cls = static_cast<DetClass>(static_cast<int>(class_id));
    d.confidence = conf;
    d.box = box;
    out.detections.push_back(std::move(d));
  }
  return out;
}

/// Maximum 8-bit level over the pixels whose centers fall inside the box.
/// If the box is so small that no pixel center is covered, the cell under
/// the box center is used. Throws FootprintError when the box misses the
/// raster entirely.
inline int max_level_in_box(const GeoBox& box, const Raster& u8) {
  if (u8.kind() != PixelKind::kU8) {
    throw ShapeError("max_level_in_box expects an 8-bit raster");
  }
  GeoBox fp = u8.footprint();
  GeoBox inter{std::max(box.min_lon, fp.min_lon),
               std::max(box.min_lat, fp.min_lat),
               std::min(box.max_lon, fp.max_lon),
               std::min(box.max_lat, fp.max_lat)};
  if (!(inter.min_lon < inter.max_lon && inter.min_lat < inter.max_lat)) {
    throw FootprintError("detection box outside raster footprint");
  }
  const GeoTransform& t = u8.transform();
  // Pixel centers sit at (col + 0.5, row + 0.5).
  double c_lo = (box.min_lon - t.origin_lon) / t.pixel_width - 0.5;
  double c_hi = (box.max_lon - t.origin_lon) / t.pixel_width - 0.5;
  double r_lo = (t.origin_lat - box.max_lat) / t.pixel_height - 0.5;
  double r_hi = (t.origin_lat - box.min_lat) / t.pixel_height - 0.5;
  int col0 = std::max(0, static_cast<int>(std::ceil(c_lo)));
  int col1 = std::min(u8.width() - 1, static_cast<int>(std::floor(c_hi)));
  int row0 = std::max(0, static_cast<int>(std::ceil(r_lo)));
  int row1 = std::min(u8.height() - 1, static_cast<int>(std::floor(r_hi)));
  int best = -1;
  for (int row = row0; row <= row1; ++row) {
    for (int col = col0; col <= col1; ++col) {
      LonLat c = t.pixel_to_geo(col + 0.5, row + 0.5);
      if (box.contains(c)) best = std::max(best, static_cast<int>(u8.at(col, row)));
    }
  }
  if (best < 0) {
    int col = 0, row = 0;
    u8.cell_at(inter.center(), col, row);
    col = std::clamp(col, 0, u8.width() - 1);
    row = std::clamp(row, 0, u8.height() - 1);
    best = static_cast<int>(u8.at(col, row));
  }
  return best;
}

inline Detection attach_max_level(Detection d, const Raster& u8_composite) {
  d.max_level = max_level_in_box(d.box, u8_composite);
  return d;
}

}  // namespace opd
