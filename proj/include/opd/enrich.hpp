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

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opd/geo.hpp"
#include "opd/raster.hpp"
#include "opd/tracklink.hpp"

namespace opd {

enum class Region { kNS, kPG, kGOM, kNone };

inline const char* region_name(Region r) {
  switch (r) {
    case Region::kNS: return "NS";
    case Region::kPG: return "PG";
    case Region::kGOM: return "GOM";
    case Region::kNone: return "NONE";
  }
  return "NONE";
}

/// Accepts the region codes plus the common long-form spellings.
inline Region parse_region(std::string_view s) {
  if (s == "NS" || s == "North Sea") return Region::kNS;
  if (s == "PG" || s == "Persian Gulf") return Region::kPG;
  if (s == "GOM" || s == "GoM" || s == "Gulf of Mexico") return Region::kGOM;
  if (s == "NONE" || s.empty()) return Region::kNone;
  throw InputError("unknown region '" + std::string(s) + "'");
}

/// Named polygon with optional country code; `polygons` is a list of
/// ring sets (exterior plus holes), one per disjoint part.
struct Zone {
  std::string name;
  std::string code;
  std::vector<std::vector<Ring>> polygons;
};

struct ZoneLayer {
  enum class Kind { kEez, kRegion };
  Kind kind = Kind::kEez;
  std::vector<Zone> zones;
};

/// First zone in file order containing the point (even-odd rule, boundary
/// counts as inside); nullptr when no zone matches.
inline const Zone* find_zone(LonLat p, const ZoneLayer& layer) {
  for (const Zone& z : layer.zones) {
    for (const auto& rings : z.polygons) {
      if (point_in_rings(p, rings)) return &z;
    }
  }
  return nullptr;
}

inline std::optional<std::string> assign_zone(LonLat p,
                                              const ZoneLayer& layer) {
  const Zone* z = find_zone(p, layer);
  if (!z) return std::nullopt;
  return z->name;
}

/// Coastline vertex chains, densified so that the nearest-vertex distance
/// approximates the nearest-point distance to within max_seg_km / 2.
struct Coastline {
  std::vector<std::vector<LonLat>> polylines;
  double max_seg_km = 1.0;
};

/// Splits every segment longer than max_seg_km into equal parts
/// (linear interpolation in degrees).
inline Coastline densify_coastline(std::vector<std::vector<LonLat>> polylines,
                                   double max_seg_km = 1.0) {
  if (max_seg_km <= 0) throw InputError("max_seg_km must be positive");
  Coastline out;
  out.max_seg_km = max_seg_km;
  for (const auto& chain : polylines) {
    if (chain.size() < 2) {
      throw InputError("coastline chain needs at least 2 vertices");
    }
    std::vector<LonLat> dense;
    dense.push_back(chain.front());
    for (std::size_t i = 1; i < chain.size(); ++i) {
      LonLat a = chain[i - 1];
      LonLat b = chain[i];
      double len = haversine_km(a, b);
      int parts = std::max(1, static_cast<int>(std::ceil(len / max_seg_km)));
      for (int k = 1; k <= parts; ++k) {
        double f = static_cast<double>(k) / parts;
        dense.push_back({a.lon + f * (b.lon - a.lon),
                         a.lat + f * (b.lat - a.lat)});
      }
    }
    out.polylines.push_back(std::move(dense));
  }
  return out;
}

/// Geodetic distance to the nearest coastline vertex, in kilometers.
inline double coast_distance_km(LonLat p, const Coastline& coast) {
  if (coast.polylines.empty()) {
    throw InputError("coastline is empty");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& chain : coast.polylines) {
    for (LonLat v : chain) {
      best = std::min(best, haversine_km(p, v));
    }
  }
  return best;
}

/// Bathymetry lookup at the platform center. Nodata cells fall back to the
/// mean of the valid 3x3 neighbors; missing when the whole window is
/// nodata. Throws FootprintError when the point is off the raster.
inline std::optional<double> depth_at(LonLat p, const Raster& bathy) {
  int col = 0, row = 0;
  if (!bathy.cell_at(p, col, row)) {
    throw FootprintError("depth query outside bathymetry footprint");
  }
  if (!bathy.is_nodata(col, row)) {
    return static_cast<double>(bathy.at(col, row));
  }
  double sum = 0;
  int n = 0;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      int c = col + dc, r = row + dr;
      if (!bathy.in_bounds(c, r) || bathy.is_nodata(c, r)) continue;
      sum += static_cast<double>(bathy.at(c, r));
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

inline constexpr double kMetersPerDegLon = 111320.0;  // at the equator
inline constexpr double kMetersPerDegLat = 110574.0;

/// Equirectangular bounding-box area in hectares.
inline double box_area_ha(const GeoBox& b) {
  double mid_lat = (b.min_lat + b.max_lat) / 2 * kDegToRad;
  double width_m = b.width() * kMetersPerDegLon * std::cos(mid_lat);
  double height_m = b.height() * kMetersPerDegLat;
  return width_m * height_m / 1e4;
}

/// Platform inventory record with spatial attributes attached.
struct EnrichedPlatform {
  PlatformTrack track;
  Region region = Region::kNone;
  std::string eez = "NONE";
  std::optional<double> coast_km;
  std::optional<double> depth_m;
  double area_ha = 0;
};

/// Optional enrichment inputs; a missing layer leaves the corresponding
/// attribute unset.
struct EnrichLayers {
  std::optional<ZoneLayer> eez;
  std::optional<ZoneLayer> regions;
  std::optional<Coastline> coast;
  std::optional<Raster> bathymetry;
};

inline EnrichedPlatform enrich_track(const PlatformTrack& track,
                                     const EnrichLayers& layers) {
  EnrichedPlatform out;
  out.track = track;
  out.area_ha = box_area_ha(track.rep_box);
  if (layers.regions) {
    const Zone* z = find_zone(track.center, *layers.regions);
    out.region = z ? parse_region(z->name) : Region::kNone;
  }
  if (layers.eez) {
    const Zone* z = find_zone(track.center, *layers.eez);
    if (z) out.eez = z->code.empty() ? z->name : z->code;
  }
  if (layers.coast && !layers.coast->polylines.empty()) {
    out.coast_km = coast_distance_km(track.center, *layers.coast);
  }
  if (layers.bathymetry) {
    int col = 0, row = 0;
    if (layers.bathymetry->cell_at(track.center, col, row)) {
      out.depth_m = depth_at(track.center, *layers.bathymetry);
    }
  }
  return out;
}

inline std::vector<EnrichedPlatform> enrich_fleet(
    std::span<const PlatformTrack> tracks, const EnrichLayers& layers) {
  std::vector<EnrichedPlatform> out;
  out.reserve(tracks.size());
  for (const PlatformTrack& t : tracks) out.push_back(enrich_track(t, layers));
  return out;
}

}  // namespace opd
