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
#include <vector>

#include "opd/errors.hpp"

namespace opd {

struct LonLat {
  double lon = 0;
  double lat = 0;

  bool operator==(const LonLat&) const = default;
};

/// Axis-aligned geographic bounding box in degrees (EPSG:4326 plane).
struct GeoBox {
  double min_lon = 0;
  double min_lat = 0;
  double max_lon = 0;
  double max_lat = 0;

  bool valid() const { return min_lon < max_lon && min_lat < max_lat; }
  double width() const { return max_lon - min_lon; }
  double height() const { return max_lat - min_lat; }
  double area() const { return width() * height(); }
  LonLat center() const {
    return {(min_lon + max_lon) / 2, (min_lat + max_lat) / 2};
  }
  bool contains(LonLat p) const {
    return p.lon >= min_lon && p.lon <= max_lon && p.lat >= min_lat &&
           p.lat <= max_lat;
  }
  bool operator==(const GeoBox&) const = default;
};

/// Intersection-over-union in planar degree^2 arithmetic. Returns 0 for
/// disjoint boxes, 1 for identical ones.
inline double iou(const GeoBox& a, const GeoBox& b) {
  double iw = std::min(a.max_lon, b.max_lon) - std::max(a.min_lon, b.min_lon);
  double ih = std::min(a.max_lat, b.max_lat) - std::max(a.min_lat, b.min_lat);
  if (iw <= 0 || ih <= 0) return 0;
  double inter = iw * ih;
  double uni = a.area() + b.area() - inter;
  return uni > 0 ? inter / uni : 0;
}

inline constexpr double kEarthRadiusKm = 6371.0088;
inline constexpr double kDegToRad = 0.017453292519943295;

/// Great-circle distance on the mean-radius sphere, in kilometers.
inline double haversine_km(LonLat a, LonLat b) {
  double lat1 = a.lat * kDegToRad;
  double lat2 = b.lat * kDegToRad;
  double dlat = (b.lat - a.lat) * kDegToRad;
  double dlon = (b.lon - a.lon) * kDegToRad;
  double s1 = std::sin(dlat / 2);
  double s2 = std::sin(dlon / 2);
  double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
  h = std::min(1.0, h);
  return 2 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

using Ring = std::vector<LonLat>;

/// Squared planar distance from p to segment ab, in degree^2.
inline double point_segment_dist2(LonLat p, LonLat a, LonLat b) {
  double dx = b.lon - a.lon;
  double dy = b.lat - a.lat;
  double len2 = dx * dx + dy * dy;
  double t = 0;
  if (len2 > 0) {
    t = ((p.lon - a.lon) * dx + (p.lat - a.lat) * dy) / len2;
    t = std::clamp(t, 0.0, 1.0);
  }
  double ex = a.lon + t * dx - p.lon;
  double ey = a.lat + t * dy - p.lat;
  return ex * ex + ey * ey;
}

inline constexpr double kOnBoundaryEpsDeg = 1e-9;  // ~0.1 mm

inline bool point_on_segment(LonLat p, LonLat a, LonLat b,
                             double eps = kOnBoundaryEpsDeg) {
  return point_segment_dist2(p, a, b) <= eps * eps;
}

/// Even-odd containment test against one ring; a point on the boundary
/// counts as inside. The ring may be open or explicitly closed.
inline bool point_in_ring(LonLat p, const Ring& ring) {
  std::size_t n = ring.size();
  if (n < 3) return false;
  if (ring.front() == ring.back()) --n;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const LonLat& a = ring[j];
    const LonLat& b = ring[i];
    if (point_on_segment(p, a, b)) return true;
    bool cross = (b.lat > p.lat) != (a.lat > p.lat);
    if (cross) {
      double x = (a.lon - b.lon) * (p.lat - b.lat) / (a.lat - b.lat) + b.lon;
      if (p.lon < x) inside = !inside;
    }
  }
  return inside;
}

/// Even-odd containment across a set of rings (exterior plus holes).
inline bool point_in_rings(LonLat p, const std::vector<Ring>& rings) {
  int hits = 0;
  for (const Ring& r : rings) {
    if (r.size() >= 3) {
      // Boundary of any ring counts as inside the polygon.
      std::size_t n = r.front() == r.back() ? r.size() - 1 : r.size();
      for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        if (point_on_segment(p, r[j], r[i])) return true;
      }
    }
    if (point_in_ring(p, r)) ++hits;
  }
  return (hits % 2) == 1;
}

}  // namespace opd
