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
#include <set>
#include <span>
#include <string>
#include <vector>

#include "opd/consolidate.hpp"
#include "opd/hash.hpp"
#include "opd/quarter.hpp"

namespace opd {

struct TrackMember {
  Quarter quarter;
  std::string detection_id;
  GeoBox box;
  double confidence = 0;
};

/// One physical platform: every quarterly detection of the same structure,
/// merged across the whole study window.
struct PlatformTrack {
  std::string platform_id;
  std::vector<TrackMember> members;  // sorted by (quarter, detection id)
  GeoBox rep_box{};                  // box of the most confident member
  LonLat center{};                   // mean of member box centers
  Quarter first{};
  Quarter last{};
  std::vector<Quarter> observed;     // sorted, unique
};

enum class LifespanCategory { kShort, kMedium, kFullSpan };

inline const char* category_name(LifespanCategory c) {
  switch (c) {
    case LifespanCategory::kShort: return "SHORT";
    case LifespanCategory::kMedium: return "MEDIUM";
    case LifespanCategory::kFullSpan: return "FULL_SPAN";
  }
  return "unknown";
}

inline LifespanCategory category_from_name(std::string_view s) {
  if (s == "SHORT") return LifespanCategory::kShort;
  if (s == "MEDIUM") return LifespanCategory::kMedium;
  if (s == "FULL_SPAN") return LifespanCategory::kFullSpan;
  throw InputError("unknown lifespan category '" + std::string(s) + "'");
}

/// Quarters a track spans below which it counts as short-lived (< 5 years).
inline constexpr int kShortMaxQuarters = 19;

namespace detail {

inline PlatformTrack make_track(std::vector<TrackMember> members) {
  std::sort(members.begin(), members.end(),
            [](const TrackMember& a, const TrackMember& b) {
              if (a.quarter != b.quarter) return a.quarter < b.quarter;
              return a.detection_id < b.detection_id;
            });
  PlatformTrack t;
  t.first = members.front().quarter;
  t.last = members.back().quarter;
  std::string id_blob;
  double lon_sum = 0, lat_sum = 0;
  const TrackMember* best = &members.front();
  std::set<Quarter> seen;
  for (const TrackMember& m : members) {
    id_blob += m.detection_id;
    id_blob += '\n';
    LonLat c = m.box.center();
    lon_sum += c.lon;
    lat_sum += c.lat;
    seen.insert(m.quarter);
    if (m.confidence > best->confidence) best = &m;
  }
  t.platform_id = "P" + hex64(fnv1a64(id_blob));
  t.rep_box = best->box;
  t.center = {lon_sum / members.size(), lat_sum / members.size()};
  t.observed.assign(seen.begin(), seen.end());
  t.members = std::move(members);
  return t;
}

}  // namespace detail

/// Merges detections of all quarters into physical platforms: connected
/// components over every detection with edges iou >= iou_min. Member ids
/// seed the platform id, so identical inputs produce identical ids no
/// matter how the inventories are ordered. Tracks come back sorted by
/// platform id.
inline std::vector<PlatformTrack> link_quarters(
    std::span<const QuarterInventory> inventories, double iou_min = 0.1) {
  std::set<Quarter> quarters;
  for (const auto& inv : inventories) {
    if (!quarters.insert(inv.quarter).second) {
      throw InputError("duplicate quarter in link input: " +
                       inv.quarter.str());
    }
  }
  std::vector<TrackMember> all;
  std::vector<GeoBox> boxes;
  for (const auto& inv : inventories) {
    for (const Detection& d : inv.detections) {
      all.push_back({inv.quarter, d.id, d.box, d.confidence});
      boxes.push_back(d.box);
    }
  }
  auto components = detail::overlap_components(boxes, iou_min);
  std::vector<PlatformTrack> tracks;
  tracks.reserve(components.size());
  for (const auto& comp : components) {
    std::vector<TrackMember> members;
    members.reserve(comp.size());
    for (std::size_t idx : comp) members.push_back(all[idx]);
    tracks.push_back(detail::make_track(std::move(members)));
  }
  std::sort(tracks.begin(), tracks.end(),
            [](const PlatformTrack& a, const PlatformTrack& b) {
              return a.platform_id < b.platform_id;
            });
  return tracks;
}

struct Lifespan {
  int duration_quarters = 0;
  LifespanCategory category = LifespanCategory::kShort;
};

/// Gap-filled lifetime: the span between first and last detection,
/// inclusive. FULL_SPAN only when the track touches both window endpoints;
/// otherwise SHORT below 20 quarters (< 5 years) and MEDIUM up to 32.
inline Lifespan lifespan(const PlatformTrack& t,
                         const StudyWindow& window = {}) {
  Lifespan out;
  out.duration_quarters = t.last.index() - t.first.index() + 1;
  if (t.first == window.first && t.last == window.last) {
    out.category = LifespanCategory::kFullSpan;
  } else if (out.duration_quarters <= kShortMaxQuarters) {
    out.category = LifespanCategory::kShort;
  } else {
    out.category = LifespanCategory::kMedium;
  }
  return out;
}

/// Gap-filled presence: true for every quarter between the first and last
/// detection, observed or not.
inline bool presence(const PlatformTrack& t, Quarter q) {
  return t.first.index() <= q.index() && q.index() <= t.last.index();
}

struct Turnover {
  int installed = 0;  // first detected after the window start
  int removed = 0;    // last detected before the window end
};

inline Turnover turnover(std::span<const PlatformTrack> tracks,
                         const StudyWindow& window = {}) {
  Turnover out;
  for (const PlatformTrack& t : tracks) {
    if (t.first > window.first) ++out.installed;
    if (t.last < window.last) ++out.removed;
  }
  return out;
}

}  // namespace opd
