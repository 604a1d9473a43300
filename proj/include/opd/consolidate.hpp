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
#include <array>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "opd/detection.hpp"
#include "opd/geo.hpp"
#include "opd/quarter.hpp"
#include "opd/union_find.hpp"

namespace opd {

/// External wind-farm polygons; detections centered inside any of them are
/// discarded.
struct ExclusionLayer {
  struct Poly {
    std::string name;
    std::vector<Ring> rings;
  };
  std::vector<Poly> polygons;
};

inline void validate(const ExclusionLayer& layer) {
  for (const auto& poly : layer.polygons) {
    for (const Ring& ring : poly.rings) {
      if (ring.size() < 4 || ring.front() != ring.back()) {
        throw InputError("exclusion ring must be closed with >= 4 vertices (" +
                         poly.name + ")");
      }
    }
  }
}

inline bool excluded(LonLat p, const ExclusionLayer& layer) {
  for (const auto& poly : layer.polygons) {
    if (point_in_rings(p, poly.rings)) return true;
  }
  return false;
}

/// One quarter's cleaned detection set: pairwise IoU < the dedup threshold,
/// no wind turbines.
struct QuarterInventory {
  Quarter quarter;
  std::vector<Detection> detections;
};

struct ConsolidateConfig {
  double conf_min = 0.4;
  int level_min = 150;
  double iou_min = 0.2;
};

/// Confidence and backscatter gates, both inclusive. Order preserving.
inline std::vector<Detection> gate_detections(std::vector<Detection> ds,
                                              double conf_min = 0.4,
                                              int level_min = 150) {
  std::erase_if(ds, [&](const Detection& d) {
    return d.confidence < conf_min || d.max_level < level_min;
  });
  return ds;
}

namespace detail {

// Union-find over pairs with IoU >= iou_min, restricted to boxes whose
// longitude ranges overlap (a lon-sorted sweep; IoU > 0 needs overlap).
inline std::vector<std::vector<std::size_t>> overlap_components(
    std::span<const GeoBox> boxes, double iou_min) {
  const std::size_t n = boxes.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return boxes[a].min_lon < boxes[b].min_lon;
  });
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t a = order[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t b = order[j];
      if (boxes[b].min_lon > boxes[a].max_lon) break;
      if (iou(boxes[a], boxes[b]) >= iou_min) uf.unite(a, b);
    }
  }
  return uf.groups();
}

}  // namespace detail

/// Transitive IoU grouping: connected components of the graph with edges
/// iou >= iou_min. Returns index clusters, members ascending, clusters
/// ordered by smallest member.
inline std::vector<std::vector<std::size_t>> group_overlaps(
    std::span<const Detection> ds, double iou_min = 0.2) {
  std::vector<GeoBox> boxes;
  boxes.reserve(ds.size());
  for (const Detection& d : ds) boxes.push_back(d.box);
  return detail::overlap_components(boxes, iou_min);
}

/// Picks the group's most reliable member: majority class first (ties by
/// summed confidence, then lexicographic class name), then the highest
/// confidence within that class, then the smallest id.
inline const Detection& select_representative(
    std::span<const Detection> cluster) {
  if (cluster.empty()) {
    throw InputError("cannot select a representative of an empty cluster");
  }
  struct ClassStat {
    int count = 0;
    double conf_sum = 0;
  };
  std::map<std::string_view, ClassStat> stats;
  for (const Detection& d : cluster) {
    auto& s = stats[class_name(d.cls)];
    s.count += 1;
    s.conf_sum += d.confidence;
  }
  std::string_view best_class;
  ClassStat best{};
  for (const auto& [name, s] : stats) {
    // stats iterates in lexicographic name order, so on full ties the
    // first (lexicographically smallest) class wins.
    if (s.count > best.count ||
        (s.count == best.count && s.conf_sum > best.conf_sum)) {
      best_class = name;
      best = s;
    }
  }
  const Detection* chosen = nullptr;
  for (const Detection& d : cluster) {
    if (class_name(d.cls) != best_class) continue;
    if (!chosen || d.confidence > chosen->confidence ||
        (d.confidence == chosen->confidence && d.id < chosen->id)) {
      chosen = &d;
    }
  }
  return *chosen;
}

/// Drops wind turbines and anything whose box center falls inside the
/// exclusion layer (boundary counts as inside).
inline std::vector<Detection> apply_exclusion(std::vector<Detection> ds,
                                              const ExclusionLayer& layer) {
  std::erase_if(ds, [&](const Detection& d) {
    if (d.cls == DetClass::kWindTurbine) return true;
    return excluded(d.box.center(), layer);
  });
  return ds;
}

/// Full quarter-level postprocessing: confidence gate, backscatter gate,
/// transitive IoU dedup with representative selection, wind-farm exclusion.
/// Output detections are sorted by id.
inline QuarterInventory consolidate_quarter(std::vector<Detection> ds,
                                            Quarter quarter,
                                            const ConsolidateConfig& cfg = {},
                                            const ExclusionLayer& layer = {}) {
  for (const Detection& d : ds) {
    if (d.quarter != quarter) {
      throw InputError("detection " + d.id + " is from " + d.quarter.str() +
                       ", not " + quarter.str());
    }
  }
  ds = gate_detections(std::move(ds), cfg.conf_min, cfg.level_min);
  auto clusters = group_overlaps(ds, cfg.iou_min);
  std::vector<Detection> reps;
  reps.reserve(clusters.size());
  for (const auto& cluster : clusters) {
    std::vector<Detection> members;
    members.reserve(cluster.size());
    for (std::size_t idx : cluster) members.push_back(ds[idx]);
    reps.push_back(select_representative(members));
  }
  reps = apply_exclusion(std::move(reps), layer);
  std::sort(reps.begin(), reps.end(),
            [](const Detection& a, const Detection& b) { return a.id < b.id; });
  return QuarterInventory{quarter, std::move(reps)};
}

}  // namespace opd
