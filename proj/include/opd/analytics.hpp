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
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opd/enrich.hpp"
#include "opd/quarter.hpp"
#include "opd/tracklink.hpp"

namespace opd {

enum class PresenceMode { kFilled, kObserved };

inline const char* presence_mode_name(PresenceMode m) {
  return m == PresenceMode::kFilled ? "filled" : "observed";
}

inline PresenceMode parse_presence_mode(std::string_view s) {
  if (s == "filled") return PresenceMode::kFilled;
  if (s == "observed") return PresenceMode::kObserved;
  throw ConfigError("presence mode must be 'filled' or 'observed'");
}

enum class GroupBy { kRegion, kEez };

/// Per-quarter platform counts for one region or EEZ.
struct CountSeries {
  std::string key;
  std::vector<int> values;  // one entry per window quarter
};

namespace detail {

inline bool platform_present(const EnrichedPlatform& p, Quarter q,
                             PresenceMode mode) {
  if (mode == PresenceMode::kFilled) return presence(p.track, q);
  return std::binary_search(p.track.observed.begin(), p.track.observed.end(),
                            q);
}

}  // namespace detail

/// Quarterly count series grouped by region or EEZ. Platforms without the
/// grouping attribute (NONE) are omitted; series are keyed and sorted by
/// the group name.
inline std::vector<CountSeries> quarterly_counts(
    std::span<const EnrichedPlatform> fleet, GroupBy group_by,
    const StudyWindow& window = {},
    PresenceMode mode = PresenceMode::kFilled) {
  std::map<std::string, std::vector<int>> series;
  const int n = window.n_quarters();
  for (const EnrichedPlatform& p : fleet) {
    std::string key = group_by == GroupBy::kRegion
                          ? std::string(region_name(p.region))
                          : p.eez;
    if (key == "NONE") continue;
    auto& values = series[key];
    if (values.empty()) values.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      Quarter q = Quarter::from_index(window.first.index() + i);
      if (detail::platform_present(p, q, mode)) ++values[i];
    }
  }
  std::vector<CountSeries> out;
  out.reserve(series.size());
  for (auto& [key, values] : series) {
    out.push_back({key, std::move(values)});
  }
  return out;
}

/// Percentile by linear interpolation between closest ranks; p in [0,100].
inline double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw InputError("percentile of an empty sample");
  std::sort(values.begin(), values.end());
  if (values.size() == 1) return values[0];
  double rank = p / 100.0 * (values.size() - 1);
  double lo = std::floor(rank);
  std::size_t i = static_cast<std::size_t>(lo);
  if (i + 1 >= values.size()) return values.back();
  double frac = rank - lo;
  return values[i] + frac * (values[i + 1] - values[i]);
}

enum class Attribute { kCoastKm, kDepthM, kAreaHa };

inline const char* attribute_name(Attribute a) {
  switch (a) {
    case Attribute::kCoastKm: return "coast_km";
    case Attribute::kDepthM: return "depth_m";
    case Attribute::kAreaHa: return "area_ha";
  }
  return "unknown";
}

inline std::optional<double> attribute_value(const EnrichedPlatform& p,
                                             Attribute a) {
  switch (a) {
    case Attribute::kCoastKm: return p.coast_km;
    case Attribute::kDepthM: return p.depth_m;
    case Attribute::kAreaHa: return p.area_ha;
  }
  return std::nullopt;
}

/// Share definition for a distribution summary, e.g. "the share of
/// platforms no deeper than 100 m" is {kGreaterEqual, -100}.
struct ShareSpec {
  enum class Cmp { kGreaterEqual, kLess } cmp = Cmp::kLess;
  double threshold = 0;

  bool matches(double v) const {
    return cmp == Cmp::kGreaterEqual ? v >= threshold : v < threshold;
  }
  std::string describe() const {
    return (cmp == Cmp::kGreaterEqual ? ">=" : "<") +
           std::to_string(threshold);
  }
};

inline ShareSpec default_share(Attribute a) {
  switch (a) {
    case Attribute::kDepthM:
      return {ShareSpec::Cmp::kGreaterEqual, -100};  // no deeper than 100 m
    case Attribute::kAreaHa:
      return {ShareSpec::Cmp::kLess, 5};
    case Attribute::kCoastKm:
      return {ShareSpec::Cmp::kLess, 50};
  }
  return {};
}

struct SummaryStats {
  std::size_t count = 0;
  double mean = 0;
  double p10 = 0, p25 = 0, median = 0, p75 = 0, p90 = 0;
  double share = 0;  // fraction matching the share spec
};

struct DistributionSummary {
  Attribute attribute = Attribute::kCoastKm;
  ShareSpec share_spec;
  std::vector<std::pair<std::string, SummaryStats>> per_region;  // + "ALL"
};

inline SummaryStats summarize(const std::vector<double>& values,
                              const ShareSpec& share) {
  SummaryStats s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0;
  std::size_t hit = 0;
  for (double v : values) {
    sum += v;
    if (share.matches(v)) ++hit;
  }
  s.mean = sum / values.size();
  s.p10 = percentile(values, 10);
  s.p25 = percentile(values, 25);
  s.median = percentile(values, 50);
  s.p75 = percentile(values, 75);
  s.p90 = percentile(values, 90);
  s.share = static_cast<double>(hit) / values.size();
  return s;
}

/// Per-region distribution of one attribute, plus the pooled "ALL" row.
/// Throws when the attribute is missing on the entire fleet.
inline DistributionSummary distribution_summary(
    std::span<const EnrichedPlatform> fleet, Attribute attribute,
    std::optional<ShareSpec> share = std::nullopt) {
  DistributionSummary out;
  out.attribute = attribute;
  out.share_spec = share.value_or(default_share(attribute));
  std::map<std::string, std::vector<double>> groups;
  std::vector<double> all;
  for (const EnrichedPlatform& p : fleet) {
    if (auto v = attribute_value(p, attribute)) {
      groups[region_name(p.region)].push_back(*v);
      all.push_back(*v);
    }
  }
  if (all.empty()) {
    throw InputError(std::string("attribute ") + attribute_name(attribute) +
                     " missing on the whole fleet");
  }
  for (auto& [region, values] : groups) {
    out.per_region.emplace_back(region, summarize(values, out.share_spec));
  }
  out.per_region.emplace_back("ALL", summarize(all, out.share_spec));
  return out;
}

/// Fraction of platforms (with the attribute present) matching the spec.
inline double attribute_share(std::span<const EnrichedPlatform> fleet,
                              Attribute attribute, const ShareSpec& spec) {
  std::size_t n = 0, hit = 0;
  for (const EnrichedPlatform& p : fleet) {
    if (auto v = attribute_value(p, attribute)) {
      ++n;
      if (spec.matches(*v)) ++hit;
    }
  }
  if (n == 0) {
    throw InputError(std::string("attribute ") + attribute_name(attribute) +
                     " missing on the whole fleet");
  }
  return static_cast<double>(hit) / n;
}

struct LifespanBreakdown {
  std::array<std::size_t, 3> counts{};  // indexed by LifespanCategory
  std::array<double, 3> shares{};

  std::size_t total() const { return counts[0] + counts[1] + counts[2]; }
  double share(LifespanCategory c) const {
    return shares[static_cast<std::size_t>(c)];
  }
};

/// Category shares over the fleet, optionally restricted to one region.
inline LifespanBreakdown lifespan_breakdown(
    std::span<const EnrichedPlatform> fleet,
    std::optional<Region> region = std::nullopt,
    const StudyWindow& window = {}) {
  LifespanBreakdown out;
  for (const EnrichedPlatform& p : fleet) {
    if (region && p.region != *region) continue;
    auto ls = lifespan(p.track, window);
    ++out.counts[static_cast<std::size_t>(ls.category)];
  }
  std::size_t total = out.total();
  if (total > 0) {
    for (std::size_t i = 0; i < 3; ++i) {
      out.shares[i] = static_cast<double>(out.counts[i]) / total;
    }
  }
  return out;
}

}  // namespace opd
