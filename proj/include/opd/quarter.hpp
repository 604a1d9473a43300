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

#include <compare>
#include <string>
#include <string_view>

#include "opd/errors.hpp"

namespace opd {

/// Calendar quarter, e.g. 2019Q3. Ordered chronologically; `index()` is the
/// zero-based offset from 2017Q1, so 2017Q1..2025Q1 spans indices 0..32.
struct Quarter {
  int year = 2017;
  int q = 1;  // 1..4

  static constexpr int kEpochYear = 2017;

  constexpr int index() const noexcept {
    return (year - kEpochYear) * 4 + (q - 1);
  }

  static constexpr Quarter from_index(int idx) noexcept {
    int y = kEpochYear + (idx >= 0 ? idx / 4 : (idx - 3) / 4);
    int r = idx - (y - kEpochYear) * 4;
    return Quarter{y, r + 1};
  }

  constexpr bool valid() const noexcept { return q >= 1 && q <= 4; }

  constexpr Quarter next() const noexcept { return from_index(index() + 1); }

  auto operator<=>(const Quarter&) const = default;

  std::string str() const {
    return std::to_string(year) + "Q" + std::to_string(q);
  }

  /// Parses the "YYYYQN" form used everywhere in the product files.
  static Quarter parse(std::string_view s) {
    if (s.size() < 6 || s.size() > 7) throw InputError(bad(s));
    std::size_t qpos = s.find('Q');
    if (qpos == std::string_view::npos) qpos = s.find('q');
    if (qpos != 4) throw InputError(bad(s));
    int year = 0, q = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      char c = s[i];
      if (c < '0' || c > '9') throw InputError(bad(s));
      year = year * 10 + (c - '0');
    }
    for (std::size_t i = 5; i < s.size(); ++i) {
      char c = s[i];
      if (c < '0' || c > '9') throw InputError(bad(s));
      q = q * 10 + (c - '0');
    }
    Quarter out{year, q};
    if (!out.valid()) throw InputError(bad(s));
    return out;
  }

 private:
  static std::string bad(std::string_view s) {
    return "not a quarter (expected YYYYQN): '" + std::string(s) + "'";
  }
};

/// Closed interval of quarters under study. Defaults to the 33-quarter
/// window 2017Q1..2025Q1.
struct StudyWindow {
  Quarter first{2017, 1};
  Quarter last{2025, 1};

  constexpr int n_quarters() const noexcept {
    return last.index() - first.index() + 1;
  }
  constexpr bool contains(Quarter q) const noexcept {
    return first <= q && q <= last;
  }
};

}  // namespace opd
