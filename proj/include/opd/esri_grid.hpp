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

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "opd/raster.hpp"

namespace opd {

namespace detail {

inline std::string ascii_lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Shortest decimal form that parses back to the same double.
inline std::string format_exact(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// 6 significant digits, the grid-value precision of the writer.
inline std::string format_g6(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v,
                           std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Parses an ESRI ASCII grid. Header keys are case-insensitive; the
/// NODATA_value entry is optional and defaults to -9999. Values are stored
/// north row first, matching the raster's row order.
inline Raster parse_esri_ascii(const std::string& text,
                               PixelKind kind = PixelKind::kDbFloat) {
  std::istringstream in(text);
  int ncols = -1, nrows = -1;
  double xll = 0, yll = 0, cellsize = 0;
  double nodata = kDefaultNoData;
  bool have_xll = false, have_yll = false, have_cell = false;

  // Header: key/value pairs until the first purely numeric token.
  std::string token;
  while (in >> token) {
    std::string key = detail::ascii_lower(token);
    if (key == "ncols") {
      in >> ncols;
    } else if (key == "nrows") {
      in >> nrows;
    } else if (key == "xllcorner") {
      in >> xll;
      have_xll = true;
    } else if (key == "yllcorner") {
      in >> yll;
      have_yll = true;
    } else if (key == "cellsize") {
      in >> cellsize;
      have_cell = true;
    } else if (key == "nodata_value") {
      in >> nodata;
    } else {
      break;  // first grid value
    }
  }
  if (ncols <= 0 || nrows <= 0 || !have_xll || !have_yll || !have_cell ||
      cellsize <= 0) {
    throw ParseError("incomplete ESRI ASCII header", 1);
  }

  GeoTransform t{xll, yll + nrows * cellsize, cellsize, cellsize};
  Raster r(ncols, nrows, t, kind, static_cast<float>(nodata),
           static_cast<float>(nodata));

  std::size_t n = r.values().size();
  std::size_t i = 0;
  // `token` already holds the first value.
  while (true) {
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
      throw ParseError("bad grid value '" + token + "'", 0);
    }
    if (i >= n) throw ParseError("more grid values than ncols*nrows", 0);
    r.values()[i++] = static_cast<float>(v);
    if (!(in >> token)) break;
  }
  if (i != n) {
    throw ParseError("grid has " + std::to_string(i) + " values, expected " +
                         std::to_string(n),
                     0);
  }
  return r;
}

/// Serializes a raster as an ESRI ASCII grid with 6-significant-digit
/// values. Requires square cells.
inline std::string format_esri_ascii(const Raster& r) {
  const GeoTransform& t = r.transform();
  if (std::abs(t.pixel_width - t.pixel_height) >
      1e-12 * std::max(t.pixel_width, t.pixel_height)) {
    throw ShapeError("ESRI ASCII requires square cells");
  }
  std::string out;
  out.reserve(r.values().size() * 8 + 160);
  out += "ncols " + std::to_string(r.width()) + "\n";
  out += "nrows " + std::to_string(r.height()) + "\n";
  out += "xllcorner " + detail::format_exact(t.origin_lon) + "\n";
  out += "yllcorner " +
         detail::format_exact(t.origin_lat - r.height() * t.pixel_height) +
         "\n";
  out += "cellsize " + detail::format_exact(t.pixel_width) + "\n";
  out += "NODATA_value " +
         detail::format_g6(static_cast<double>(r.nodata())) + "\n";
  for (int row = 0; row < r.height(); ++row) {
    for (int col = 0; col < r.width(); ++col) {
      if (col) out += ' ';
      out += detail::format_g6(static_cast<double>(r.at(col, row)));
    }
    out += '\n';
  }
  return out;
}

inline Raster read_esri_ascii(const std::filesystem::path& path,
                              PixelKind kind = PixelKind::kDbFloat) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open raster: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_esri_ascii(buf.str(), kind);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

inline void write_esri_ascii(const Raster& r,
                             const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write raster: " + path.string());
  out << format_esri_ascii(r);
  if (!out) throw IoError("short write: " + path.string());
}

}  // namespace opd
