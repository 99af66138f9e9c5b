#pragma once

// File formats:
//  - series CSV: header naming the channels with `t` first, one row per
//    record, values printed with 17 significant digits (round-trips exactly).
//  - heatmap CSV: first row is a corner label followed by the x coordinates,
//    then one row per y value: the y coordinate followed by the values.
//  - heatmap PGM: binary P5, maxval 255, values scaled to the array maximum,
//    rows in array order.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "jt/series.hpp"

namespace jt {

struct Heatmap {
  std::vector<double> x;       ///< column coordinates
  std::vector<double> y;       ///< row coordinates
  std::vector<double> values;  ///< row-major, values[j * x.size() + i]

  double at(std::size_t i, std::size_t j) const { return values[j * x.size() + i]; }
};

std::string format_double(double v);

void write_series_csv(const ObservableSeries& series, std::ostream& out);
void write_series_csv(const ObservableSeries& series, const std::filesystem::path& path);
ObservableSeries read_series_csv(std::istream& in);
ObservableSeries read_series_csv(const std::filesystem::path& path);

void write_heatmap_csv(const Heatmap& map, std::ostream& out);
Heatmap read_heatmap_csv(std::istream& in);

/// 8-bit pixels scaled so the maximum maps to 255. An all-zero array gives
/// all-black pixels and sets `*all_black` when provided.
std::vector<std::uint8_t> pgm_pixels(const std::vector<double>& values, bool* all_black = nullptr);
void write_pgm(const std::vector<std::uint8_t>& pixels, std::size_t width, std::size_t height,
               std::ostream& out);

/// Writes `<stem>.csv` and `<stem>.pgm`; returns a warning text or "".
/// Throws PreconditionError for negative or non-finite entries.
std::string emit_heatmap(const Heatmap& map, const std::filesystem::path& stem);

/// Marginal distribution as a two-column CSV (coordinate, value).
void write_profile_csv(const std::vector<double>& coords, const std::vector<double>& values,
                       const std::string& coord_name, const std::string& value_name,
                       const std::filesystem::path& path);

}  // namespace jt
