#include "jt/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "jt/errors.hpp"

namespace jt {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw PreconditionError("malformed number in CSV: '" + text + "'");
  }
  return v;
}

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

void write_series_csv(const ObservableSeries& series, std::ostream& out) {
  out << 't';
  for (const auto& name : series.names()) out << ',' << name;
  out << '\n';
  for (std::size_t r = 0; r < series.size(); ++r) {
    out << format_double(series.t()[r]);
    for (std::size_t c = 0; c < series.names().size(); ++c) {
      out << ',' << format_double(series.column(c)[r]);
    }
    out << '\n';
  }
}

void write_series_csv(const ObservableSeries& series, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_series_csv(series, out);
}

ObservableSeries read_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw PreconditionError("series CSV is empty");
  auto header = split_csv(line);
  if (header.empty() || header.front() != "t") {
    throw PreconditionError("series CSV must start with a 't' column");
  }
  header.erase(header.begin());
  ObservableSeries series(header);
  std::vector<double> row(header.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size() + 1) throw PreconditionError("ragged series CSV row");
    for (std::size_t c = 0; c < header.size(); ++c) row[c] = parse_double(cells[c + 1]);
    series.append(parse_double(cells[0]), row);
  }
  return series;
}

ObservableSeries read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_series_csv(in);
}

void write_heatmap_csv(const Heatmap& map, std::ostream& out) {
  out << "y\\x";
  for (double x : map.x) out << ',' << format_double(x);
  out << '\n';
  for (std::size_t j = 0; j < map.y.size(); ++j) {
    out << format_double(map.y[j]);
    for (std::size_t i = 0; i < map.x.size(); ++i) out << ',' << format_double(map.at(i, j));
    out << '\n';
  }
}

Heatmap read_heatmap_csv(std::istream& in) {
  Heatmap map;
  std::string line;
  if (!std::getline(in, line)) throw PreconditionError("heatmap CSV is empty");
  const auto header = split_csv(line);
  for (std::size_t i = 1; i < header.size(); ++i) map.x.push_back(parse_double(header[i]));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != map.x.size() + 1) throw PreconditionError("ragged heatmap CSV row");
    map.y.push_back(parse_double(cells[0]));
    for (std::size_t i = 1; i < cells.size(); ++i) map.values.push_back(parse_double(cells[i]));
  }
  return map;
}

std::vector<std::uint8_t> pgm_pixels(const std::vector<double>& values, bool* all_black) {
  const double peak = values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
  std::vector<std::uint8_t> pixels(values.size(), 0);
  if (all_black) *all_black = !(peak > 0.0);
  if (!(peak > 0.0)) return pixels;
  for (std::size_t i = 0; i < values.size(); ++i) {
    pixels[i] = static_cast<std::uint8_t>(std::lround(255.0 * values[i] / peak));
  }
  return pixels;
}

void write_pgm(const std::vector<std::uint8_t>& pixels, std::size_t width, std::size_t height,
               std::ostream& out) {
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
}

std::string emit_heatmap(const Heatmap& map, const std::filesystem::path& stem) {
  if (map.values.size() != map.x.size() * map.y.size()) {
    throw PreconditionError("heatmap dimensions do not match its values");
  }
  for (double v : map.values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw PreconditionError("heatmap values must be finite and non-negative");
    }
  }
  {
    auto out = open_out(std::filesystem::path(stem).concat(".csv"));
    write_heatmap_csv(map, out);
  }
  bool black = false;
  const auto pixels = pgm_pixels(map.values, &black);
  auto out = open_out(std::filesystem::path(stem).concat(".pgm"), true);
  write_pgm(pixels, map.x.size(), map.y.size(), out);
  return black ? "heatmap " + stem.filename().string() + " has zero maximum; PGM is all black"
               : std::string();
}

void write_profile_csv(const std::vector<double>& coords, const std::vector<double>& values,
                       const std::string& coord_name, const std::string& value_name,
                       const std::filesystem::path& path) {
  auto out = open_out(path);
  out << coord_name << ',' << value_name << '\n';
  for (std::size_t i = 0; i < coords.size(); ++i) {
    out << format_double(coords[i]) << ',' << format_double(values[i]) << '\n';
  }
}

}  // namespace jt
