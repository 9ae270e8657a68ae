#include "subplanck/grid_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace subplanck {

namespace {

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw IoError("malformed number '" + std::string(text) + "' in grid file");
  return v;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void append_be32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<unsigned char>((v >> shift) & 0xffu));
}

void append_chunk(std::vector<unsigned char>& out, const char* type, const std::vector<unsigned char>& data) {
  append_be32(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t type_pos = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  const uLong crc = crc32(0L, out.data() + type_pos, static_cast<uInt>(4 + data.size()));
  append_be32(out, static_cast<std::uint32_t>(crc));
}

std::array<unsigned char, 3> diverging_color(double t) {
  t = std::clamp(t, -1.0, 1.0);
  const auto fade = [](double u) { return static_cast<unsigned char>(std::lround(255.0 * (1.0 - u))); };
  if (t >= 0.0) return {255, fade(t), fade(t)};
  return {fade(-t), fade(-t), 255};
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  if (ec != std::errc{}) throw IoError("failed to format number");
  return std::string(buf.data(), ptr);
}

std::string grid_to_csv(const ScalarGrid& grid) {
  const GridSpec& g = grid.spec;
  std::string out;
  out.reserve(grid.values.size() * 24 + 128);
  out += format_double(g.x_min) + ',' + format_double(g.x_max) + ',' + format_double(g.p_min) + ',' +
         format_double(g.p_max) + ',' + std::to_string(g.nx) + ',' + std::to_string(g.np) + '\n';
  for (int row = 0; row < g.np; ++row) {
    for (int col = 0; col < g.nx; ++col) {
      if (col) out += ',';
      out += format_double(grid.at(row, col));
    }
    out += '\n';
  }
  return out;
}

ScalarGrid grid_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty grid CSV");
  const auto header = split_commas(line);
  if (header.size() != 6) throw IoError("grid CSV header needs 6 fields");
  ScalarGrid grid;
  grid.spec = {parse_double(header[0]), parse_double(header[1]), parse_double(header[2]), parse_double(header[3]),
               static_cast<int>(parse_double(header[4])), static_cast<int>(parse_double(header[5]))};
  grid.spec.validate();
  grid.values.reserve(static_cast<std::size_t>(grid.spec.nx) * grid.spec.np);
  for (int row = 0; row < grid.spec.np; ++row) {
    if (!std::getline(in, line)) throw IoError("grid CSV has too few rows");
    const auto cells = split_commas(line);
    if (cells.size() != static_cast<std::size_t>(grid.spec.nx)) throw IoError("grid CSV row has wrong width");
    for (auto c : cells) grid.values.push_back(parse_double(c));
  }
  return grid;
}

std::string grid_to_json(const ScalarGrid& grid) {
  nlohmann::json j;
  j["x_min"] = grid.spec.x_min;
  j["x_max"] = grid.spec.x_max;
  j["p_min"] = grid.spec.p_min;
  j["p_max"] = grid.spec.p_max;
  j["nx"] = grid.spec.nx;
  j["np"] = grid.spec.np;
  auto rows = nlohmann::json::array();
  for (int row = 0; row < grid.spec.np; ++row) {
    const auto begin = grid.values.begin() + static_cast<std::ptrdiff_t>(row) * grid.spec.nx;
    rows.push_back(std::vector<double>(begin, begin + grid.spec.nx));
  }
  j["values"] = std::move(rows);
  return j.dump() + '\n';
}

ScalarGrid grid_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ScalarGrid grid;
    grid.spec = {j.at("x_min").get<double>(), j.at("x_max").get<double>(), j.at("p_min").get<double>(),
                 j.at("p_max").get<double>(), j.at("nx").get<int>(),        j.at("np").get<int>()};
    grid.spec.validate();
    const auto& rows = j.at("values");
    if (rows.size() != static_cast<std::size_t>(grid.spec.np)) throw IoError("grid JSON has wrong row count");
    for (const auto& r : rows) {
      if (r.size() != static_cast<std::size_t>(grid.spec.nx)) throw IoError("grid JSON row has wrong width");
      for (const auto& v : r) grid.values.push_back(v.get<double>());
    }
    return grid;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed grid JSON: ") + e.what());
  }
}

void write_heatmap_png(const ScalarGrid& grid, const std::filesystem::path& path) {
  const int w = grid.spec.nx;
  const int h = grid.spec.np;
  const double limit = grid.max_abs();
  std::vector<unsigned char> raw;
  raw.reserve(static_cast<std::size_t>(h) * (3 * w + 1));
  for (int y = 0; y < h; ++y) {
    raw.push_back(0);  // filter: none
    const int row = h - 1 - y;
    for (int col = 0; col < w; ++col) {
      const auto rgb = diverging_color(limit > 0.0 ? grid.at(row, col) / limit : 0.0);
      raw.insert(raw.end(), rgb.begin(), rgb.end());
    }
  }
  uLongf packed_size = compressBound(static_cast<uLong>(raw.size()));
  std::vector<unsigned char> packed(packed_size);
  if (compress2(packed.data(), &packed_size, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
    throw IoError("PNG compression failed");
  packed.resize(packed_size);

  std::vector<unsigned char> png = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  std::vector<unsigned char> ihdr;
  append_be32(ihdr, static_cast<std::uint32_t>(w));
  append_be32(ihdr, static_cast<std::uint32_t>(h));
  ihdr.insert(ihdr.end(), {8, 2, 0, 0, 0});  // 8-bit RGB, deflate, no filter, no interlace
  append_chunk(png, "IHDR", ihdr);
  append_chunk(png, "IDAT", packed);
  append_chunk(png, "IEND", {});
  write_text_file(path, std::string(png.begin(), png.end()));
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace subplanck
