#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "subplanck/grid.hpp"

namespace subplanck {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CSV layout: one header line "x_min,x_max,p_min,p_max,nx,np" holding the
/// values, then np lines of nx comma-separated values (row i at p(i)).
/// Numbers use 17 significant digits so the file reads back bit-exactly.
std::string grid_to_csv(const ScalarGrid& grid);
ScalarGrid grid_from_csv(const std::string& text);

/// JSON object {"x_min", "x_max", "p_min", "p_max", "nx", "np", "values": [[...], ...]}.
std::string grid_to_json(const ScalarGrid& grid);
ScalarGrid grid_from_json(const std::string& text);

/// 17 significant digits, general notation.
std::string format_double(double v);

/// Heatmap PNG with a blue-white-red map symmetric about zero, limits +-max|v|.
/// Row p_max is drawn at the top.
void write_heatmap_png(const ScalarGrid& grid, const std::filesystem::path& path);

/// Writes `contents` to `path`, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace subplanck
