#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace subplanck {

/// Rectangular phase-space lattice. Both axes include their end points.
struct GridSpec {
  double x_min = -1.0;
  double x_max = 1.0;
  double p_min = -1.0;
  double p_max = 1.0;
  int nx = 2;
  int np = 2;

  /// Same bounds and resolution on both axes.
  static GridSpec square(double lo, double hi, int n) { return {lo, hi, lo, hi, n, n}; }

  /// Throws std::invalid_argument on non-finite bounds, inverted ranges or n < 2.
  void validate() const;

  double dx() const { return (x_max - x_min) / (nx - 1); }
  double dp() const { return (p_max - p_min) / (np - 1); }
  double x(int col) const { return col == nx - 1 ? x_max : x_min + col * dx(); }
  double p(int row) const { return row == np - 1 ? p_max : p_min + row * dp(); }
};

/// Real values over a GridSpec, row-major with `np` rows of `nx` columns;
/// row i holds momentum p(i), column j holds position x(j).
struct ScalarGrid {
  GridSpec spec;
  std::vector<double> values;

  double at(int row, int col) const { return values[static_cast<std::size_t>(row) * spec.nx + col]; }
  double& at(int row, int col) { return values[static_cast<std::size_t>(row) * spec.nx + col]; }

  /// sum(values) * dx * dp.
  double integral() const;
  /// sum(values^2) * dx * dp.
  double integral_of_square() const;
  double max_abs() const;
};

using CellFunction = std::function<double(double x, double p)>;

/// Number of worker threads used when a caller passes 0.
unsigned default_thread_count();

/// Evaluates `f` at every lattice point. Rows are dealt out to `threads`
/// workers in interleaved order; each cell depends only on (x, p) so the
/// result is bitwise identical for every thread count.
ScalarGrid evaluate_grid(const GridSpec& spec, const CellFunction& f, unsigned threads = 0);

}  // namespace subplanck
