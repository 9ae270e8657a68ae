#include "subplanck/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace subplanck {

void GridSpec::validate() const {
  for (double v : {x_min, x_max, p_min, p_max})
    if (!std::isfinite(v)) throw std::invalid_argument("grid bounds must be finite");
  if (nx < 2 || np < 2) throw std::invalid_argument("grid resolution must be >= 2 per axis");
  if (!(x_max > x_min) || !(p_max > p_min)) throw std::invalid_argument("grid bounds must satisfy min < max");
}

double ScalarGrid::integral() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * spec.dx() * spec.dp();
}

double ScalarGrid::integral_of_square() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return s * spec.dx() * spec.dp();
}

double ScalarGrid::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("SUBPLANCK_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ScalarGrid evaluate_grid(const GridSpec& spec, const CellFunction& f, unsigned threads) {
  spec.validate();
  ScalarGrid grid{spec, std::vector<double>(static_cast<std::size_t>(spec.nx) * spec.np)};
  if (threads == 0) threads = default_thread_count();
  threads = std::min<unsigned>(threads, static_cast<unsigned>(spec.np));

  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&](unsigned id) {
    try {
      for (int row = static_cast<int>(id); row < spec.np && !failed; row += static_cast<int>(threads)) {
        const double p = spec.p(row);
        for (int col = 0; col < spec.nx; ++col) grid.at(row, col) = f(spec.x(col), p);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      failed = true;
    }
  };

  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
  }
  if (error) std::rethrow_exception(error);
  return grid;
}

}  // namespace subplanck
