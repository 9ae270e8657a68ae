#include <cmath>
#include <numbers>
#include <stdexcept>

#include "subplanck/sensitivity.hpp"

namespace subplanck {

namespace {

// sum_k (-1)^k (x^2/4)^k / (k!)^2; the largest term at x = 12 is ~4e3, so the
// extended-precision accumulator keeps the cancellation error near 1e-15.
double j0_series(double x) {
  const long double q = -0.25L * x * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) && std::fabs(term) < 1e-22L) break;
  }
  return static_cast<double>(sum);
}

// Backward recurrence J_{n-1} = (2n/x) J_n - J_{n+1} from a large even order,
// normalized with J_0 + 2 sum_k J_{2k} = 1.
double j0_miller(double x) {
  const int start = 2 * (static_cast<int>(x / 2.0) + 40);
  long double next = 0.0L;  // J_{n+1}
  long double cur = 1e-30L;  // J_n
  long double norm = 0.0L;
  for (int n = start; n > 0; --n) {
    const long double prev = (2.0L * n / x) * cur - next;
    next = cur;
    cur = prev;
    if ((n - 1) % 2 == 0 && n - 1 > 0) norm += 2.0L * cur;
    if (std::fabs(cur) > 1e300L) {
      cur *= 1e-300L;
      next *= 1e-300L;
      norm *= 1e-300L;
    }
  }
  norm += cur;
  return static_cast<double>(cur / norm);
}

// Hankel expansion sqrt(2/(pi x)) [P cos(x - pi/4) - Q sin(x - pi/4)].
double j0_asymptotic(double x) {
  const long double z = 8.0L * x;
  long double term = 1.0L;
  long double p = 1.0L;
  long double q = 0.0L;
  long double last = 1.0L;
  for (int k = 1; k < 200; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    term *= -(odd * odd) / (static_cast<long double>(k) * z);
    if (std::fabs(term) > last) break;  // asymptotic series started to diverge
    last = std::fabs(term);
    // k odd feeds Q with signs +,-,+...; k even feeds P with signs -,+,-...
    const int m = k / 2;
    if (k % 2 == 1)
      q += (m % 2 == 0 ? 1.0L : -1.0L) * term;
    else
      p += (m % 2 == 1 ? -1.0L : 1.0L) * term;
    if (last < 1e-21L) break;
  }
  const long double chi = static_cast<long double>(x) - std::numbers::pi_v<long double> / 4.0L;
  const long double amp = std::sqrt(2.0L / (std::numbers::pi_v<long double> * x));
  return static_cast<double>(amp * (p * std::cos(chi) - q * std::sin(chi)));
}

}  // namespace

double bessel_j0(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("bessel_j0 needs a finite argument");
  x = std::fabs(x);
  if (x < 12.0) return j0_series(x);
  if (x < 60.0) return j0_miller(x);
  return j0_asymptotic(x);
}

}  // namespace subplanck
