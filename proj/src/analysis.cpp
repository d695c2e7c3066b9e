#include "cornerlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cornerlab/error.hpp"

namespace cornerlab {

namespace {

double j0_series(double t) {
  const double q = -t * t / 4.0;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return sum;
}

double j0_miller(double t) {
  // Start far enough above t that J_N(t) is negligible.
  int start = static_cast<int>(1.2 * t) + 40;
  start += start % 2;
  double next = 0.0, cur = 1e-300, norm = 0.0, j0 = 0.0;
  for (int n = start; n >= 1; --n) {
    const double prev = 2.0 * n / t * cur - next;  // J_{n−1}
    next = cur;
    cur = prev;
    if ((n - 1) % 2 == 0 && n - 1 > 0) norm += 2.0 * cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
    }
  }
  j0 = cur;
  norm += j0;
  return j0 / norm;
}

}  // namespace

double bessel_j0(double t) {
  if (!(t >= 0.0 && t <= 200.0)) throw Error(ErrorCode::OutOfRange, "bessel_j0 needs t in [0, 200]");
  return t < 4.0 ? j0_series(t) : j0_miller(t);
}

double g_function(double t) { return 2.0 * bessel_j0(t) + bessel_j0(std::sqrt(2.0) * t); }

namespace {

// Golden-section search for a minimum of g on [a, b].
std::pair<double, double> golden(double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g_function(c), gd = g_function(d);
  while (b - a > tol) {
    if (gc <= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g_function(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g_function(d);
    }
  }
  const double t = gc <= gd ? c : d;
  return {t, std::min(gc, gd)};
}

}  // namespace

MinimizationResult minimize_g(double search_limit, double tol, std::size_t audit_points) {
  if (!(search_limit > 0.0 && search_limit <= 100.0)) throw Error(ErrorCode::OutOfRange, "search limit in (0, 100]");
  constexpr double kStep = 0.01;
  const auto steps = static_cast<std::size_t>(std::ceil(search_limit / kStep));
  std::vector<double> values(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) values[i] = g_function(std::min(search_limit, i * kStep));

  MinimizationResult out;
  out.tolerance = tol;
  out.g_min = values[0];
  out.t_star = 0.0;
  out.bracket = {0.0, 0.0};
  for (std::size_t i = 0; i <= steps; ++i) {
    const bool left = i == 0 || values[i] <= values[i - 1];
    const bool right = i == steps || values[i] <= values[i + 1];
    if (!left || !right) continue;
    const double lo = i == 0 ? 0.0 : (i - 1) * kStep;
    const double hi = std::min(search_limit, (i + 1) * kStep);
    const auto [t, g] = golden(lo, hi, tol);
    if (g < out.g_min) {
      out.g_min = g;
      out.t_star = t;
      out.bracket = {lo, hi};
    }
  }

  out.audit_points = audit_points;
  out.audit_passed = true;
  for (std::size_t i = 0; i < audit_points; ++i) {
    const double t = search_limit * static_cast<double>(i) / static_cast<double>(audit_points - 1);
    if (g_function(t) < out.g_min - tol) out.audit_passed = false;
  }

  constexpr double kTailEnd = 100.0;
  constexpr std::size_t kTailPoints = 100'000;
  for (std::size_t i = 0; i < kTailPoints && search_limit < kTailEnd; ++i) {
    const double t = search_limit + (kTailEnd - search_limit) * static_cast<double>(i) / (kTailPoints - 1);
    out.tail_max_abs = std::max(out.tail_max_abs, std::abs(g_function(t)));
  }
  out.tail_ok = out.tail_max_abs < 0.5;
  return out;
}

double measure_lower_bound(double g_min) { return 0.25 + 0.25 * g_min; }

double measure_lower_bound() { return measure_lower_bound(minimize_g().g_min); }

}  // namespace cornerlab
