#pragma once

#include <cstddef>
#include <utility>

namespace cornerlab {

// J₀ on [0, 200] (OutOfRange outside). Power series below 4, Miller's backward
// recurrence normalised by J₀ + 2ΣJ₂ₖ = 1 above.
double bessel_j0(double t);

// g(t) = 2J₀(t) + J₀(√2·t).
double g_function(double t);

struct MinimizationResult {
  double t_star = 0.0;
  double g_min = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
  double tolerance = 0.0;
  // Dense audit: g ≥ g_min − tolerance at every audit point of [0, T].
  std::size_t audit_points = 0;
  bool audit_passed = false;
  // Tail [T, 100]: max |g| on a grid; the minimum cannot move there if this is < 0.5.
  double tail_max_abs = 0.0;
  bool tail_ok = false;
};

inline constexpr double kReferenceGMin = -0.9683275949;

// Grid scan with step 0.01 on [0, T], golden-section refinement of every local basin.
MinimizationResult minimize_g(double search_limit = 60.0, double tol = 1e-10, std::size_t audit_points = 1'000'000);

// 1/4 + g_min/4.
double measure_lower_bound(double g_min);
double measure_lower_bound();

}  // namespace cornerlab
