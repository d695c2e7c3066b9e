#pragma once

#include <cstdint>

#include "cornerlab/domain.hpp"

namespace cornerlab {

// Element re + im·i of F_p[x]/(x² + 1).
struct GaussianElem {
  std::int64_t re = 0;
  std::int64_t im = 0;

  friend constexpr bool operator==(GaussianElem, GaussianElem) = default;
};

// Arithmetic in F_p[i]. A field when p ≡ 3 (mod 4); for p ≡ 1 (mod 4) it has
// zero divisors and inv() reports NonInvertible for elements of norm 0.
class GaussianRing {
 public:
  explicit GaussianRing(std::int64_t p);
  explicit GaussianRing(const Domain& plane);

  std::int64_t p() const { return p_; }

  GaussianElem elem(std::int64_t re, std::int64_t im) const { return {mod(re, p_), mod(im, p_)}; }
  GaussianElem one() const { return {1 % p_, 0}; }
  GaussianElem i() const { return {0, 1}; }
  GaussianElem from_point(Point q) const { return elem(q.x, q.y); }
  static Point to_point(GaussianElem a) { return {a.re, a.im}; }

  GaussianElem add(GaussianElem a, GaussianElem b) const;
  GaussianElem sub(GaussianElem a, GaussianElem b) const;
  GaussianElem neg(GaussianElem a) const;
  GaussianElem mul(GaussianElem a, GaussianElem b) const;
  GaussianElem scale(std::int64_t k, GaussianElem a) const;
  std::int64_t norm(GaussianElem a) const;
  bool is_invertible(GaussianElem a) const { return norm(a) != 0; }
  GaussianElem inv(GaussianElem a) const;
  GaussianElem div(GaussianElem a, GaussianElem b) const { return mul(a, inv(b)); }

 private:
  std::int64_t p_;
};

}  // namespace cornerlab
