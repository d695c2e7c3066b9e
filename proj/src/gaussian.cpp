#include "cornerlab/gaussian.hpp"

#include "cornerlab/error.hpp"

namespace cornerlab {

GaussianRing::GaussianRing(std::int64_t p) : p_(p) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorCode::InvalidDomain, "Gaussian ring needs an odd prime");
}

GaussianRing::GaussianRing(const Domain& plane) : p_(plane.size()) {
  if (!plane.is_plane()) throw Error(ErrorCode::WrongDomain, "Gaussian ring needs a prime plane");
}

GaussianElem GaussianRing::add(GaussianElem a, GaussianElem b) const {
  return {mod(a.re + b.re, p_), mod(a.im + b.im, p_)};
}

GaussianElem GaussianRing::sub(GaussianElem a, GaussianElem b) const {
  return {mod(a.re - b.re, p_), mod(a.im - b.im, p_)};
}

GaussianElem GaussianRing::neg(GaussianElem a) const { return {mod(-a.re, p_), mod(-a.im, p_)}; }

GaussianElem GaussianRing::mul(GaussianElem a, GaussianElem b) const {
  return {mod(mul_mod(a.re, b.re, p_) - mul_mod(a.im, b.im, p_), p_),
          mod(mul_mod(a.re, b.im, p_) + mul_mod(a.im, b.re, p_), p_)};
}

GaussianElem GaussianRing::scale(std::int64_t k, GaussianElem a) const {
  return {mul_mod(k, a.re, p_), mul_mod(k, a.im, p_)};
}

std::int64_t GaussianRing::norm(GaussianElem a) const {
  return mod(mul_mod(a.re, a.re, p_) + mul_mod(a.im, a.im, p_), p_);
}

GaussianElem GaussianRing::inv(GaussianElem a) const {
  const std::int64_t n = norm(a);
  if (n == 0) {
    throw Error(ErrorCode::NonInvertible, std::to_string(a.re) + "+" + std::to_string(a.im) +
                                              "i has norm 0 mod " + std::to_string(p_));
  }
  // (a + bi)⁻¹ = (a − bi) / (a² + b²)
  const std::int64_t n_inv = inv_mod(n, p_);
  return {mul_mod(a.re, n_inv, p_), mul_mod(mod(-a.im, p_), n_inv, p_)};
}

}  // namespace cornerlab
