#include "cornerlab/domain.hpp"

#include "cornerlab/error.hpp"

namespace cornerlab {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

std::int64_t pow_mod(std::int64_t base, std::uint64_t exp, std::int64_t m) {
  std::int64_t result = 1 % m;
  base = mod(base, m);
  while (exp) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) throw Error(ErrorCode::NonInvertible, "0 has no inverse mod " + std::to_string(p));
  // Extended Euclid; works for any modulus coprime to a.
  std::int64_t old_r = a, r = p, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) {
    throw Error(ErrorCode::NonInvertible,
                std::to_string(a) + " is not invertible mod " + std::to_string(p));
  }
  return mod(old_s, p);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Domain Domain::prime_plane(std::int64_t p) {
  if (p == 2) throw Error(ErrorCode::InvalidDomain, "p = 2 is not supported (2 must be invertible)");
  if (!is_prime(p)) throw Error(ErrorCode::InvalidDomain, std::to_string(p) + " is not an odd prime");
  if (p > kMaxSize) throw Error(ErrorCode::InvalidDomain, "p too large");
  return Domain(DomainKind::PrimePlane, p);
}

Domain Domain::integer_grid(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidDomain, "grid size must be >= 1");
  if (n > kMaxSize) throw Error(ErrorCode::InvalidDomain, "grid too large");
  return Domain(DomainKind::IntegerGrid, n);
}

Point Domain::reduce(Point q) const {
  if (!is_plane()) return q;
  return {mod(q.x, size_), mod(q.y, size_)};
}

Point Domain::scale(std::int64_t k, Point a) const {
  if (is_plane()) return {mul_mod(k, a.x, size_), mul_mod(k, a.y, size_)};
  return {k * a.x, k * a.y};
}

std::int64_t Domain::norm(Point v) const {
  if (!is_plane()) throw Error(ErrorCode::WrongDomain, "norm is defined on the prime plane only");
  return mod(mul_mod(v.x, v.x, size_) + mul_mod(v.y, v.y, size_), size_);
}

std::string Domain::name() const { return is_plane() ? "prime_plane" : "integer_grid"; }

std::string Domain::describe() const {
  return is_plane() ? "F_" + std::to_string(size_) + "^2"
                    : "[" + std::to_string(size_) + "]^2";
}

}  // namespace cornerlab
