#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>

namespace cornerlab {

enum class DomainKind { PrimePlane, IntegerGrid };

// A point of the universe, or a (possibly signed) difference vector.
struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr bool operator==(Point, Point) = default;
  friend constexpr auto operator<=>(Point, Point) = default;
};

std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t pow_mod(std::int64_t base, std::uint64_t exp, std::int64_t m);
// Throws NonInvertible when a ≡ 0.
std::int64_t inv_mod(std::int64_t a, std::int64_t p);
bool is_prime(std::int64_t n);

// Universe of points: the plane F_p × F_p (odd prime p) or the grid [n] × [n].
// Points are indexed row-major with the x coordinate as the row: index = x·size + y.
class Domain {
 public:
  static constexpr std::int64_t kMaxSize = 1 << 20;

  static Domain prime_plane(std::int64_t p);
  static Domain integer_grid(std::int64_t n);

  DomainKind kind() const { return kind_; }
  bool is_plane() const { return kind_ == DomainKind::PrimePlane; }
  std::int64_t size() const { return size_; }
  // Residue of p mod 4; 0 for grids.
  int p_mod_4() const { return is_plane() ? static_cast<int>(size_ % 4) : 0; }
  std::size_t point_count() const { return static_cast<std::size_t>(size_ * size_); }

  // Plane: coordinates already reduced into [0, p). Grid: inside [0, n)².
  bool contains(Point q) const {
    return q.x >= 0 && q.y >= 0 && q.x < size_ && q.y < size_;
  }
  // Plane: reduce mod p. Grid: identity (signed arithmetic, domain checked separately).
  Point reduce(Point q) const;

  std::size_t index(Point q) const { return static_cast<std::size_t>(q.x * size_ + q.y); }
  Point point(std::size_t idx) const {
    return {static_cast<std::int64_t>(idx) / size_, static_cast<std::int64_t>(idx) % size_};
  }

  Point add(Point a, Point b) const { return reduce({a.x + b.x, a.y + b.y}); }
  Point sub(Point a, Point b) const { return reduce({a.x - b.x, a.y - b.y}); }
  Point neg(Point a) const { return reduce({-a.x, -a.y}); }
  Point scale(std::int64_t k, Point a) const;
  // 90° counter-clockwise rotation (y1, y2) ↦ (−y2, y1).
  Point rot90(Point v) const { return reduce({-v.y, v.x}); }
  // v1² + v2² mod p; throws WrongDomain on grids.
  std::int64_t norm(Point v) const;

  std::string name() const;  // "prime_plane" / "integer_grid"
  std::string describe() const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  Domain(DomainKind kind, std::int64_t size) : kind_(kind), size_(size) {}

  DomainKind kind_;
  std::int64_t size_;
};

inline Point rot90(Point v, const Domain& domain) { return domain.rot90(v); }
inline std::int64_t norm(Point v, const Domain& domain) { return domain.norm(v); }

}  // namespace cornerlab
