#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cornerlab/configs.hpp"
#include "cornerlab/domain.hpp"
#include "cornerlab/point_set.hpp"

namespace cornerlab {

enum class ConfigKind { Corner, Square };
// Tilted = all similar copies (rotations allowed); AxisParallel = y restricted to (d, 0).
enum class Orientation { Tilted, AxisParallel };

std::string to_string(ConfigKind kind);
std::string to_string(Orientation orientation);

// Configuration template x + R_r y over roles r, with R_0 = 0 (the point x itself).
class ConfigShape {
 public:
  static ConfigShape corner(Orientation orientation = Orientation::Tilted);
  static ConfigShape square(Orientation orientation = Orientation::Tilted);
  static ConfigShape of(ConfigKind kind, Orientation orientation = Orientation::Tilted);
  // x, x + M₁y, …, x + M_k y.
  static ConfigShape pattern(const PatternSpec& spec);

  const std::vector<Matrix2>& roles() const { return roles_; }
  std::size_t arity() const { return roles_.size(); }
  bool axis_only() const { return axis_only_; }
  // Prime modulus of a PatternSpec shape; 0 for corner/square shapes.
  std::int64_t modulus() const { return modulus_; }

 private:
  std::vector<Matrix2> roles_;
  bool axis_only_ = false;
  std::int64_t modulus_ = 0;
};

// Configuration queries against a point set. Instances through a point are found
// from a partner point and the 2×2 solve (R_a − R_b) y = P − Q when every role has
// two partners with invertible differences; otherwise y is enumerated.
class ConfigEngine {
 public:
  ConfigEngine(const Domain& domain, ConfigShape shape);

  const Domain& domain() const { return domain_; }
  const ConfigShape& shape() const { return shape_; }

  // First instance fully inside the set (points listed by role), if any.
  std::optional<std::vector<Point>> find_config(const PointSet& set) const;
  // Points outside the set that complete an instance whose other points lie in the set.
  PointSet cover(const PointSet& set) const;
  // After `added` was inserted into the set, mark the points it newly helps cover.
  void extend_cover(const PointSet& set, Point added, PointSet& cover) const;
  // Instances through t (t in any role) with all other points in the set.
  std::vector<std::vector<Point>> completed_by(const PointSet& set, Point t) const;

  // Every instance in the domain as a sorted index list, without duplicates.
  std::vector<std::vector<std::size_t>> all_instances() const;

  // Visit instances through `p` in some role; pair mode only yields instances with a
  // partner-role point in `partners`. f(points) with points indexed by role.
  template <class F>
  void visit_through(Point p, const PointSet& partners, F&& f) const;

 private:
  bool instance(Point x, Point y, std::vector<Point>& out) const;
  bool valid_y(Point y) const;
  std::optional<Point> solve(const Matrix2& diff, Point rhs) const;

  Domain domain_;
  ConfigShape shape_;
  std::vector<Matrix2> roles_;  // reduced for the domain
  bool pair_mode_ = false;
  std::vector<std::vector<std::size_t>> partners_;  // per role
  std::vector<Point> ys_;                           // for enumeration mode
};

template <class F>
void ConfigEngine::visit_through(Point p, const PointSet& partners, F&& f) const {
  std::vector<Point> pts;
  const std::size_t arity = roles_.size();
  if (pair_mode_) {
    for (std::size_t a = 0; a < arity; ++a) {
      for (std::size_t b : partners_[a]) {
        const Matrix2 diff = roles_[a] - roles_[b];
        partners.for_each_index([&](std::size_t qi) {
          const Point q = domain_.point(qi);
          if (q == p) return;
          const auto y = solve(diff, {p.x - q.x, p.y - q.y});
          if (!y || !valid_y(*y)) return;
          const Point ay = domain_.reduce(roles_[a].apply(*y));
          const Point x = domain_.reduce({p.x - ay.x, p.y - ay.y});
          if (instance(x, *y, pts)) f(pts);
        });
      }
    }
  } else {
    for (std::size_t a = 0; a < arity; ++a) {
      for (const Point& y : ys_) {
        const Point ay = domain_.reduce(roles_[a].apply(y));
        const Point x = domain_.reduce({p.x - ay.x, p.y - ay.y});
        if (instance(x, y, pts)) f(pts);
      }
    }
  }
}

// Hypergraph view of a configuration shape on a domain of at most 64 points:
// each instance is a bit mask over point indices.
class MaskModel {
 public:
  MaskModel(const Domain& domain, const ConfigShape& shape);

  static constexpr std::size_t kMaxPoints = 64;

  const Domain& domain() const { return domain_; }
  std::size_t points() const { return points_; }
  std::uint64_t all() const { return all_; }
  std::size_t arity() const { return arity_; }
  const std::vector<std::uint64_t>& instances() const { return instances_; }
  const std::vector<std::uint64_t>& instances_of(std::size_t point) const { return by_point_[point]; }
  // Max number of instances sharing one (arity − 1)-subset: how many outside points
  // a single covering unit can complete.
  std::size_t max_completions_per_unit() const { return per_unit_; }

  bool config_free(std::uint64_t set) const;
  // Points outside `set` completing an instance with the rest in `set`.
  std::uint64_t cover(std::uint64_t set) const;
  // Incremental form: cover after inserting `added` into set_without.
  std::uint64_t cover_added(std::uint64_t set_with, std::size_t added) const;

  std::uint64_t to_mask(const PointSet& set) const;
  PointSet to_set(std::uint64_t mask) const;

 private:
  Domain domain_;
  std::size_t points_ = 0;
  std::size_t arity_ = 0;
  std::uint64_t all_ = 0;
  std::vector<std::uint64_t> instances_;
  std::vector<std::vector<std::uint64_t>> by_point_;
  std::size_t per_unit_ = 0;
};

}  // namespace cornerlab
