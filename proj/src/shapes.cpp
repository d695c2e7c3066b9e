#include "cornerlab/shapes.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <unordered_map>

#include "cornerlab/error.hpp"

namespace cornerlab {

std::string to_string(ConfigKind kind) { return kind == ConfigKind::Corner ? "corner" : "square"; }

std::string to_string(Orientation orientation) {
  return orientation == Orientation::Tilted ? "tilted" : "axis";
}

ConfigShape ConfigShape::corner(Orientation orientation) {
  ConfigShape s;
  s.roles_ = {Matrix2::zero(), Matrix2::identity(), Matrix2::rotation()};
  s.axis_only_ = orientation == Orientation::AxisParallel;
  return s;
}

ConfigShape ConfigShape::square(Orientation orientation) {
  ConfigShape s;
  s.roles_ = {Matrix2::zero(), Matrix2::identity(), Matrix2::rotation(), Matrix2::diagonal()};
  s.axis_only_ = orientation == Orientation::AxisParallel;
  return s;
}

ConfigShape ConfigShape::of(ConfigKind kind, Orientation orientation) {
  return kind == ConfigKind::Corner ? corner(orientation) : square(orientation);
}

ConfigShape ConfigShape::pattern(const PatternSpec& spec) {
  ConfigShape s;
  s.roles_.push_back(Matrix2::zero());
  for (const auto& m : spec.matrices()) s.roles_.push_back(m);
  s.modulus_ = spec.p();
  return s;
}

ConfigEngine::ConfigEngine(const Domain& domain, ConfigShape shape) : domain_(domain), shape_(std::move(shape)) {
  if (shape_.modulus() != 0 && (!domain_.is_plane() || domain_.size() != shape_.modulus())) {
    throw Error(ErrorCode::WrongDomain, "matrix patterns live on the prime plane of their modulus");
  }
  const std::int64_t n = domain_.size();
  for (const auto& m : shape_.roles()) {
    roles_.push_back(domain_.is_plane() ? Matrix2{mod(m.a, n), mod(m.b, n), mod(m.c, n), mod(m.d, n)} : m);
  }
  auto invertible = [&](const Matrix2& m) {
    return domain_.is_plane() ? mod(m.det(), n) != 0 : m.det() != 0;
  };
  const std::size_t arity = roles_.size();
  partners_.resize(arity);
  pair_mode_ = arity >= 3;
  for (std::size_t a = 0; a < arity; ++a) {
    for (std::size_t b = 0; b < arity && partners_[a].size() < 2; ++b) {
      if (a != b && invertible(roles_[a] - roles_[b])) partners_[a].push_back(b);
    }
    if (partners_[a].size() < 2) pair_mode_ = false;
  }
  const std::int64_t lo = domain_.is_plane() ? 0 : -(n - 1);
  for (std::int64_t y1 = lo; y1 < n; ++y1) {
    for (std::int64_t y2 = lo; y2 < n; ++y2) {
      if (valid_y({y1, y2})) ys_.push_back({y1, y2});
    }
  }
}

bool ConfigEngine::valid_y(Point y) const {
  y = domain_.reduce(y);
  if (y == Point{0, 0}) return false;
  return !shape_.axis_only() || y.y == 0;
}

std::optional<Point> ConfigEngine::solve(const Matrix2& diff, Point rhs) const {
  if (domain_.is_plane()) {
    const std::int64_t p = domain_.size();
    const std::int64_t det = mod(diff.det(), p);
    if (det == 0) return std::nullopt;
    const std::int64_t inv = inv_mod(det, p);
    const Point adj{diff.d * rhs.x - diff.b * rhs.y, -diff.c * rhs.x + diff.a * rhs.y};
    return Point{mul_mod(mod(adj.x, p), inv, p), mul_mod(mod(adj.y, p), inv, p)};
  }
  const std::int64_t det = diff.det();
  if (det == 0) return std::nullopt;
  const Point adj{diff.d * rhs.x - diff.b * rhs.y, -diff.c * rhs.x + diff.a * rhs.y};
  if (adj.x % det != 0 || adj.y % det != 0) return std::nullopt;
  return Point{adj.x / det, adj.y / det};
}

bool ConfigEngine::instance(Point x, Point y, std::vector<Point>& out) const {
  out.clear();
  for (const auto& m : roles_) {
    const Point off = m.apply(y);
    const Point q = domain_.reduce({x.x + off.x, x.y + off.y});
    if (!domain_.contains(q)) return false;
    out.push_back(q);
  }
  return true;
}

std::optional<std::vector<Point>> ConfigEngine::find_config(const PointSet& set) const {
  std::optional<std::vector<Point>> found;
  for (std::size_t pi : set.indices()) {
    visit_through(domain_.point(pi), set, [&](const std::vector<Point>& pts) {
      if (found) return;
      if (std::all_of(pts.begin(), pts.end(), [&](Point q) { return set.contains(q); })) found = pts;
    });
    if (found) break;
  }
  return found;
}

PointSet ConfigEngine::cover(const PointSet& set) const {
  PointSet out(domain_);
  for (std::size_t pi : set.indices()) extend_cover(set, domain_.point(pi), out);
  return out;
}

void ConfigEngine::extend_cover(const PointSet& set, Point added, PointSet& cover) const {
  visit_through(added, set, [&](const std::vector<Point>& pts) {
    const Point* missing = nullptr;
    for (const Point& q : pts) {
      if (set.contains(q)) continue;
      if (missing && *missing != q) return;
      missing = &q;
    }
    if (missing) cover.insert(*missing);
  });
}

std::vector<std::vector<Point>> ConfigEngine::completed_by(const PointSet& set, Point t) const {
  std::set<std::vector<Point>> seen;
  std::vector<std::vector<Point>> out;
  visit_through(t, set, [&](const std::vector<Point>& pts) {
    for (const Point& q : pts) {
      if (q != t && !set.contains(q)) return;
    }
    std::vector<Point> key = pts;
    std::sort(key.begin(), key.end());
    if (seen.insert(key).second) out.push_back(pts);
  });
  return out;
}

std::vector<std::vector<std::size_t>> ConfigEngine::all_instances() const {
  std::set<std::vector<std::size_t>> unique;
  std::vector<Point> pts;
  for (std::size_t xi = 0; xi < domain_.point_count(); ++xi) {
    const Point x = domain_.point(xi);
    for (const Point& y : ys_) {
      if (!instance(x, y, pts)) continue;
      std::vector<std::size_t> idx;
      for (const Point& q : pts) idx.push_back(domain_.index(q));
      std::sort(idx.begin(), idx.end());
      // Instances with coinciding points (possible only for degenerate patterns) are skipped.
      if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) continue;
      unique.insert(std::move(idx));
    }
  }
  return {unique.begin(), unique.end()};
}

MaskModel::MaskModel(const Domain& domain, const ConfigShape& shape) : domain_(domain) {
  points_ = domain.point_count();
  if (points_ > kMaxPoints) {
    throw Error(ErrorCode::InvalidArgument,
                "exact search supports at most 64 points, got " + std::to_string(points_));
  }
  arity_ = shape.arity();
  all_ = points_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << points_) - 1;
  by_point_.resize(points_);
  const ConfigEngine engine(domain, shape);
  std::unordered_map<std::uint64_t, std::size_t> units;
  for (const auto& inst : engine.all_instances()) {
    std::uint64_t mask = 0;
    for (std::size_t i : inst) mask |= std::uint64_t{1} << i;
    instances_.push_back(mask);
    for (std::size_t i : inst) {
      by_point_[i].push_back(mask);
      per_unit_ = std::max(per_unit_, ++units[mask & ~(std::uint64_t{1} << i)]);
    }
  }
}

bool MaskModel::config_free(std::uint64_t set) const {
  return std::none_of(instances_.begin(), instances_.end(), [&](std::uint64_t m) { return (m & ~set) == 0; });
}

std::uint64_t MaskModel::cover(std::uint64_t set) const {
  std::uint64_t out = 0;
  for (std::uint64_t m : instances_) {
    const std::uint64_t rest = m & ~set;
    if (std::has_single_bit(rest)) out |= rest;
  }
  return out;
}

std::uint64_t MaskModel::cover_added(std::uint64_t set_with, std::size_t added) const {
  std::uint64_t out = 0;
  for (std::uint64_t m : by_point_[added]) {
    const std::uint64_t rest = m & ~set_with;
    if (std::has_single_bit(rest)) out |= rest;
  }
  return out;
}

std::uint64_t MaskModel::to_mask(const PointSet& set) const {
  std::uint64_t m = 0;
  set.for_each_index([&](std::size_t i) { m |= std::uint64_t{1} << i; });
  return m;
}

PointSet MaskModel::to_set(std::uint64_t mask) const {
  PointSet s(domain_);
  while (mask) {
    s.insert_index(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return s;
}

}  // namespace cornerlab
