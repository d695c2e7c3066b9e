#include "cornerlab/symmetry.hpp"

#include "cornerlab/error.hpp"

namespace cornerlab {

Point apply(const Similarity& s, Point x, const GaussianRing& ring) {
  const GaussianElem y = ring.add(ring.mul(s.scale, ring.from_point(x)), ring.from_point(s.shift));
  return GaussianRing::to_point(y);
}

PointSet apply(const Similarity& s, const PointSet& set) {
  const GaussianRing ring(set.domain());
  if (!ring.is_invertible(s.scale)) throw Error(ErrorCode::NonInvertible, "similarity scale must be invertible");
  PointSet out(set.domain());
  set.for_each_index([&](std::size_t i) { out.insert(apply(s, set.domain().point(i), ring)); });
  return out;
}

std::vector<GaussianElem> invertible_elements(const GaussianRing& ring) {
  std::vector<GaussianElem> out;
  for (std::int64_t re = 0; re < ring.p(); ++re) {
    for (std::int64_t im = 0; im < ring.p(); ++im) {
      const GaussianElem g{re, im};
      if (ring.is_invertible(g)) out.push_back(g);
    }
  }
  return out;
}

std::vector<Point> scaling_orbit_representatives(const Domain& plane) {
  const GaussianRing ring(plane);
  const auto units = invertible_elements(ring);
  std::vector<bool> seen(plane.point_count(), false);
  seen[0] = true;
  std::vector<Point> reps;
  for (std::size_t idx = 1; idx < plane.point_count(); ++idx) {
    if (seen[idx]) continue;
    const Point q = plane.point(idx);
    reps.push_back(q);
    for (const auto& g : units) seen[plane.index(GaussianRing::to_point(ring.mul(g, ring.from_point(q))))] = true;
  }
  return reps;
}

PointSet canonical_form(const PointSet& set) {
  const Domain& d = set.domain();
  if (!d.is_plane()) throw Error(ErrorCode::WrongDomain, "canonical form is defined on the prime plane");
  const GaussianRing ring(d);
  PointSet best = set;
  const auto pts = set.points();
  PointSet image(d);
  for (const auto& g : invertible_elements(ring)) {
    for (std::size_t t = 0; t < d.point_count(); ++t) {
      const Similarity s{g, d.point(t)};
      image.clear();
      for (const Point& q : pts) image.insert(apply(s, q, ring));
      if (lex_less(image, best)) best = image;
    }
  }
  return best;
}

}  // namespace cornerlab
