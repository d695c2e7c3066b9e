#pragma once

#include <vector>

#include "cornerlab/domain.hpp"
#include "cornerlab/gaussian.hpp"
#include "cornerlab/point_set.hpp"

namespace cornerlab {

// x ↦ scale·x + shift on the prime plane viewed as F_p[i]; maps tilted corners and
// squares to tilted corners and squares when scale is invertible.
struct Similarity {
  GaussianElem scale{1, 0};
  Point shift{0, 0};
};

Point apply(const Similarity& s, Point x, const GaussianRing& ring);
PointSet apply(const Similarity& s, const PointSet& set);

// Invertible elements of F_p[i] (nonzero norm), ordered by (re, im).
std::vector<GaussianElem> invertible_elements(const GaussianRing& ring);

// One point per orbit of nonzero points under multiplication by invertible elements,
// each the orbit member with the smallest row-major index. A single point (1, 0) when
// p ≡ 3 (mod 4); three points when p ≡ 1 (mod 4) (the two isotropic lines split off).
std::vector<Point> scaling_orbit_representatives(const Domain& plane);

// Least image of the set under translations × invertible scalings, in lex_less order.
PointSet canonical_form(const PointSet& set);

}  // namespace cornerlab
