#pragma once

#include "../oracles.hpp"
#include "cornerlab/point_set.hpp"

namespace testing {

inline oracle::Members members(const cornerlab::PointSet& s) {
  oracle::Members m(s.domain().point_count());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = s.contains_index(i) ? 1 : 0;
  return m;
}

inline cornerlab::PointSet from_mask(const cornerlab::Domain& d, std::uint64_t mask) {
  cornerlab::PointSet s(d);
  for (std::size_t i = 0; i < d.point_count(); ++i)
    if ((mask >> i) & 1) s.insert_index(i);
  return s;
}

inline oracle::Pt op(cornerlab::Point p) { return {static_cast<long>(p.x), static_cast<long>(p.y)}; }

inline long modulus(const cornerlab::Domain& d) { return d.is_plane() ? static_cast<long>(d.size()) : 0; }

}  // namespace testing
