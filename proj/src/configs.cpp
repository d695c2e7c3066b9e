#include "cornerlab/configs.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "cornerlab/error.hpp"
#include "cornerlab/gaussian.hpp"
#include "cornerlab/parallel.hpp"

namespace cornerlab {

namespace {

Matrix2 reduce(const Matrix2& m, std::int64_t p) {
  return {mod(m.a, p), mod(m.b, p), mod(m.c, p), mod(m.d, p)};
}

Matrix2 inverse_mod(const Matrix2& m, std::int64_t p) {
  const std::int64_t det_inv = inv_mod(m.det(), p);
  return reduce({mul_mod(m.d, det_inv, p), mul_mod(-m.b, det_inv, p), mul_mod(-m.c, det_inv, p),
                 mul_mod(m.a, det_inv, p)},
                p);
}

void require_distinct(Point a, Point b, Point c) {
  if (a == b || b == c || a == c) throw Error(ErrorCode::DegenerateInput, "points must be pairwise distinct");
}

bool right_angle_at(Point v, Point u, Point w, const Domain& d) {
  const Point leg = d.sub(u, v);
  const Point other = d.sub(w, v);
  return other == d.rot90(leg) || other == d.neg(d.rot90(leg));
}

}  // namespace

PatternSpec::PatternSpec(std::vector<Matrix2> matrices, std::int64_t p) : p_(p) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorCode::InvalidDomain, "pattern modulus must be an odd prime");
  if (matrices.empty()) throw Error(ErrorCode::InvalidPattern, "pattern needs k >= 1 matrices");
  for (auto& m : matrices) {
    m = reduce(m, p);
    if (mod(m.det(), p) == 0) throw Error(ErrorCode::InvalidPattern, "singular matrix mod p");
  }
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    for (std::size_t j = i + 1; j < matrices.size(); ++j) {
      if (matrices[i] == matrices[j]) throw Error(ErrorCode::InvalidPattern, "duplicate matrix");
    }
  }
  matrices_ = std::move(matrices);
}

bool is_isosceles_right(Point a, Point b, Point c, const Domain& domain) {
  a = domain.reduce(a);
  b = domain.reduce(b);
  c = domain.reduce(c);
  require_distinct(a, b, c);
  return right_angle_at(a, b, c, domain) || right_angle_at(b, a, c, domain) ||
         right_angle_at(c, a, b, domain);
}

bool is_axis_corner(Point a, Point b, Point c, const Domain& domain) {
  std::array<Point, 3> pts{domain.reduce(a), domain.reduce(b), domain.reduce(c)};
  require_distinct(pts[0], pts[1], pts[2]);
  std::sort(pts.begin(), pts.end());
  do {
    const Point x = pts[0];
    const std::int64_t d = domain.sub(pts[1], x).x;
    if (d == 0 || pts[1] != domain.add(x, {d, 0})) continue;
    if (pts[2] == domain.add(x, {0, d})) return true;
  } while (std::next_permutation(pts.begin(), pts.end()));
  return false;
}

bool is_square(const std::array<Point, 4>& input, const Domain& domain) {
  std::array<Point, 4> pts;
  for (std::size_t i = 0; i < 4; ++i) pts[i] = domain.reduce(input[i]);
  std::sort(pts.begin(), pts.end());
  do {
    const Point v = domain.sub(pts[1], pts[0]);
    if (v == Point{0, 0}) return false;
    const Point w = domain.rot90(v);
    if (pts[2] == domain.add(pts[0], w) && pts[3] == domain.add(pts[1], w)) return true;
  } while (std::next_permutation(pts.begin(), pts.end()));
  return false;
}

Point apex(Point beta, Point gamma, const Domain& domain) {
  if (!domain.is_plane()) throw Error(ErrorCode::WrongDomain, "apex needs the prime plane");
  beta = domain.reduce(beta);
  gamma = domain.reduce(gamma);
  if (beta == gamma) throw Error(ErrorCode::DegenerateInput, "apex of a degenerate pair");
  const GaussianRing ring(domain);
  const std::int64_t half = inv_mod(2, ring.p());
  const GaussianElem plus = ring.scale(half, ring.elem(1, 1));
  const GaussianElem minus = ring.scale(half, ring.elem(1, -1));
  return GaussianRing::to_point(
      ring.add(ring.mul(plus, ring.from_point(beta)), ring.mul(minus, ring.from_point(gamma))));
}

Point fourth_vertex(Point alpha, Point beta, Point gamma, const Domain& domain) {
  alpha = domain.reduce(alpha);
  beta = domain.reduce(beta);
  gamma = domain.reduce(gamma);
  if (alpha == beta || !right_angle_at(alpha, beta, gamma, domain)) {
    throw Error(ErrorCode::NotACorner, "no right angle with equal legs at alpha");
  }
  return domain.sub(domain.add(beta, gamma), alpha);
}

std::vector<Point> corner_completions(Point p, Point q, const Domain& domain) {
  p = domain.reduce(p);
  q = domain.reduce(q);
  if (p == q) throw Error(ErrorCode::DegenerateInput, "completions of a degenerate pair");
  std::vector<Point> raw;
  const Point pq = domain.sub(q, p);
  const Point turn = domain.rot90(pq);
  // Right angle at P, then at Q.
  raw.push_back(domain.add(p, turn));
  raw.push_back(domain.sub(p, turn));
  raw.push_back(domain.add(q, turn));
  raw.push_back(domain.sub(q, turn));
  // Right angle at R on the hypotenuse PQ: R = (P + Q)/2 ± i(Q − P)/2.
  if (domain.is_plane()) {
    const std::int64_t half = inv_mod(2, domain.size());
    const Point mid = domain.scale(half, domain.add(p, q));
    const Point off = domain.scale(half, turn);
    raw.push_back(domain.add(mid, off));
    raw.push_back(domain.sub(mid, off));
  } else {
    // (P + Q) ± i(Q − P) has both coordinates even iff the four coordinates sum to an even number.
    const Point sum{p.x + q.x, p.y + q.y};
    if (mod(sum.x + sum.y, 2) == 0) {
      raw.push_back({(sum.x + turn.x) / 2, (sum.y + turn.y) / 2});
      raw.push_back({(sum.x - turn.x) / 2, (sum.y - turn.y) / 2});
    }
  }
  std::vector<Point> out;
  for (const Point& r : raw) {
    if (r == p || r == q || !domain.contains(r)) continue;
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Sum over x ∈ set and y of ∏_j set(x + M_j y), for the plane (mod p) or the grid
// (y over the Minkowski difference range, out-of-domain points count as 0).
std::uint64_t count_offsets(const PointSet& set, const std::vector<Matrix2>& matrices,
                            bool include_degenerate, int threads) {
  const Domain& domain = set.domain();
  const std::int64_t n = domain.size();
  const std::size_t k = matrices.size();
  // Offsets M_j y for every y, stored per y.
  std::vector<Point> offsets;
  std::vector<Point> ys;
  const std::int64_t lo = domain.is_plane() ? 0 : -(n - 1);
  for (std::int64_t y1 = lo; y1 < n; ++y1) {
    for (std::int64_t y2 = lo; y2 < n; ++y2) {
      if (!include_degenerate && y1 == 0 && y2 == 0) continue;
      ys.push_back({y1, y2});
      for (const Matrix2& m : matrices) offsets.push_back(domain.reduce(m.apply({y1, y2})));
    }
  }
  const bool plane = domain.is_plane();
  return parallel_sum<std::uint64_t>(domain.point_count(), resolve_threads(threads),
                                     [&](std::size_t begin, std::size_t end) {
    std::uint64_t total = 0;
    for (std::size_t xi = begin; xi < end; ++xi) {
      if (!set.contains_index(xi)) continue;
      const Point x = domain.point(xi);
      for (std::size_t yi = 0; yi < ys.size(); ++yi) {
        bool all = true;
        for (std::size_t j = 0; j < k && all; ++j) {
          const Point off = offsets[yi * k + j];
          Point q{x.x + off.x, x.y + off.y};
          if (plane) {
            if (q.x >= n) q.x -= n;
            if (q.y >= n) q.y -= n;
          }
          all = set.contains(q);
        }
        total += all ? 1 : 0;
      }
    }
    return total;
  });
}

}  // namespace

std::uint64_t count_corners(const PointSet& set, bool include_degenerate, int threads) {
  return count_offsets(set, {Matrix2::identity(), Matrix2::rotation()}, include_degenerate, threads);
}

std::uint64_t count_squares(const PointSet& set, bool include_degenerate, int threads) {
  return count_offsets(set, {Matrix2::identity(), Matrix2::rotation(), Matrix2::diagonal()},
                       include_degenerate, threads);
}

std::uint64_t count_matrix_pattern(const PointSet& set, const PatternSpec& spec, bool include_degenerate,
                                   int threads) {
  if (!set.domain().is_plane() || set.domain().size() != spec.p()) {
    throw Error(ErrorCode::WrongDomain, "matrix patterns are counted on the prime plane only");
  }
  return count_offsets(set, spec.matrices(), include_degenerate, threads);
}

namespace {

std::size_t rank_mod(std::vector<std::vector<std::int64_t>> rows, std::int64_t p) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const std::int64_t inv = inv_mod(rows[rank][c], p);
    for (auto& v : rows[rank]) v = mul_mod(v, inv, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const std::int64_t f = rows[r][c];
      for (std::size_t cc = 0; cc < cols; ++cc) rows[r][cc] = mod(rows[r][cc] - mul_mod(f, rows[rank][cc], p), p);
    }
    ++rank;
  }
  return rank;
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

UniformCoverReport uniform_cover_check(const PatternSpec& spec, CoverMethod method) {
  const std::int64_t p = spec.p();
  const std::size_t k = spec.k();
  std::vector<Matrix2> inverses;
  for (const auto& m : spec.matrices()) inverses.push_back(inverse_mod(m, p));

  const std::uint64_t domain_size = ipow(static_cast<std::uint64_t>(p), 2 * k);
  const std::uint64_t target_size = ipow(static_cast<std::uint64_t>(p), 4);
  constexpr std::uint64_t kEnumerationLimit = 1ULL << 24;
  bool enumerate = method == CoverMethod::Enumerate ||
                   (method == CoverMethod::Auto && domain_size <= kEnumerationLimit);
  UniformCoverReport report;
  if (enumerate) {
    if (domain_size > (1ULL << 30)) throw Error(ErrorCode::InvalidArgument, "enumeration too large");
    // (x, y) determine the configuration (x, x + M_j y) since M_1 is invertible, so
    // fibers of z ↦ configuration equal fibers of z ↦ (x, y).
    std::vector<std::uint32_t> hits(target_size, 0);
    std::vector<std::int64_t> z(2 * k, 0);
    for (std::uint64_t code = 0; code < domain_size; ++code) {
      std::uint64_t c = code;
      for (auto& v : z) {
        v = static_cast<std::int64_t>(c % static_cast<std::uint64_t>(p));
        c /= static_cast<std::uint64_t>(p);
      }
      std::int64_t x1 = 0, x2 = 0, y1 = 0, y2 = 0;
      for (std::size_t j = 0; j < k; ++j) {
        const Point zj{z[2 * j], z[2 * j + 1]};
        x1 += zj.x;
        x2 += zj.y;
        const Point w = inverses[j].apply(zj);
        y1 -= w.x;
        y2 -= w.y;
      }
      const std::uint64_t idx = ((static_cast<std::uint64_t>(mod(x1, p)) * p + mod(x2, p)) * p + mod(y1, p)) * p +
                                static_cast<std::uint64_t>(mod(y2, p));
      ++hits[idx];
    }
    report.enumerated = true;
    for (std::uint32_t h : hits) {
      if (h == 0) continue;
      ++report.image_size;
      if (report.fiber_size == 0) report.fiber_size = h;
    }
    report.uniform = report.image_size > 0 &&
                     std::all_of(hits.begin(), hits.end(), [&](std::uint32_t h) {
                       return h == 0 || h == report.fiber_size;
                     });
  } else {
    // Rows: x₁, x₂, y₁, y₂ as linear forms in the 2k coordinates of z.
    std::vector<std::vector<std::int64_t>> rows(4, std::vector<std::int64_t>(2 * k, 0));
    for (std::size_t j = 0; j < k; ++j) {
      rows[0][2 * j] = 1;
      rows[1][2 * j + 1] = 1;
      const Matrix2& inv = inverses[j];
      rows[2][2 * j] = mod(-inv.a, p);
      rows[2][2 * j + 1] = mod(-inv.b, p);
      rows[3][2 * j] = mod(-inv.c, p);
      rows[3][2 * j + 1] = mod(-inv.d, p);
    }
    const std::size_t rank = rank_mod(rows, p);
    report.image_size = ipow(static_cast<std::uint64_t>(p), rank);
    report.fiber_size = ipow(static_cast<std::uint64_t>(p), 2 * k - rank);
    report.uniform = true;  // fibers of a linear map are cosets of its kernel
  }
  report.surjective = report.image_size == target_size;
  return report;
}

LatticeFunction LatticeFunction::indicator(const PointSet& set) {
  LatticeFunction f{set.domain(), std::vector<std::int64_t>(set.domain().point_count(), 0), 1};
  set.for_each_index([&](std::size_t i) { f.numerators[i] = 1; });
  return f;
}

LatticeFunction LatticeFunction::constant(const Domain& domain, std::int64_t numerator, std::int64_t denominator) {
  if (denominator <= 0) throw Error(ErrorCode::InvalidArgument, "denominator must be positive");
  return {domain, std::vector<std::int64_t>(domain.point_count(), numerator), denominator};
}

LatticeFunction LatticeFunction::balanced(const PointSet& set) {
  const auto total = static_cast<std::int64_t>(set.domain().point_count());
  const auto size = static_cast<std::int64_t>(set.size());
  LatticeFunction f{set.domain(), std::vector<std::int64_t>(set.domain().point_count(), -size), total};
  set.for_each_index([&](std::size_t i) { f.numerators[i] = total - size; });
  return f;
}

Rational LatticeFunction::sum() const {
  boost::multiprecision::cpp_int s = 0;
  for (std::int64_t v : numerators) s += v;
  return Rational(s, denominator);
}

namespace {

boost::multiprecision::cpp_int to_cpp_int(__int128 v) {
  const bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  boost::multiprecision::cpp_int out = static_cast<std::uint64_t>(u >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(u);
  return negative ? -out : out;
}

}  // namespace

Rational sigma_trilinear(const LatticeFunction& f, const LatticeFunction& g, const LatticeFunction& h,
                         bool include_degenerate, int threads) {
  const Domain& domain = f.domain;
  if (!domain.is_plane() || !(g.domain == domain) || !(h.domain == domain)) {
    throw Error(ErrorCode::WrongDomain, "trilinear sums need functions on one prime plane");
  }
  const std::int64_t p = domain.size();
  const __int128 sum = parallel_sum<__int128>(domain.point_count(), resolve_threads(threads),
                                              [&](std::size_t begin, std::size_t end) {
    __int128 acc = 0;
    for (std::size_t xi = begin; xi < end; ++xi) {
      const std::int64_t fx = f.numerators[xi];
      if (fx == 0) continue;
      const Point x = domain.point(xi);
      for (std::int64_t y1 = 0; y1 < p; ++y1) {
        for (std::int64_t y2 = 0; y2 < p; ++y2) {
          if (!include_degenerate && y1 == 0 && y2 == 0) continue;
          const Point u{(x.x + y1) % p, (x.y + y2) % p};
          const Point v{(x.x - y2 + p) % p, (x.y + y1) % p};
          acc += static_cast<__int128>(fx) * g.numerators[domain.index(u)] * h.numerators[domain.index(v)];
        }
      }
    }
    return acc;
  });
  const boost::multiprecision::cpp_int den =
      boost::multiprecision::cpp_int(f.denominator) * g.denominator * h.denominator;
  return Rational(to_cpp_int(sum), den);
}

SigmaDecomposition decompose_sigma(const PointSet& set, bool include_degenerate, int threads) {
  const Domain& domain = set.domain();
  if (!domain.is_plane()) throw Error(ErrorCode::WrongDomain, "decomposition needs the prime plane");
  const auto total_points = static_cast<std::int64_t>(domain.point_count());
  const LatticeFunction rho = LatticeFunction::constant(domain, static_cast<std::int64_t>(set.size()), total_points);
  const LatticeFunction f = LatticeFunction::balanced(set);
  auto s = [&](const LatticeFunction& a, const LatticeFunction& b, const LatticeFunction& c) {
    return sigma_trilinear(a, b, c, include_degenerate, threads);
  };

  SigmaDecomposition out;
  out.include_degenerate = include_degenerate;
  out.main_term = s(rho, rho, rho);
  out.single_f_terms = {s(f, rho, rho), s(rho, f, rho), s(rho, rho, f)};
  out.two_f_terms = {s(rho, f, f), s(f, rho, f), s(f, f, rho)};
  out.three_f_term = s(f, f, f);
  out.total = out.main_term + out.three_f_term;
  for (const auto& t : out.single_f_terms) out.total += t;
  for (const auto& t : out.two_f_terms) out.total += t;
  out.sigma = count_corners(set, include_degenerate, threads);
  out.single_f_terms_zero = std::all_of(out.single_f_terms.begin(), out.single_f_terms.end(),
                                        [](const Rational& t) { return t == 0; });
  out.total_matches_sigma = out.total == Rational(out.sigma);
  out.two_f_terms_equal = out.two_f_terms[0] == out.two_f_terms[1] && out.two_f_terms[1] == out.two_f_terms[2];
  return out;
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace cornerlab
