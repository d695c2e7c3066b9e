#include <doctest.h>

#include <set>

#include "cornerlab/configs.hpp"
#include "cornerlab/error.hpp"
#include "cornerlab/gaussian.hpp"
#include "cornerlab/rng.hpp"
#include "cornerlab/saturation.hpp"
#include "cornerlab/symmetry.hpp"
#include "helpers.hpp"

using namespace cornerlab;
using testing::members;
using testing::op;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

std::vector<oracle::Mat> to_mats(const std::vector<Matrix2>& ms) {
  std::vector<oracle::Mat> out;
  for (const auto& m : ms) out.push_back({static_cast<long>(m.a), static_cast<long>(m.b), static_cast<long>(m.c),
                                          static_cast<long>(m.d)});
  return out;
}

}  // namespace

TEST_CASE("isosceles right predicate: examples") {
  const Domain grid = Domain::integer_grid(10);
  CHECK(is_isosceles_right({0, 0}, {1, 0}, {0, 1}, grid));
  CHECK_FALSE(is_isosceles_right({0, 0}, {1, 0}, {2, 0}, grid));
  CHECK(is_isosceles_right({0, 0}, {1, 2}, {3, 1}, Domain::prime_plane(5)));
  CHECK(code_of([&] { is_isosceles_right({0, 0}, {0, 0}, {1, 0}, grid); }) == ErrorCode::DegenerateInput);
}

TEST_CASE("isosceles right predicate agrees with the oracle on every triple") {
  for (const Domain& d : {Domain::prime_plane(5), Domain::prime_plane(3), Domain::integer_grid(4)}) {
    const long p = testing::modulus(d);
    for (std::size_t i = 0; i < d.point_count(); ++i)
      for (std::size_t j = i + 1; j < d.point_count(); ++j)
        for (std::size_t k = j + 1; k < d.point_count(); ++k) {
          const Point a = d.point(i), b = d.point(j), c = d.point(k);
          REQUIRE(is_isosceles_right(a, b, c, d) == oracle::iso_right(op(a), op(b), op(c), p));
          REQUIRE(is_axis_corner(a, b, c, d) == oracle::axis_corner(op(a), op(b), op(c), p));
        }
  }
}

TEST_CASE("axis corner predicate: examples") {
  CHECK(is_axis_corner({2, 3}, {5, 3}, {2, 6}, Domain::integer_grid(7)));
  CHECK_FALSE(is_axis_corner({0, 0}, {1, 1}, {2, 2}, Domain::integer_grid(3)));
  CHECK(is_axis_corner({6, 6}, {1, 6}, {6, 1}, Domain::prime_plane(7)));
  CHECK(code_of([] { is_axis_corner({1, 1}, {1, 1}, {0, 0}, Domain::integer_grid(3)); }) == ErrorCode::DegenerateInput);
}

TEST_CASE("apex") {
  const Domain f5 = Domain::prime_plane(5);
  // (1+i)/2·(1,0) + (1−i)/2·(0,1) = (1,1); check γ = α + i(α − β) directly.
  const Point a = apex({1, 0}, {0, 1}, f5);
  CHECK(a == Point{1, 1});
  CHECK(f5.add(a, f5.rot90(f5.sub(a, {1, 0}))) == Point{0, 1});
  CHECK(code_of([&] { apex({2, 2}, {2, 2}, f5); }) == ErrorCode::DegenerateInput);
  CHECK(code_of([] { apex({0, 1}, {1, 0}, Domain::integer_grid(3)); }) == ErrorCode::WrongDomain);

  const Domain f11 = Domain::prime_plane(11);
  Rng rng(11);
  for (int t = 0; t < 1000; ++t) {
    const Point beta{static_cast<std::int64_t>(rng.below(11)), static_cast<std::int64_t>(rng.below(11))};
    Point gamma = beta;
    while (gamma == beta) gamma = {static_cast<std::int64_t>(rng.below(11)), static_cast<std::int64_t>(rng.below(11))};
    const Point alpha = apex(beta, gamma, f11);
    REQUIRE(is_isosceles_right(alpha, beta, gamma, f11));
    REQUIRE(f11.add(alpha, f11.rot90(f11.sub(alpha, beta))) == gamma);
  }
}

TEST_CASE("fourth vertex") {
  const Domain grid = Domain::integer_grid(4);
  CHECK(fourth_vertex({0, 0}, {1, 0}, {0, 1}, grid) == Point{1, 1});
  CHECK(fourth_vertex({0, 0}, {0, 1}, {1, 0}, grid) == Point{1, 1});
  CHECK(code_of([&] { fourth_vertex({0, 0}, {1, 0}, {2, 0}, grid); }) == ErrorCode::NotACorner);

  for (std::int64_t p : {7, 11, 19}) {
    const Domain d = Domain::prime_plane(p);
    const GaussianRing r(d);
    const auto h = inv_mod(2, p);
    Rng rng(static_cast<std::uint64_t>(p));
    for (int t = 0; t < 1000; ++t) {
      const Point alpha{static_cast<std::int64_t>(rng.below(p)), static_cast<std::int64_t>(rng.below(p))};
      Point y{0, 0};
      while (y == Point{0, 0}) y = {static_cast<std::int64_t>(rng.below(p)), static_cast<std::int64_t>(rng.below(p))};
      const Point beta = d.add(alpha, y);
      const Point gamma = d.sub(alpha, d.rot90(y));  // γ = α + i(α − β)
      const Point delta = fourth_vertex(alpha, beta, gamma, d);
      // −i((1+i)/2·β − (1−i)/2·γ)
      const auto rhs = r.mul(r.neg(r.i()), r.sub(r.mul(r.scale(h, r.elem(1, 1)), r.from_point(beta)),
                                                 r.mul(r.scale(h, r.elem(1, -1)), r.from_point(gamma))));
      REQUIRE(delta == GaussianRing::to_point(rhs));
      REQUIRE(delta == d.add(beta, d.rot90(d.sub(alpha, beta))));
      REQUIRE(oracle::is_square4({op(alpha), op(beta), op(gamma), op(delta)}, p));
      REQUIRE(is_square({alpha, beta, gamma, delta}, d));
      REQUIRE(apex(beta, gamma, d) == alpha);
    }
  }
}

TEST_CASE("corner completions: examples") {
  const Domain grid = Domain::integer_grid(9);
  // P = (0,0), Q = (1,0) moved to the interior.
  CHECK(corner_completions({4, 4}, {5, 4}, grid) == std::vector<Point>{{4, 3}, {4, 5}, {5, 3}, {5, 5}});
  const Domain f5 = Domain::prime_plane(5);
  CHECK(corner_completions({0, 0}, {1, 0}, f5) == std::vector<Point>{{0, 1}, {0, 4}, {1, 1}, {1, 4}, {3, 2}, {3, 3}});
  const auto six = corner_completions({4, 4}, {6, 4}, grid);
  CHECK(six.size() == 6);
  CHECK(std::count(six.begin(), six.end(), Point{5, 5}) == 1);
  CHECK(std::count(six.begin(), six.end(), Point{5, 3}) == 1);
}

TEST_CASE("corner completions agree with a full scan") {
  for (const Domain& d : {Domain::prime_plane(7), Domain::prime_plane(5), Domain::integer_grid(5)}) {
    const long p = testing::modulus(d);
    for (std::size_t i = 0; i < d.point_count(); ++i)
      for (std::size_t j = 0; j < d.point_count(); ++j) {
        if (i == j) continue;
        const auto got = corner_completions(d.point(i), d.point(j), d);
        REQUIRE(got.size() <= 6);
        std::vector<oracle::Pt> conv;
        for (const Point& q : got) conv.push_back(op(q));
        REQUIRE(conv == oracle::completions(op(d.point(i)), op(d.point(j)), p, d.size()));
      }
  }
}

TEST_CASE("counting: examples") {
  const Domain f3 = Domain::prime_plane(3);
  const PointSet full3 = PointSet::full(f3);
  CHECK(count_corners(full3) == 72);
  CHECK(count_corners(full3, true) == 81);
  CHECK(count_corners(PointSet(f3)) == 0);
  CHECK(count_corners(vertical_line_set(5)) == 0);
  CHECK(count_squares(full3) == 72);
  CHECK(count_squares(PointSet::from_points(f3, {{0, 0}, {1, 0}, {0, 1}})) == 0);
  // Unit square in a large grid: one ordered (x, y) per vertex.
  const Domain grid = Domain::integer_grid(8);
  const PointSet unit = PointSet::from_points(grid, {{3, 3}, {4, 3}, {3, 4}, {4, 4}});
  CHECK(count_squares(unit) == 4);
  CHECK(count_squares(unit) == oracle::pattern_count_grid(members(unit), 8, {oracle::kI, oracle::kRot, oracle::kM3}));
  for (std::int64_t p : {3, 5}) {
    const Domain d = Domain::prime_plane(p);
    const auto full = PointSet::full(d);
    const auto expected = static_cast<std::uint64_t>(p * p * (p * p - 1));
    CHECK(count_matrix_pattern(full, PatternSpec({Matrix2::identity()}, p)) == expected);
    CHECK(count_matrix_pattern(full, PatternSpec::corner(p)) == expected);
    CHECK(count_matrix_pattern(full, PatternSpec::square(p)) == expected);
    CHECK(count_matrix_pattern(full, PatternSpec({{2, 0, 0, 2}, {1, 1, 0, 1}, Matrix2::rotation()}, p)) == expected);
  }
}

TEST_CASE("pattern validation") {
  CHECK(code_of([] { PatternSpec({}, 5); }) == ErrorCode::InvalidPattern);
  CHECK(code_of([] { PatternSpec({{1, 2, 2, 4}}, 5); }) == ErrorCode::InvalidPattern);
  CHECK(code_of([] { PatternSpec({{1, 0, 0, 5}}, 5); }) == ErrorCode::InvalidPattern);
  CHECK(code_of([] { PatternSpec({Matrix2::identity(), {6, 0, 0, 1}}, 5); }) == ErrorCode::InvalidPattern);
  CHECK(code_of([] { PatternSpec({Matrix2::identity()}, 4); }) == ErrorCode::InvalidDomain);
}

TEST_CASE("counting agrees with brute force on every subset of F_3^2") {
  const Domain d = Domain::prime_plane(3);
  const auto corner = PatternSpec::corner(3);
  const auto square = PatternSpec::square(3);
  for (std::uint64_t m = 0; m < 512; ++m) {
    const PointSet s = testing::from_mask(d, m);
    const auto a = members(s);
    const auto c = oracle::pattern_count_plane(a, 3, {oracle::kI, oracle::kRot});
    const auto q = oracle::pattern_count_plane(a, 3, {oracle::kI, oracle::kRot, oracle::kM3});
    REQUIRE(count_corners(s) == c);
    REQUIRE(count_squares(s) == q);
    REQUIRE(count_matrix_pattern(s, corner) == c);
    REQUIRE(count_matrix_pattern(s, square) == q);
    REQUIRE(count_corners(s, true) == oracle::pattern_count_plane(a, 3, {oracle::kI, oracle::kRot}, true));
    // σ = 0 exactly when the set has no tilted corner.
    REQUIRE((c == 0) == oracle::corner_free(oracle::points(a, 3), 3));
  }
}

TEST_CASE("counting agrees with brute force on random sets") {
  Rng rng(2024);
  for (std::int64_t p : {5, 7, 11, 13}) {
    const Domain d = Domain::prime_plane(p);
    const PatternSpec other({{2, 1, 0, 1}, {0, 3, 1, 1}, Matrix2::identity()}, p);
    for (int t = 0; t < 8; ++t) {
      const PointSet s = random_subset(d, 1 + rng.below(3), 4, rng.next());
      const auto a = members(s);
      REQUIRE(count_corners(s) == oracle::pattern_count_plane(a, p, {oracle::kI, oracle::kRot}));
      REQUIRE(count_squares(s, false, 3) == oracle::pattern_count_plane(a, p, {oracle::kI, oracle::kRot, oracle::kM3}));
      REQUIRE(count_matrix_pattern(s, other) == oracle::pattern_count_plane(a, p, to_mats(other.matrices())));
    }
  }
  for (std::int64_t n : {1, 2, 5, 6}) {
    const Domain g = Domain::integer_grid(n);
    for (int t = 0; t < 6; ++t) {
      const PointSet s = random_subset(g, 2, 3, rng.next());
      const auto a = members(s);
      REQUIRE(count_corners(s) == oracle::pattern_count_grid(a, n, {oracle::kI, oracle::kRot}));
      REQUIRE(count_squares(s) == oracle::pattern_count_grid(a, n, {oracle::kI, oracle::kRot, oracle::kM3}));
    }
  }
}

TEST_CASE("counts are independent of thread count") {
  const Domain d = Domain::prime_plane(17);
  const PointSet s = random_subset(d, 1, 2, 5);
  const auto c1 = count_corners(s, false, 1);
  CHECK(count_corners(s, false, 4) == c1);
  CHECK(count_squares(s, false, 1) == count_squares(s, false, 3));
  CHECK(decompose_sigma(s, false, 1).total == decompose_sigma(s, false, 4).total);
}

TEST_CASE("corner count is invariant under similarities") {
  for (std::int64_t p : {7, 11}) {
    const Domain d = Domain::prime_plane(p);
    const GaussianRing ring(d);
    const auto units = invertible_elements(ring);
    Rng rng(static_cast<std::uint64_t>(p) * 31);
    const PointSet a = random_subset(d, 1, 2, rng.next());
    const auto base = count_corners(a);
    for (int t = 0; t < 100; ++t) {
      Similarity s;
      s.scale = units[rng.below(units.size())];
      s.shift = {static_cast<std::int64_t>(rng.below(p)), static_cast<std::int64_t>(rng.below(p))};
      const PointSet b = apply(s, a);
      REQUIRE(b.size() == a.size());
      REQUIRE(count_corners(b) == base);
      REQUIRE(count_squares(b) == count_squares(a));
    }
  }
}

TEST_CASE("uniform cover: examples") {
  const auto k2 = uniform_cover_check(PatternSpec::corner(3));
  CHECK(k2.surjective);
  CHECK(k2.uniform);
  CHECK(k2.fiber_size == 1);
  const auto k3 = uniform_cover_check(PatternSpec::square(3));
  CHECK(k3.surjective);
  CHECK(k3.uniform);
  CHECK(k3.fiber_size == 9);
  const auto k1 = uniform_cover_check(PatternSpec({Matrix2::identity()}, 5));
  CHECK(k1.uniform);
  CHECK(k1.fiber_size == 1);
  CHECK_FALSE(k1.surjective);
}

TEST_CASE("uniform cover: enumeration and rank agree") {
  for (const auto& spec : {PatternSpec::corner(5), PatternSpec::square(3), PatternSpec::corner(3),
                           PatternSpec({Matrix2::identity(), {2, 1, 1, 1}}, 5)}) {
    const auto e = uniform_cover_check(spec, CoverMethod::Enumerate);
    const auto r = uniform_cover_check(spec, CoverMethod::Rank);
    CHECK(e.enumerated);
    CHECK_FALSE(r.enumerated);
    CHECK(e.surjective == r.surjective);
    CHECK(e.image_size == r.image_size);
    CHECK(e.fiber_size == r.fiber_size);
    CHECK(e.uniform);
    CHECK(r.uniform);
  }
}

TEST_CASE("uniform cover: independent fiber tabulation") {
  // (z_1..z_k) ↦ (x, y) with x = Σ z_j, y = −Σ M_j^{-1} z_j, tabulated directly.
  struct Case {
    std::vector<oracle::Mat> ms;
    long p;
  };
  for (const Case& c : {Case{{oracle::kI, oracle::kRot}, 3}, Case{{oracle::kI, oracle::kRot}, 5},
                        Case{{oracle::kI, oracle::kRot, oracle::kM3}, 3}}) {
    const long p = c.p;
    std::vector<oracle::Mat> inv;
    for (const auto& m : c.ms) {
      const long det = oracle::md(m[0] * m[3] - m[1] * m[2], p);
      long di = 1;
      while (oracle::md(det * di, p) != 1) ++di;
      inv.push_back({oracle::md(m[3] * di, p), oracle::md(-m[1] * di, p), oracle::md(-m[2] * di, p),
                     oracle::md(m[0] * di, p)});
    }
    const std::size_t k = c.ms.size();
    std::vector<std::uint64_t> fibers(static_cast<std::size_t>(p * p * p * p), 0);
    std::vector<long> z(2 * k, 0);
    for (;;) {
      long x1 = 0, x2 = 0, y1 = 0, y2 = 0;
      for (std::size_t j = 0; j < k; ++j) {
        x1 += z[2 * j];
        x2 += z[2 * j + 1];
        y1 -= inv[j][0] * z[2 * j] + inv[j][1] * z[2 * j + 1];
        y2 -= inv[j][2] * z[2 * j] + inv[j][3] * z[2 * j + 1];
      }
      ++fibers[((oracle::md(x1, p) * p + oracle::md(x2, p)) * p + oracle::md(y1, p)) * p + oracle::md(y2, p)];
      std::size_t pos = 0;
      while (pos < z.size() && ++z[pos] == p) z[pos++] = 0;
      if (pos == z.size()) break;
    }
    const std::set<std::uint64_t> sizes(fibers.begin(), fibers.end());
    REQUIRE(sizes.size() == 1);
    const auto report = uniform_cover_check(PatternSpec([&] {
      std::vector<Matrix2> ms;
      for (const auto& m : c.ms) ms.push_back({m[0], m[1], m[2], m[3]});
      return ms;
    }(), p));
    CHECK(report.fiber_size == *sizes.begin());
    CHECK(report.surjective);
    // Measured: p^{2(k−2)}.
    std::uint64_t expected = 1;
    for (std::size_t j = 2; j < k; ++j) expected *= static_cast<std::uint64_t>(p * p);
    CHECK(*sizes.begin() == expected);
  }
}

TEST_CASE("trilinear sums") {
  const Domain d = Domain::prime_plane(5);
  const PointSet s = random_subset(d, 1, 2, 77);
  const auto ind = LatticeFunction::indicator(s);
  CHECK(sigma_trilinear(ind, ind, ind) == Rational(static_cast<std::int64_t>(count_corners(s))));
  const auto bal = LatticeFunction::balanced(s);
  CHECK(bal.sum() == 0);
  const auto c = LatticeFunction::constant(d, 2, 3);
  CHECK(sigma_trilinear(bal, c, c) == 0);
  CHECK(sigma_trilinear(bal, c, c, true) == 0);
  CHECK(sigma_trilinear(c, c, c, true) == Rational(8, 27) * 625);
}

TEST_CASE("sigma decomposition") {
  const Domain d = Domain::prime_plane(7);
  const auto full = decompose_sigma(PointSet::full(d));
  CHECK(full.main_term == full.total);
  CHECK(full.three_f_term == 0);
  for (const auto& t : full.two_f_terms) CHECK(t == 0);
  const auto empty = decompose_sigma(PointSet(d));
  CHECK(empty.total == 0);
  CHECK(empty.main_term == 0);

  Rng rng(99);
  for (std::int64_t p : {5, 7, 11}) {
    const Domain dp = Domain::prime_plane(p);
    for (int t = 0; t < 10; ++t) {
      const PointSet s = random_subset(dp, 1, 2, rng.next());
      for (bool degenerate : {false, true}) {
        const auto dec = decompose_sigma(s, degenerate);
        const auto brute = oracle::pattern_count_plane(members(s), p, {oracle::kI, oracle::kRot}, degenerate);
        REQUIRE(dec.total == Rational(static_cast<std::int64_t>(brute)));
        REQUIRE(dec.sigma == brute);
        REQUIRE(dec.single_f_terms_zero);
        REQUIRE(dec.total_matches_sigma);
        for (const auto& t : dec.single_f_terms) REQUIRE(t == 0);
        // The three two-f terms coincide: 0 with y = 0 included, −ρ·Σf² without.
        REQUIRE(dec.two_f_terms_equal);
        const Rational rho(static_cast<std::int64_t>(s.size()), p * p);
        Rational sum_sq = 0;
        const auto f = LatticeFunction::balanced(s);
        for (std::size_t i = 0; i < dp.point_count(); ++i) sum_sq += f.at(i) * f.at(i);
        REQUIRE(dec.two_f_terms[0] == (degenerate ? Rational(0) : Rational(-rho * sum_sq)));
        if (degenerate) {
          // Full sums: main term |R|³/p².
          const Rational r(static_cast<std::int64_t>(s.size()));
          REQUIRE(dec.main_term == r * r * r / (p * p));
        }
      }
    }
  }
}
