#include "cornerlab/verify.hpp"

#include <cmath>
#include <set>

#include "cornerlab/analysis.hpp"
#include "cornerlab/configs.hpp"
#include "cornerlab/error.hpp"
#include "cornerlab/extremal.hpp"
#include "cornerlab/gaussian.hpp"
#include "cornerlab/manifest.hpp"
#include "cornerlab/ramsey.hpp"
#include "cornerlab/rng.hpp"
#include "cornerlab/saturation.hpp"

namespace cornerlab {

namespace {

using nlohmann::json;

class Battery {
 public:
  void add(const std::string& name, bool passed, json measured, bool informational = false) {
    json check{{"name", name}, {"passed", passed}, {"measured", std::move(measured)}};
    if (informational) check["informational"] = true;
    if (!passed) all_passed_ = false;
    checks_.push_back(std::move(check));
  }

  VerifyReport finish() {
    VerifyReport report;
    report.checks = std::move(checks_);
    report.all_passed = all_passed_;
    report.digest = sha256_hex(report.checks.dump());
    return report;
  }

 private:
  json checks_ = json::array();
  bool all_passed_ = true;
};

// Plain triple loop over (x, y), independent of the counting engine.
std::uint64_t naive_count(const PointSet& set, bool square) {
  const Domain& d = set.domain();
  std::uint64_t count = 0;
  for (std::size_t xi = 0; xi < d.point_count(); ++xi) {
    const Point x = d.point(xi);
    if (!set.contains(x)) continue;
    for (std::size_t yi = 1; yi < d.point_count(); ++yi) {
      const Point y = d.point(yi);
      const Point a = d.add(x, y);
      const Point b = d.add(x, d.rot90(y));
      if (!set.contains(a) || !set.contains(b)) continue;
      if (!square || set.contains(d.add(a, d.rot90(y)))) ++count;
    }
  }
  return count;
}

std::string tag(const char* prefix, std::int64_t v) { return std::string(prefix) + std::to_string(v); }

void saturation_checks(Battery& b, std::int64_t p, std::uint64_t seed, int threads) {
  const Domain plane = Domain::prime_plane(p);
  const auto report = check_saturated(vertical_line_set(p), SaturationKind::Corner);
  b.add(tag("saturation.vertical_line.p=", p), report.is_config_free && report.is_saturated,
        {{"size", p}, {"config_free", report.is_config_free}, {"saturated", report.is_saturated}});

  const std::int64_t lb = corner_sat_lower_bound(p);
  b.add(tag("saturation.lower_bound.p=", p), lb <= p,
        {{"lower_bound", lb}, {"p_over_sqrt3", static_cast<double>(p) / std::sqrt(3.0)}});

  std::size_t max_completions = 0;
  for (std::size_t i = 0; i < plane.point_count(); ++i) {
    for (std::size_t j = i + 1; j < plane.point_count(); ++j) {
      max_completions = std::max(max_completions, corner_completions(plane.point(i), plane.point(j), plane).size());
    }
  }
  b.add(tag("saturation.six_completions.p=", p), max_completions <= 6, {{"max_completions", max_completions}});

  if (p == 3) {
    SearchOptions opts;
    opts.mode = SearchMode::BranchBound;
    opts.seed = seed;
    opts.threads = threads;
    const auto r = min_saturated_search(plane, opts);
    b.add("saturation.exact_min.p=3", r.best_size == 3 && r.status == SearchStatus::ProvedOptimal,
          {{"best_size", r.best_size}, {"status", to_string(r.status)}, {"witness", r.best_set.to_hex()}});
  }

  if (p % 4 == 3) {
    SearchOptions opts;
    opts.mode = SearchMode::Greedy;
    opts.kind = ConfigKind::Square;  // every outside point is a fourth vertex
    opts.budget = 4;
    opts.seed = seed;
    opts.threads = threads;
    const PointSet s = min_saturated_search(plane, opts).best_set;
    const auto kt = katz_tao_probe(s);
    std::set<std::size_t> fourth;
    for (const Point& beta : s.points()) {
      for (const Point& gamma : s.points()) {
        if (beta == gamma) continue;
        const Point alpha = apex(beta, gamma, plane);
        if (s.contains(alpha)) fourth.insert(plane.index(fourth_vertex(alpha, beta, gamma, plane)));
      }
    }
    const bool saturated = check_saturated(s, SaturationKind::Square).is_saturated;
    b.add(tag("katz_tao.p=", p),
          saturated && kt.sums_within_2S && kt.diffset_size == fourth.size() &&
              kt.diffset_size >= static_cast<std::size_t>(p * p) - s.size(),
          {{"set_size", kt.set_size},
           {"square_saturated", saturated},
           {"G_size", kt.G_size},
           {"sumset_size", kt.sumset_size},
           {"diffset_size", kt.diffset_size},
           {"fourth_vertex_recount", fourth.size()},
           {"covered", kt.covered},
           {"kt_rhs", kt.kt_rhs},
           {"torsion_free", kt.torsion_free}});
  }
}

void gaussian_checks(Battery& b, std::int64_t p, std::uint64_t seed) {
  const Domain plane = Domain::prime_plane(p);
  const GaussianRing ring(plane);
  const GaussianElem half_1pi = ring.scale(inv_mod(2, p), ring.elem(1, 1));
  const GaussianElem half_1mi = ring.scale(inv_mod(2, p), ring.elem(1, -1));
  const GaussianElem minus_i = ring.neg(ring.i());
  Rng rng(seed ^ static_cast<std::uint64_t>(p));
  constexpr int kTrials = 1000;
  int ok = 0;
  for (int t = 0; t < kTrials; ++t) {
    const Point alpha{static_cast<std::int64_t>(rng.below(p)), static_cast<std::int64_t>(rng.below(p))};
    Point y{0, 0};
    while (y == Point{0, 0}) y = {static_cast<std::int64_t>(rng.below(p)), static_cast<std::int64_t>(rng.below(p))};
    const Point beta = plane.add(alpha, y);
    const Point gamma = plane.sub(alpha, plane.rot90(y));  // γ = α + i(α − β)
    const GaussianElem expected = ring.mul(
        minus_i, ring.sub(ring.mul(half_1pi, ring.from_point(beta)), ring.mul(half_1mi, ring.from_point(gamma))));
    if (apex(beta, gamma, plane) == alpha &&
        fourth_vertex(alpha, beta, gamma, plane) == GaussianRing::to_point(expected)) {
      ++ok;
    }
  }
  b.add(tag("gaussian.identities.p=", p), ok == kTrials, {{"trials", kTrials}, {"held", ok}});
}

void counting_checks(Battery& b, std::int64_t p, std::uint64_t seed, int threads) {
  const Domain plane = Domain::prime_plane(p);
  constexpr int kSets = 4;
  int agree = 0;
  json counts = json::array();
  for (int s = 0; s < kSets; ++s) {
    const PointSet set = random_subset(plane, 1, 2, seed + 1000 * static_cast<std::uint64_t>(p) + s);
    const auto c = count_corners(set, false, threads);
    const auto q = count_squares(set, false, threads);
    const auto m = count_matrix_pattern(set, PatternSpec::corner(p), false, threads);
    if (c == naive_count(set, false) && q == naive_count(set, true) && m == c) ++agree;
    counts.push_back({{"corners", c}, {"squares", q}});
  }
  b.add(tag("configs.count_agreement.p=", p), agree == kSets, {{"sets", kSets}, {"counts", counts}});

  int exact = 0;
  json two_f = json::array();
  for (int s = 0; s < 2; ++s) {
    const PointSet set = random_subset(plane, 1, 2, seed + 2000 * static_cast<std::uint64_t>(p) + s);
    const auto d = decompose_sigma(set, false, threads);
    if (d.total_matches_sigma && d.single_f_terms_zero) ++exact;
    two_f.push_back({{"equal", d.two_f_terms_equal}, {"value", to_string(d.two_f_terms[0])}});
  }
  b.add(tag("configs.decompose_sigma.p=", p), exact == 2,
        {{"sets", 2},
         {"two_f_terms", two_f},
         {"main_term_convention", "sigma(rho,rho,rho) over y != 0; |R|^3/p^2 only under full (x,y) sums"}});
}

void ramsey_checks(Battery& b, std::int64_t p, std::uint64_t seed, int threads) {
  const Domain plane = Domain::prime_plane(p);
  const auto red = mono_corner_counts(Coloring::uniform(plane, 2, 0), kDefaultMonoConstant, threads);
  const auto full = static_cast<std::uint64_t>(p * p * (p * p - 1));
  b.add(tag("ramsey.all_red.p=", p), red.sigma_R == full && red.sigma_B == 0,
        {{"sigma_R", red.sigma_R}, {"sigma_B", red.sigma_B}});

  const Coloring c = Coloring::random(plane, 2, seed + static_cast<std::uint64_t>(p));
  const auto audit = mono_decomposition_audit(c, false, threads);
  b.add(tag("ramsey.decomposition.p=", p), audit.identity_holds && audit.balanced_sums_zero,
        {{"residual", to_string(audit.residual)}, {"main_terms", to_string(audit.main_terms)}});

  const auto batch = mono_corner_batch(p, 100, seed, kDefaultMonoConstant, threads);
  b.add(tag("ramsey.mono_bound.p=", p), true,
        {{"colorings", batch.colorings},
         {"min_total", batch.min_total},
         {"bound", batch.bound},
         {"C", kDefaultMonoConstant},
         {"margin", batch.margin},
         {"below_bound", batch.below_bound}},
        true);
}

void uniform_cover_checks(Battery& b) {
  struct Case {
    std::vector<Matrix2> ms;
    std::int64_t p;
  };
  const std::vector<Case> cases{{{Matrix2::identity(), Matrix2::rotation()}, 3},
                                {{Matrix2::identity(), Matrix2::rotation()}, 5},
                                {{Matrix2::identity(), Matrix2::rotation(), Matrix2::diagonal()}, 3}};
  for (const auto& c : cases) {
    const PatternSpec spec(c.ms, c.p);
    const auto r = uniform_cover_check(spec, CoverMethod::Enumerate);
    const auto expected = static_cast<std::uint64_t>(std::pow(c.p, 2 * (static_cast<int>(spec.k()) - 2)));
    b.add("configs.uniform_cover.k=" + std::to_string(spec.k()) + ".p=" + std::to_string(c.p),
          r.surjective && r.uniform && r.fiber_size == expected,
          {{"image_size", r.image_size}, {"fiber_size", r.fiber_size}, {"uniform", r.uniform}});
  }
}

void grid_checks(Battery& b, std::int64_t n, std::uint64_t seed, int threads) {
  const Domain grid = Domain::integer_grid(n);
  ExtremalOptions opts;
  opts.seed = seed;
  opts.threads = threads;
  opts.mode = grid.point_count() <= 25 ? ExtremalMode::Exact : ExtremalMode::Heuristic;
  if (opts.mode == ExtremalMode::Heuristic) opts.budget = 1000;
  const auto rec = max_config_free(grid, ExtremalTarget::corner(), opts);
  const bool free = is_corner_free(rec.example_set, Orientation::Tilted);
  b.add(tag("extremal.corner_free.n=", n), free && (opts.mode == ExtremalMode::Heuristic || rec.proved),
        {{"max_found", rec.max_size_found},
         {"proved", rec.proved},
         {"density", to_string(rec.density)},
         {"witness", rec.example_set.to_hex()}});

  if (n >= 2) {
    const auto found = find_mono_axis_corner(Coloring::uniform(grid, 1));
    b.add(tag("ramsey.axis_corner.n=", n), found && found->d == 1, {{"found", found.has_value()}});
  }
}

void analysis_checks(Battery& b) {
  const auto r = minimize_g();
  b.add("bessel.g_min", std::abs(r.g_min - kReferenceGMin) <= 1e-8,
        {{"g_min", r.g_min}, {"t_star", r.t_star}, {"reference", kReferenceGMin}});
  b.add("bessel.audit", r.audit_passed && r.tail_ok,
        {{"audit_points", r.audit_points}, {"tail_max_abs", r.tail_max_abs}});
  const double lb = measure_lower_bound(r.g_min);
  b.add("bessel.measure_lower_bound", lb >= 0.0079 && std::abs(lb - 0.0079181) <= 1e-6, {{"value", lb}});

  double worst = 0.0;
  constexpr double h = 1e-3;
  for (int k = 0; k < 1000; ++k) {
    const double t = 0.5 + 49.5 * k / 999.0;
    const double j = bessel_j0(t), jp = bessel_j0(t + h), jm = bessel_j0(t - h);
    const double residual = (jp - 2 * j + jm) / (h * h) + (jp - jm) / (2 * h) / t + j;
    worst = std::max(worst, std::abs(residual));
  }
  b.add("bessel.ode_residual", worst <= 1e-6, {{"max_residual", worst}});
}

}  // namespace

VerifyReport verify_claims(const VerifyOptions& options) {
  for (std::int64_t p : options.primes) {
    if (p < 3 || !is_prime(p)) throw Error(ErrorCode::InvalidArgument, "primes must be odd primes, got " + std::to_string(p));
  }
  for (std::int64_t n : options.grids) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "grid sizes must be positive, got " + std::to_string(n));
  }
  Battery b;
  for (std::int64_t p : options.primes) {
    saturation_checks(b, p, options.seed, options.threads);
    gaussian_checks(b, p, options.seed);
    counting_checks(b, p, options.seed, options.threads);
    ramsey_checks(b, p, options.seed, options.threads);
  }
  uniform_cover_checks(b);
  for (std::int64_t n : options.grids) grid_checks(b, n, options.seed, options.threads);
  analysis_checks(b);
  return b.finish();
}

}  // namespace cornerlab
