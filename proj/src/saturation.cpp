#include "cornerlab/saturation.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <set>
#include <stdexcept>

#include "cornerlab/configs.hpp"
#include "cornerlab/error.hpp"
#include "cornerlab/gaussian.hpp"
#include "cornerlab/parallel.hpp"
#include "cornerlab/rng.hpp"
#include "cornerlab/symmetry.hpp"
#include "search_driver.hpp"

namespace cornerlab {

std::string to_string(SaturationKind kind) {
  switch (kind) {
    case SaturationKind::Corner: return "corner";
    case SaturationKind::Square: return "square";
    case SaturationKind::SquareCover: return "square_cover";
  }
  return "unknown";
}

std::string to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::Exact: return "exact";
    case SearchMode::BranchBound: return "branch_bound";
    case SearchMode::Greedy: return "greedy";
  }
  return "unknown";
}

std::string to_string(SearchStatus status) {
  return status == SearchStatus::ProvedOptimal ? "ProvedOptimal" : "BestFound";
}

bool is_corner_free(const PointSet& set, Orientation orientation) {
  return !ConfigEngine(set.domain(), ConfigShape::corner(orientation)).find_config(set);
}

bool is_square_free(const PointSet& set, Orientation orientation) {
  return !ConfigEngine(set.domain(), ConfigShape::square(orientation)).find_config(set);
}

SaturationReport check_saturated(const PointSet& set, SaturationKind kind, Orientation orientation) {
  const ConfigShape shape =
      kind == SaturationKind::Corner ? ConfigShape::corner(orientation) : ConfigShape::square(orientation);
  const ConfigEngine engine(set.domain(), shape);
  SaturationReport report;
  if (kind != SaturationKind::SquareCover) {
    report.witness_config = engine.find_config(set);
    if (report.witness_config) return report;
  }
  report.is_config_free = true;
  const PointSet covered = engine.cover(set);
  for (std::size_t i = 0; i < set.domain().point_count(); ++i) {
    if (!set.contains_index(i) && !covered.contains_index(i)) {
      report.witness_uncovered = set.domain().point(i);
      return report;
    }
  }
  report.is_saturated = true;
  return report;
}

PointSet vertical_line_set(std::int64_t p) {
  const Domain plane = Domain::prime_plane(p);
  PointSet s(plane);
  for (std::int64_t i = 0; i < p; ++i) s.insert({0, i});
  return s;
}

std::int64_t corner_sat_lower_bound(std::int64_t p) {
  if (p < 1) throw Error(ErrorCode::InvalidArgument, "p must be positive");
  const __int128 total = static_cast<__int128>(p) * p;
  std::int64_t m = 0;
  while (total - m > static_cast<__int128>(3) * m * (m - 1)) ++m;
  return m;
}

double square_sat_lower_bound(std::int64_t p) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorCode::InvalidDomain, "p must be an odd prime");
  if (p % 4 != 3) throw Error(ErrorCode::WrongResidue, "the square-saturation bound needs p = 3 mod 4");
  const auto x = static_cast<double>(p);
  return std::pow(x, 12.0 / 11.0) - std::pow(x, 3.0 / 5.0);
}

namespace {

constexpr std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct Incumbent {
  std::mutex mutex;
  std::atomic<std::size_t> size{SIZE_MAX};
  std::uint64_t mask = 0;

  void reset(std::size_t limit) {
    size = limit;
    mask = 0;
  }

  void offer(std::uint64_t candidate) {
    const auto n = static_cast<std::size_t>(std::popcount(candidate));
    if (n >= size.load()) return;
    std::lock_guard lock(mutex);
    if (n < size.load()) {
      mask = candidate;
      size = n;
    }
  }
};

SearchResult greedy_search(const Domain& domain, const SearchOptions& options) {
  const std::uint64_t restarts = options.budget ? options.budget : 16;
  const ConfigEngine engine(domain, ConfigShape::of(options.kind, options.orientation));
  std::vector<PointSet> results(restarts, PointSet(domain));
  const Rng base(options.seed);
  parallel_tasks(restarts, resolve_threads(options.threads), [&](std::size_t r) {
    Rng rng = base.split(r);
    std::vector<std::size_t> order(domain.point_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(std::span<std::size_t>(order));
    PointSet set(domain);
    PointSet covered(domain);
    for (std::size_t idx : order) {
      if (covered.contains_index(idx)) continue;
      set.insert_index(idx);
      engine.extend_cover(set, domain.point(idx), covered);
    }
    results[r] = std::move(set);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].size() < results[best].size() ||
        (results[r].size() == results[best].size() && lex_less(results[r], results[best]))) {
      best = r;
    }
  }
  SearchResult out{results[best]};
  out.best_size = out.best_set.size();
  out.status = SearchStatus::BestFound;
  out.nodes_explored = restarts;
  return out;
}

SearchResult exact_sweep(const Domain& domain, const SearchOptions& options) {
  if (domain.point_count() > 25) {
    throw Error(ErrorCode::InvalidArgument, "exact sweep is limited to 25 points; use branch-and-bound");
  }
  const MaskModel model(domain, ConfigShape::of(options.kind, options.orientation));
  const std::size_t n = model.points();
  std::uint64_t checked = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    // Gosper's hack: all k-subsets in increasing numeric order.
    std::uint64_t set = k == 0 ? 0 : bit(k) - 1;
    while (set <= model.all()) {
      ++checked;
      if (model.config_free(set) && (set | model.cover(set)) == model.all()) {
        SearchResult out{model.to_set(set)};
        out.best_size = k;
        out.status = SearchStatus::ProvedOptimal;
        out.nodes_explored = checked;
        return out;
      }
      if (k == 0) break;
      const std::uint64_t c = set & (~set + 1);
      const std::uint64_t r = set + c;
      set = (((r ^ set) >> 2) / c) | r;
    }
  }
  throw std::logic_error("every domain has a saturated set");
}

SearchResult branch_bound(const Domain& domain, const SearchOptions& options, const Checkpoint* resume) {
  const ConfigShape shape = ConfigShape::of(options.kind, options.orientation);
  const MaskModel model(domain, shape);
  const std::uint64_t unit = model.arity() - 1;
  const std::uint64_t cap = model.max_completions_per_unit();
  const std::uint64_t all = model.all();

  std::vector<SearchNode> roots;
  if (options.use_symmetry && domain.is_plane() && model.arity() >= 3) {
    // A saturated set has at least `unit` ≥ 2 points: translate one to the origin and
    // scale another onto its orbit representative.
    for (const Point& r : scaling_orbit_representatives(domain)) roots.push_back({bit(0) | bit(domain.index(r)), 0});
  } else {
    roots.push_back({0, 0});
  }

  Incumbent best;
  std::vector<SearchNode> tasks;
  std::uint64_t nodes_start = 0;
  if (resume) {
    if (resume->best) best.offer(*resume->best);
    tasks = resume->frontier;
    nodes_start = resume->nodes_explored;
  } else {
    SearchOptions greedy = options;
    greedy.mode = SearchMode::Greedy;
    greedy.budget = 8;
    best.offer(model.to_mask(greedy_search(domain, greedy).best_set));
    tasks = roots;
  }

  auto process = [&](const SearchNode& node, std::vector<SearchNode>& children) {
    const std::uint64_t covered = model.cover(node.in);
    const std::uint64_t open_out = node.out & ~covered;
    const std::uint64_t free = all & ~node.in & ~node.out & ~covered;
    if (open_out == 0 && free == 0) {
      best.offer(node.in);
      return;
    }
    const auto m = static_cast<std::uint64_t>(std::popcount(node.in));
    const auto uo = static_cast<std::uint64_t>(std::popcount(open_out));
    const auto f = static_cast<std::uint64_t>(std::popcount(free));
    // Fewest additions j such that the new covering units can complete every point that
    // still needs completing (open excluded points plus free points left out).
    std::uint64_t j = 0;
    const std::uint64_t base_units = binom(m, unit);
    while (j <= f && uo + (f - j) > cap * (binom(m + j, unit) - base_units)) ++j;
    if (j > f || m + j >= best.size.load()) return;

    const std::uint64_t available = node.in | free;
    std::uint64_t pivot_pool = 0;
    for (std::uint64_t pending = open_out; pending; pending &= pending - 1) {
      const auto t = static_cast<std::size_t>(std::countr_zero(pending));
      std::uint64_t options_union = 0;
      for (std::uint64_t inst : model.instances_of(t)) {
        const std::uint64_t rest = inst & ~bit(t);
        if ((rest & ~available) == 0) options_union |= rest & free;
      }
      if (options_union == 0) return;  // t can no longer be completed
      if (pivot_pool == 0) pivot_pool = options_union;
    }
    if (pivot_pool == 0) pivot_pool = free;
    const auto pivot = static_cast<std::size_t>(std::countr_zero(pivot_pool));
    children.push_back({node.in | bit(pivot), node.out});
    children.push_back({node.in, node.out | bit(pivot)});
  };

  const auto outcome = detail::run_driver(std::move(tasks), options.budget, nodes_start,
                                          resolve_threads(options.threads), process);
  if (outcome.exhausted) {
    // The optimum is known; rerun single-threaded to report the first optimal set in
    // search order, so the witness does not depend on the thread count.
    const std::size_t optimum = best.size.load();
    best.reset(optimum + 1);
    detail::run_driver(roots, 0, 0, 1, process);
  }
  SearchResult out{model.to_set(best.mask)};
  out.best_size = out.best_set.size();
  out.nodes_explored = outcome.nodes;
  out.status = outcome.exhausted ? SearchStatus::ProvedOptimal : SearchStatus::BestFound;
  if (!outcome.exhausted) {
    Checkpoint cp;
    cp.problem = "min_saturated";
    cp.domain_kind = domain.kind();
    cp.domain_size = domain.size();
    cp.kind = options.kind;
    cp.orientation = options.orientation;
    cp.seed = options.seed;
    cp.use_symmetry = options.use_symmetry;
    cp.nodes_explored = outcome.nodes;
    cp.best = best.mask;
    cp.frontier = outcome.frontier;
    out.checkpoint = std::move(cp);
  }
  return out;
}

}  // namespace

SearchResult min_saturated_search(const Domain& domain, const SearchOptions& options, const Checkpoint* resume) {
  const auto start = std::chrono::steady_clock::now();
  if (domain.is_plane() && domain.size() == 2) throw Error(ErrorCode::InfeasibleDomain, "p = 2");
  if (resume) {
    if (options.mode != SearchMode::BranchBound || resume->problem != "min_saturated" ||
        !(resume->domain() == domain) || resume->kind != options.kind ||
        resume->orientation != options.orientation || !resume->pattern.empty()) {
      throw Error(ErrorCode::CorruptCheckpoint, "checkpoint does not match the requested search");
    }
  }
  SearchResult out = [&] {
    switch (options.mode) {
      case SearchMode::Exact: return exact_sweep(domain, options);
      case SearchMode::BranchBound: return branch_bound(domain, options, resume);
      case SearchMode::Greedy: break;
    }
    return greedy_search(domain, options);
  }();
  out.wall_time = std::chrono::steady_clock::now() - start;

  const SaturationKind kind = options.kind == ConfigKind::Corner ? SaturationKind::Corner : SaturationKind::Square;
  if (!check_saturated(out.best_set, kind, options.orientation).is_saturated) {
    throw std::logic_error("search returned a set that is not saturated");
  }
  if (options.kind == ConfigKind::Corner && options.orientation == Orientation::Tilted &&
      static_cast<std::int64_t>(out.best_size) < corner_sat_lower_bound(domain.size())) {
    throw std::logic_error("search result below the covering lower bound");
  }
  return out;
}

KatzTaoReport katz_tao_probe(const PointSet& set) {
  const Domain& domain = set.domain();
  if (!domain.is_plane()) throw Error(ErrorCode::WrongDomain, "Katz-Tao probe needs the prime plane");
  if (domain.p_mod_4() != 3) throw Error(ErrorCode::WrongResidue, "Katz-Tao probe needs p = 3 mod 4");
  const GaussianRing ring(domain);
  const GaussianElem one_plus_i = ring.elem(1, 1);
  const GaussianElem one_minus_i = ring.elem(1, -1);
  const std::int64_t half = inv_mod(2, ring.p());

  KatzTaoReport report;
  report.set_size = set.size();
  report.sums_within_2S = true;
  std::set<std::pair<std::int64_t, std::int64_t>> sums, diffs;
  std::set<std::size_t> outside;
  const auto pts = set.points();
  for (const Point& beta : pts) {
    for (const Point& gamma : pts) {
      if (beta == gamma) continue;
      const Point alpha = apex(beta, gamma, domain);
      if (!set.contains(alpha)) continue;
      ++report.G_size;
      const GaussianElem a = ring.mul(one_plus_i, ring.from_point(beta));
      const GaussianElem b = ring.mul(one_minus_i, ring.from_point(gamma));
      const GaussianElem s = ring.add(a, b);
      const GaussianElem d = ring.sub(a, b);
      sums.insert({s.re, s.im});
      diffs.insert({d.re, d.im});
      if (!set.contains(GaussianRing::to_point(ring.scale(half, s)))) report.sums_within_2S = false;
      const Point delta = domain.sub(domain.add(beta, gamma), alpha);
      if (!set.contains(delta)) outside.insert(domain.index(delta));
    }
  }
  report.sumset_size = sums.size();
  report.diffset_size = diffs.size();
  report.covered = outside.size();
  report.kt_rhs = std::pow(static_cast<double>(set.size()), 11.0 / 6.0);
  return report;
}

}  // namespace cornerlab
