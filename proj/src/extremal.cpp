#include "cornerlab/extremal.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <mutex>
#include <sstream>

#include "cornerlab/error.hpp"
#include "cornerlab/parallel.hpp"
#include "cornerlab/rng.hpp"
#include "cornerlab/symmetry.hpp"
#include "search_driver.hpp"

namespace cornerlab {

ConfigShape ExtremalTarget::shape(const Domain& domain) const {
  if (pattern.empty()) return ConfigShape::of(kind, orientation);
  if (!domain.is_plane()) throw Error(ErrorCode::WrongDomain, "matrix patterns need the prime plane");
  return ConfigShape::pattern(PatternSpec(pattern, domain.size()));
}

std::string ExtremalTarget::name() const {
  if (!pattern.empty()) return "pattern";
  return orientation == Orientation::Tilted ? to_string(kind) : to_string(kind) + "_axis";
}

namespace {

constexpr std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

bool better(const PointSet& a, const PointSet& b) {
  return a.size() > b.size() || (a.size() == b.size() && lex_less(a, b));
}

// Random maximal configuration-free set.
PointSet greedy_maximal(const ConfigEngine& engine, Rng& rng) {
  const Domain& domain = engine.domain();
  std::vector<std::size_t> order(domain.point_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(std::span<std::size_t>(order));
  PointSet set(domain);
  PointSet blocked(domain);
  for (std::size_t idx : order) {
    if (blocked.contains_index(idx)) continue;
    set.insert_index(idx);
    engine.extend_cover(set, domain.point(idx), blocked);
  }
  return set;
}

// Tabu local search: force in a random non-tabu point, evict one other point from every
// configuration it completes (evicted points become tabu), then refill greedily.
PointSet tabu_search(const ConfigEngine& engine, Rng& rng, std::uint64_t iterations) {
  const Domain& domain = engine.domain();
  const std::size_t n = domain.point_count();
  PointSet current = greedy_maximal(engine, rng);
  PointSet best = current;
  std::vector<std::uint64_t> tabu_until(n, 0);
  std::vector<std::size_t> order(n);
  for (std::uint64_t it = 1; it <= iterations; ++it) {
    std::vector<std::size_t> outside;
    for (std::size_t i = 0; i < n; ++i) {
      if (!current.contains_index(i) && tabu_until[i] < it) outside.push_back(i);
    }
    if (outside.empty()) break;
    const std::size_t t = outside[rng.below(outside.size())];
    const Point tp = domain.point(t);
    for (const auto& inst : engine.completed_by(current, tp)) {
      std::vector<std::size_t> others;
      for (const Point& q : inst) {
        if (q != tp && current.contains(q)) others.push_back(domain.index(q));
      }
      if (others.size() + 1 < inst.size()) continue;  // already broken by an earlier eviction
      const std::size_t victim = others[rng.below(others.size())];
      current.erase_index(victim);
      tabu_until[victim] = it + kTabuTenure;
    }
    current.insert_index(t);
    PointSet blocked = engine.cover(current);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t idx : order) {
      if (current.contains_index(idx) || blocked.contains_index(idx) || tabu_until[idx] >= it) continue;
      current.insert_index(idx);
      engine.extend_cover(current, domain.point(idx), blocked);
    }
    if (better(current, best)) best = current;
  }
  return best;
}

ExtremalRecord heuristic(const Domain& domain, const ExtremalTarget& target, const ExtremalOptions& options) {
  const ConfigEngine engine(domain, target.shape(domain));
  const std::uint64_t budget = options.budget ? options.budget : 2000;
  const std::uint64_t restarts = std::clamp<std::uint64_t>(budget / 500, 1, 64);
  const std::uint64_t per_restart = budget / restarts;
  const Rng base(options.seed);
  std::vector<PointSet> results(restarts, PointSet(domain));
  parallel_tasks(restarts, resolve_threads(options.threads), [&](std::size_t r) {
    Rng rng = base.split(r);
    results[r] = tabu_search(engine, rng, per_restart);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (better(results[r], results[best])) best = r;
  }
  ExtremalRecord rec{domain, target.name(), results[best].size(), false, results[best]};
  rec.nodes_explored = budget;
  return rec;
}

struct Incumbent {
  std::mutex mutex;
  std::atomic<std::size_t> size{0};
  std::uint64_t mask = 0;

  void reset(std::size_t limit) {
    size = limit;
    mask = 0;
  }

  void offer(std::uint64_t candidate) {
    const auto n = static_cast<std::size_t>(std::popcount(candidate));
    if (n <= size.load()) return;
    std::lock_guard lock(mutex);
    if (n > size.load()) {
      mask = candidate;
      size = n;
    }
  }
};

ExtremalRecord exact(const Domain& domain, const ExtremalTarget& target, const ExtremalOptions& options,
                     const Checkpoint* resume) {
  const MaskModel model(domain, target.shape(domain));
  const std::uint64_t all = model.all();
  // Instances ordered by size so the packing bound prefers small conflicts.
  std::vector<std::uint64_t> instances = model.instances();

  std::vector<SearchNode> roots;
  if (options.use_symmetry && domain.is_plane() && model.arity() >= 3) {
    // Any two points are configuration-free: move one to the origin, scale the other.
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
    Rng rng(options.seed);
    const ConfigEngine engine(domain, target.shape(domain));
    best.offer(model.to_mask(greedy_maximal(engine, rng)));
    tasks = roots;
  }

  auto process = [&](const SearchNode& node, std::vector<SearchNode>& children) {
    const std::uint64_t blocked = model.cover(node.in);
    const std::uint64_t cand = all & ~node.in & ~node.out & ~blocked;
    if (cand == 0) {
      best.offer(node.in);
      return;
    }
    // Disjoint conflicts among candidates: each one costs at least one point.
    std::uint64_t used = 0;
    std::size_t lost = 0;
    std::uint64_t pivot_pool = 0;
    for (std::size_t want = 2; want <= model.arity(); ++want) {
      for (std::uint64_t inst : instances) {
        const std::uint64_t live = inst & cand;
        if ((inst & ~(cand | node.in)) != 0 || static_cast<std::size_t>(std::popcount(live)) != want) continue;
        if (live & used) continue;
        used |= live;
        ++lost;
        if (pivot_pool == 0) pivot_pool = live;
      }
    }
    if (lost == 0) {
      best.offer(node.in | cand);  // no conflict left among candidates
      return;
    }
    const auto bound = static_cast<std::size_t>(std::popcount(node.in) + std::popcount(cand)) - lost;
    if (bound <= best.size.load()) return;
    // Branch on the candidate lying in the most live conflicts.
    std::array<std::uint32_t, 64> degree{};
    for (std::uint64_t inst : instances) {
      std::uint64_t live = inst & cand;
      if ((inst & ~(cand | node.in)) != 0 || std::popcount(live) < 2) continue;
      for (; live; live &= live - 1) ++degree[static_cast<std::size_t>(std::countr_zero(live))];
    }
    std::size_t pivot = static_cast<std::size_t>(std::countr_zero(pivot_pool));
    for (std::uint64_t rest = cand; rest; rest &= rest - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(rest));
      if (degree[i] > degree[pivot]) pivot = i;
    }
    children.push_back({node.in | bit(pivot), node.out});
    children.push_back({node.in, node.out | bit(pivot)});
  };

  const auto outcome = detail::run_driver(std::move(tasks), options.budget, nodes_start,
                                          resolve_threads(options.threads), process);
  if (outcome.exhausted) {
    // Report the first optimal set in single-threaded search order (thread-count independent).
    const std::size_t optimum = best.size.load();
    best.reset(optimum - 1);
    detail::run_driver(roots, 0, 0, 1, process);
  }
  const PointSet found = model.to_set(best.mask);
  ExtremalRecord rec{domain, target.name(), found.size(), outcome.exhausted, found};
  rec.nodes_explored = outcome.nodes;
  if (!outcome.exhausted) {
    Checkpoint cp;
    cp.problem = "max_config_free";
    cp.domain_kind = domain.kind();
    cp.domain_size = domain.size();
    cp.kind = target.kind;
    cp.orientation = target.orientation;
    cp.pattern = target.pattern;
    cp.seed = options.seed;
    cp.use_symmetry = options.use_symmetry;
    cp.nodes_explored = outcome.nodes;
    cp.best = best.mask;
    cp.frontier = outcome.frontier;
    rec.checkpoint = std::move(cp);
  }
  return rec;
}

}  // namespace

ExtremalRecord max_config_free(const Domain& domain, const ExtremalTarget& target, const ExtremalOptions& options,
                               const Checkpoint* resume) {
  if (resume) {
    if (options.mode != ExtremalMode::Exact || resume->problem != "max_config_free" || !(resume->domain() == domain) ||
        resume->kind != target.kind || resume->orientation != target.orientation || resume->pattern != target.pattern) {
      throw Error(ErrorCode::CorruptCheckpoint, "checkpoint does not match the requested search");
    }
  }
  ExtremalRecord rec = options.mode == ExtremalMode::Exact ? exact(domain, target, options, resume)
                                                           : heuristic(domain, target, options);
  if (ConfigEngine(domain, target.shape(domain)).find_config(rec.example_set)) {
    throw std::logic_error("extremal search returned a set containing a configuration");
  }
  rec.density = Rational(static_cast<std::int64_t>(rec.max_size_found), static_cast<std::int64_t>(domain.point_count()));
  return rec;
}

std::vector<DensityRow> density_table(const ExtremalTarget& target, bool grid, const std::vector<std::int64_t>& sizes,
                                      const ExtremalOptions& options) {
  std::vector<DensityRow> rows;
  for (std::int64_t size : sizes) {
    const Domain domain = grid ? Domain::integer_grid(size) : Domain::prime_plane(size);
    ExtremalOptions opts = options;
    if (opts.mode == ExtremalMode::Exact && domain.point_count() > MaskModel::kMaxPoints) {
      opts.mode = ExtremalMode::Heuristic;
      opts.budget = 0;
    }
    const ExtremalRecord rec = max_config_free(domain, target, opts);
    rows.push_back({size, rec.kind, rec.max_size_found, rec.proved, rec.example_set.to_hex(), rec.density});
  }
  return rows;
}

std::string density_table_csv(const std::vector<DensityRow>& rows) {
  std::ostringstream out;
  out << "size,kind,max_found,proved,density,witness\n";
  for (const auto& r : rows) {
    out << r.size << ',' << r.kind << ',' << r.max_found << ',' << (r.proved ? "true" : "false") << ','
        << to_string(r.density) << ',' << r.witness << '\n';
  }
  return out.str();
}

nlohmann::json density_table_json(const std::vector<DensityRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"size", r.size},
                   {"kind", r.kind},
                   {"max_found", r.max_found},
                   {"proved", r.proved},
                   {"witness", r.witness},
                   {"density", to_string(r.density)}});
  }
  return out;
}

}  // namespace cornerlab
