// cornerlab command-line interface. Every command prints one JSON document
// {"manifest": ..., "result": ..., "run": ...}; "run" holds timings and node counts,
// which are excluded from the results digest.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cornerlab/checkpoint.hpp"
#include "cornerlab/error.hpp"
#include "cornerlab/extremal.hpp"
#include "cornerlab/manifest.hpp"
#include "cornerlab/parallel.hpp"
#include "cornerlab/ramsey.hpp"
#include "cornerlab/saturation.hpp"
#include "cornerlab/verify.hpp"

using namespace cornerlab;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kIo = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json point_json(Point p) { return json::array({p.x, p.y}); }

json domain_json(const Domain& d) { return {{"kind", d.name()}, {"size", d.size()}}; }

const auto g_start = std::chrono::steady_clock::now();

void emit(const std::string& output, const std::string& command, json parameters, std::uint64_t seed,
          const json& result, json run) {
  if (!run.contains("wall_time_s")) {
    run["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - g_start).count();
  }
  json doc{{"manifest", to_json(make_manifest(command, std::move(parameters), seed, result))},
           {"result", result},
           {"run", std::move(run)}};
  if (output.empty() || output == "-") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(output);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + output);
  out << doc.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::Io, "write failed: " + output);
}

Domain domain_from(std::optional<std::int64_t> p, std::optional<std::int64_t> n) {
  if (p.has_value() == n.has_value()) throw UsageError("give exactly one of --p or --n");
  return p ? Domain::prime_plane(*p) : Domain::integer_grid(*n);
}

std::vector<Matrix2> parse_pattern(const std::string& text) {
  std::vector<Matrix2> out;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    std::stringstream entries(item);
    std::string v;
    std::vector<std::int64_t> nums;
    while (std::getline(entries, v, ',')) {
      try {
        nums.push_back(std::stoll(v));
      } catch (const std::exception&) {
        throw UsageError("bad pattern entry '" + v + "'");
      }
    }
    if (nums.size() != 4) throw UsageError("each pattern matrix needs 4 entries a,b,c,d");
    out.push_back({nums[0], nums[1], nums[2], nums[3]});
  }
  if (out.empty()) throw UsageError("empty --pattern");
  return out;
}

Orientation parse_orientation(const std::string& s) { return s == "axis" ? Orientation::AxisParallel : Orientation::Tilted; }

// --- verify-claims -------------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::int64_t> primes{3, 5, 7, 11};
  std::vector<std::int64_t> grids{4, 8};
  std::uint64_t seed = 0;
  int threads = 0;
  std::string output;
};

int run_verify(const VerifyArgs& a) {
  VerifyOptions opts;
  opts.primes = a.primes;
  opts.grids = a.grids;
  opts.seed = a.seed;
  opts.threads = resolve_threads(a.threads);
  const auto start = std::chrono::steady_clock::now();
  VerifyReport report;
  try {
    report = verify_claims(opts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) throw UsageError(e.what());
    throw;
  }
  const json result{{"checks", report.checks}, {"all_passed", report.all_passed}, {"checks_digest", report.digest}};
  const json params{{"primes", a.primes}, {"grids", a.grids}};
  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
  emit(a.output, "verify-claims", params, a.seed, result, {{"wall_time_s", wall.count()}, {"threads", opts.threads}});
  return report.all_passed ? kOk : kCheckFailed;
}

// --- search ----------------------------------------------------------------------------

struct SearchArgs {
  std::string kind = "corner-sat";
  std::optional<std::int64_t> p, n;
  std::string mode = "exact";
  std::string orientation = "tilted";
  std::string pattern;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  int threads = 0;
  bool no_symmetry = false;
  std::string checkpoint;
  std::string resume;
  std::string output;
};

int run_search(SearchArgs a) {
  std::optional<Checkpoint> resume;
  if (!a.resume.empty()) {
    resume = load_checkpoint(a.resume);
    // The checkpoint fixes the problem; command-line problem flags are ignored.
    const bool sat = resume->problem == "min_saturated";
    if (resume->pattern.empty()) {
      a.kind = to_string(resume->kind) + (sat ? "-sat" : "-free-max");
    } else {
      a.kind = "pattern-free-max";
    }
    a.orientation = resume->orientation == Orientation::AxisParallel ? "axis" : "tilted";
    a.p.reset();
    a.n.reset();
    (resume->domain_kind == DomainKind::PrimePlane ? a.p : a.n) = resume->domain_size;
    a.mode = sat ? "bb" : "exact";
    a.seed = resume->seed;
    a.no_symmetry = !resume->use_symmetry;
  }
  const Domain domain = domain_from(a.p, a.n);
  const Orientation orientation = parse_orientation(a.orientation);
  const int threads = resolve_threads(a.threads);
  json params{{"kind", a.kind},          {"domain", domain_json(domain)}, {"mode", a.mode},
              {"orientation", a.orientation}, {"budget", a.budget},    {"use_symmetry", !a.no_symmetry},
              {"resumed", resume.has_value()}};
  json result{{"problem", a.kind}, {"domain", domain_json(domain)}, {"orientation", a.orientation}};
  json run{{"threads", threads}};
  std::optional<Checkpoint> produced;

  if (a.kind == "corner-sat" || a.kind == "square-sat") {
    SearchOptions opts;
    opts.kind = a.kind == "corner-sat" ? ConfigKind::Corner : ConfigKind::Square;
    opts.orientation = orientation;
    if (a.mode == "exact") {
      opts.mode = domain.point_count() <= 25 ? SearchMode::Exact : SearchMode::BranchBound;
    } else if (a.mode == "bb") {
      opts.mode = SearchMode::BranchBound;
    } else {
      opts.mode = SearchMode::Greedy;
    }
    if (resume) opts.mode = SearchMode::BranchBound;
    opts.budget = a.budget;
    opts.seed = a.seed;
    opts.threads = threads;
    opts.use_symmetry = !a.no_symmetry;
    const auto r = min_saturated_search(domain, opts, resume ? &*resume : nullptr);
    result["search_mode"] = to_string(opts.mode);
    result["best_size"] = r.best_size;
    result["status"] = to_string(r.status);
    result["witness"] = r.best_set.to_hex();
    json pts = json::array();
    for (const Point& q : r.best_set.points()) pts.push_back(point_json(q));
    result["points"] = pts;
    if (opts.kind == ConfigKind::Corner && orientation == Orientation::Tilted && domain.is_plane()) {
      result["lower_bound"] = corner_sat_lower_bound(domain.size());
    }
    run["nodes_explored"] = r.nodes_explored;
    run["wall_time_s"] = r.wall_time.count();
    produced = r.checkpoint;
  } else if (a.kind == "corner-free-max" || a.kind == "square-free-max" || a.kind == "pattern-free-max") {
    ExtremalTarget target;
    if (a.kind == "pattern-free-max") {
      target.pattern = resume ? resume->pattern : parse_pattern(a.pattern);
    } else {
      target.kind = a.kind == "corner-free-max" ? ConfigKind::Corner : ConfigKind::Square;
      target.orientation = orientation;
    }
    ExtremalOptions opts;
    opts.mode = a.mode == "exact" || a.mode == "bb" ? ExtremalMode::Exact : ExtremalMode::Heuristic;
    opts.budget = a.budget;
    opts.seed = a.seed;
    opts.threads = threads;
    opts.use_symmetry = !a.no_symmetry;
    const auto start = std::chrono::steady_clock::now();
    const auto r = max_config_free(domain, target, opts, resume ? &*resume : nullptr);
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
    result["search_mode"] = opts.mode == ExtremalMode::Exact ? "exact" : "heuristic";
    result["best_size"] = r.max_size_found;
    result["status"] = r.proved ? "ProvedOptimal" : "BestFound";
    result["proved"] = r.proved;
    result["density"] = to_string(r.density);
    result["witness"] = r.example_set.to_hex();
    json pts = json::array();
    for (const Point& q : r.example_set.points()) pts.push_back(point_json(q));
    result["points"] = pts;
    run["nodes_explored"] = r.nodes_explored;
    run["wall_time_s"] = wall.count();
    produced = r.checkpoint;
  } else {
    throw UsageError("unknown --kind " + a.kind);
  }

  result["checkpoint_written"] = false;
  if (produced && !a.checkpoint.empty()) {
    save_checkpoint(a.checkpoint, *produced);
    result["checkpoint_written"] = true;
  }
  result["complete"] = !produced.has_value();
  emit(a.output, "search", params, a.seed, result, run);
  return kOk;
}

// --- audit-coloring --------------------------------------------------------------------

struct AuditArgs {
  std::string input;
  bool random = false;
  std::optional<std::int64_t> p, n;
  int r = 2;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> a, b;
  bool force = false;
  double C = kDefaultMonoConstant;
  int threads = 0;
  std::string output;
};

int run_audit(const AuditArgs& a) {
  if (a.input.empty() == !a.random) throw UsageError("give exactly one of --input or --random");
  if (a.a.has_value() != a.b.has_value()) throw UsageError("--a and --b go together");
  const Coloring coloring = a.random ? Coloring::random(domain_from(a.p, a.n), a.r, a.seed) : load_coloring(a.input);
  const int threads = resolve_threads(a.threads);
  const Domain& domain = coloring.domain;

  json params{{"source", a.random ? "random" : a.input}, {"domain", domain_json(domain)}, {"r", coloring.r}};
  json result{{"domain", domain_json(domain)}, {"r", coloring.r}};
  json sizes = json::array();
  for (int c = 0; c < coloring.r; ++c) sizes.push_back(coloring.color_class(c).size());
  result["class_sizes"] = sizes;

  if (a.a) {
    // Check the collinear-triple precondition before any heavy work.
    params["a"] = *a.a;
    params["b"] = *a.b;
    params["force"] = a.force;
    if (!domain.is_plane()) throw UsageError("collinear triples need --p");
    const auto t = find_mono_collinear_triple(coloring, *a.a, *a.b, a.force);
    json tj{{"found", t.has_value()}};
    if (t) {
      tj["points"] = json::array({point_json(t->x), point_json(t->y), point_json(t->z)});
      tj["direction"] = point_json(t->direction);
      tj["t1"] = t->t1;
      tj["t2"] = t->t2;
      tj["color"] = t->color;
    }
    result["collinear_triple"] = tj;
  }

  if (domain.is_plane() && coloring.r == 2) {
    params["C"] = a.C;
    const auto m = mono_corner_counts(coloring, a.C, threads);
    result["mono_corner_counts"] = {
        {"sigma_R", m.sigma_R}, {"sigma_B", m.sigma_B}, {"bound", m.bound}, {"C", m.C}, {"margin", m.margin}};
    const auto d = mono_decomposition_audit(coloring, false, threads);
    auto terms = [](const SigmaDecomposition& s) {
      return json{{"main_term", to_string(s.main_term)},
                  {"single_f_terms", {to_string(s.single_f_terms[0]), to_string(s.single_f_terms[1]),
                                      to_string(s.single_f_terms[2])}},
                  {"two_f_terms", {to_string(s.two_f_terms[0]), to_string(s.two_f_terms[1]),
                                   to_string(s.two_f_terms[2])}},
                  {"three_f_term", to_string(s.three_f_term)},
                  {"total", to_string(s.total)},
                  {"sigma", s.sigma}};
    };
    result["decomposition"] = {{"red", terms(d.red)},
                               {"blue", terms(d.blue)},
                               {"main_terms", to_string(d.main_terms)},
                               {"corrections", to_string(d.corrections)},
                               {"residual", to_string(d.residual)},
                               {"identity_holds", d.identity_holds},
                               {"balanced_sums_zero", d.balanced_sums_zero},
                               {"main_term_convention",
                                "sigma(rho,rho,rho) summed over y != 0; equals |R|^3/p^2 only under full (x,y) sums"}};
  }

  const auto corner = find_mono_axis_corner(coloring);
  json cj{{"found", corner.has_value()}};
  if (corner) {
    cj["points"] = json::array({point_json(corner->points[0]), point_json(corner->points[1]), point_json(corner->points[2])});
    cj["d"] = corner->d;
    cj["color"] = corner->color;
  }
  result["axis_corner"] = cj;
  emit(a.output, "audit-coloring", params, a.seed, result, {{"threads", threads}});
  return kOk;
}

// --- density-table ---------------------------------------------------------------------

struct DensityArgs {
  std::string kind = "corner";
  bool plane = false;
  std::vector<std::int64_t> sizes{2, 3, 4, 5, 6};
  std::string mode = "exact";
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string csv;
  std::string output;
};

int run_density(const DensityArgs& a) {
  ExtremalTarget target;
  if (a.kind == "square") target = ExtremalTarget::square();
  else if (a.kind != "corner") throw UsageError("density-table --kind must be corner or square");
  ExtremalOptions opts;
  opts.mode = a.mode == "exact" ? ExtremalMode::Exact : ExtremalMode::Heuristic;
  opts.budget = a.budget;
  opts.seed = a.seed;
  opts.threads = resolve_threads(a.threads);
  const auto rows = density_table(target, !a.plane, a.sizes, opts);
  if (!a.csv.empty()) {
    std::ofstream out(a.csv);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + a.csv);
    out << density_table_csv(rows);
  }
  const json params{{"kind", a.kind}, {"domain_kind", a.plane ? "prime_plane" : "integer_grid"},
                    {"sizes", a.sizes}, {"mode", a.mode}, {"budget", a.budget}};
  emit(a.output, "density-table", params, a.seed, {{"rows", density_table_json(rows)}}, {{"threads", opts.threads}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cornerlab: corners, squares and saturation in finite planes and grids"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kArtifactVersion));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify-claims", "Run the invariant battery");
  verify->add_option("--primes", va.primes, "Odd primes")->delimiter(',');
  verify->add_option("--grids", va.grids, "Grid sizes")->delimiter(',');
  verify->add_option("--seed", va.seed);
  verify->add_option("--threads", va.threads, "Worker threads (default: $CORNERLAB_THREADS or 1)");
  verify->add_option("-o,--output", va.output);

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Minimum saturated or maximum configuration-free sets");
  search->add_option("--kind", sa.kind)
      ->check(CLI::IsMember({"corner-sat", "square-sat", "corner-free-max", "square-free-max", "pattern-free-max"}));
  search->add_option("--p", sa.p, "Prime plane F_p x F_p");
  search->add_option("--n", sa.n, "Integer grid [n] x [n]");
  search->add_option("--mode", sa.mode)->check(CLI::IsMember({"exact", "bb", "greedy", "heuristic"}));
  search->add_option("--orientation", sa.orientation)->check(CLI::IsMember({"tilted", "axis"}));
  search->add_option("--pattern", sa.pattern, "Matrices a,b,c,d;a,b,c,d;...");
  search->add_option("--budget", sa.budget, "Node limit (exact) or iterations/restarts (heuristic)");
  search->add_option("--seed", sa.seed);
  search->add_option("--threads", sa.threads);
  search->add_flag("--no-symmetry", sa.no_symmetry);
  search->add_option("--checkpoint", sa.checkpoint, "Where to save state if the budget runs out");
  search->add_option("--resume", sa.resume, "Checkpoint to continue from");
  search->add_option("-o,--output", sa.output);

  AuditArgs aa;
  auto* audit = app.add_subcommand("audit-coloring", "Monochromatic configuration audit of a coloring");
  audit->add_option("--input", aa.input, "Coloring JSON {\"p\"|\"n\", \"r\", \"colors\"}");
  audit->add_flag("--random", aa.random, "Generate a uniform random coloring");
  audit->add_option("--p", aa.p);
  audit->add_option("--n", aa.n);
  audit->add_option("--r", aa.r);
  audit->add_option("--seed", aa.seed);
  audit->add_option("--a", aa.a, "Norm of y - x for the collinear triple search");
  audit->add_option("--b", aa.b, "Norm of z - y");
  audit->add_flag("--force", aa.force, "Allow a/b that is not a quadratic residue");
  audit->add_option("--C", aa.C, "Constant in p^3/4 - C p^(5/2)");
  audit->add_option("--threads", aa.threads);
  audit->add_option("-o,--output", aa.output);

  DensityArgs da;
  auto* density = app.add_subcommand("density-table", "Maximum configuration-free sizes by domain size");
  density->add_option("--kind", da.kind)->check(CLI::IsMember({"corner", "square"}));
  density->add_flag("--plane", da.plane, "Prime planes instead of grids");
  density->add_option("--sizes", da.sizes)->delimiter(',');
  density->add_option("--mode", da.mode)->check(CLI::IsMember({"exact", "heuristic"}));
  density->add_option("--budget", da.budget);
  density->add_option("--seed", da.seed);
  density->add_option("--threads", da.threads);
  density->add_option("--csv", da.csv, "Also write the table as CSV");
  density->add_option("-o,--output", da.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return run_verify(va);
    if (*search) return run_search(sa);
    if (*audit) return run_audit(aa);
    if (*density) return run_density(da);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::Io:
      case ErrorCode::CorruptCheckpoint:
      case ErrorCode::FormatError:
        return kIo;
      default:
        return kUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}
