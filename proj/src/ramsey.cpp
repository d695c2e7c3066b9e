#include "cornerlab/ramsey.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "cornerlab/error.hpp"
#include "cornerlab/parallel.hpp"
#include "cornerlab/rng.hpp"

namespace cornerlab {

Coloring Coloring::uniform(const Domain& domain, int r, int color) {
  return from_colors(domain, r, std::vector<int>(domain.point_count(), color));
}

Coloring Coloring::random(const Domain& domain, int r, std::uint64_t seed) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "r must be at least 1");
  Rng rng(seed);
  std::vector<int> colors(domain.point_count());
  for (int& c : colors) c = static_cast<int>(rng.below(static_cast<std::uint64_t>(r)));
  return {domain, r, std::move(colors)};
}

Coloring Coloring::from_colors(const Domain& domain, int r, std::vector<int> colors) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "r must be at least 1");
  if (colors.size() != domain.point_count()) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(domain.point_count()) + " colors, got " +
                                                std::to_string(colors.size()));
  }
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (colors[i] < 0 || colors[i] >= r) {
      throw Error(ErrorCode::InvalidArgument, "color " + std::to_string(colors[i]) + " at index " + std::to_string(i) +
                                                  " outside [0, " + std::to_string(r) + ")");
    }
  }
  return {domain, r, std::move(colors)};
}

PointSet Coloring::color_class(int color) const {
  PointSet set(domain);
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (colors[i] == color) set.insert_index(i);
  }
  return set;
}

Coloring Coloring::swapped() const {
  Coloring out = *this;
  for (int& c : out.colors) c = r - 1 - c;
  return out;
}

namespace {

[[noreturn]] void format_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::FormatError, "coloring field '" + field + "': " + what);
}

std::int64_t int_field(const nlohmann::json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) format_error(key, "expected an integer");
  return v.get<std::int64_t>();
}

}  // namespace

Coloring coloring_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::FormatError, "coloring: expected a JSON object");
  const bool plane = doc.contains("p");
  if (plane == doc.contains("n")) format_error("p/n", "exactly one of \"p\" or \"n\" is required");
  const std::string size_key = plane ? "p" : "n";
  const std::int64_t size = int_field(doc, size_key);
  Domain domain = Domain::integer_grid(1);
  try {
    domain = plane ? Domain::prime_plane(size) : Domain::integer_grid(size);
  } catch (const Error& e) {
    format_error(size_key, e.what());
  }
  if (!doc.contains("r")) format_error("r", "missing");
  const std::int64_t r = int_field(doc, "r");
  if (r < 1 || r > std::numeric_limits<int>::max()) format_error("r", "must be a positive integer");
  if (!doc.contains("colors")) format_error("colors", "missing");
  const auto& arr = doc.at("colors");
  if (!arr.is_array()) format_error("colors", "expected an array");
  if (arr.size() != domain.point_count()) {
    format_error("colors", "expected " + std::to_string(domain.point_count()) + " entries, got " +
                               std::to_string(arr.size()));
  }
  std::vector<int> colors(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string field = "colors[" + std::to_string(i) + "]";
    if (!arr[i].is_number_integer()) format_error(field, "expected an integer");
    const auto c = arr[i].get<std::int64_t>();
    if (c < 0 || c >= r) format_error(field, "color " + std::to_string(c) + " outside [0, " + std::to_string(r) + ")");
    colors[i] = static_cast<int>(c);
  }
  return {domain, static_cast<int>(r), std::move(colors)};
}

nlohmann::json to_json(const Coloring& coloring) {
  nlohmann::json doc;
  doc[coloring.domain.is_plane() ? "p" : "n"] = coloring.domain.size();
  doc["r"] = coloring.r;
  doc["colors"] = coloring.colors;
  return doc;
}

Coloring load_coloring(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open coloring file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::FormatError, path.string() + ":" + std::to_string(line) + ":" + std::to_string(column) +
                                            ": invalid JSON (" + e.what() + ")");
  }
  try {
    return coloring_from_json(doc);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

namespace {

void require_two_color_plane(const Coloring& c) {
  if (!c.domain.is_plane()) throw Error(ErrorCode::WrongDomain, "needs the prime plane");
  if (c.r != 2) throw Error(ErrorCode::WrongColorCount, "needs a 2-coloring, got r = " + std::to_string(c.r));
}

double mono_bound(std::int64_t p, double C) {
  const double q = static_cast<double>(p);
  return q * q * q / 4.0 - C * std::pow(q, 2.5);
}

}  // namespace

MonoCornerCounts mono_corner_counts(const Coloring& coloring, double C, int threads) {
  require_two_color_plane(coloring);
  MonoCornerCounts out;
  out.sigma_R = count_corners(coloring.color_class(0), false, threads);
  out.sigma_B = count_corners(coloring.color_class(1), false, threads);
  out.C = C;
  out.bound = mono_bound(coloring.domain.size(), C);
  out.margin = static_cast<double>(out.sigma_R + out.sigma_B) - out.bound;
  return out;
}

MonoDecompositionAudit mono_decomposition_audit(const Coloring& coloring, bool include_degenerate, int threads) {
  require_two_color_plane(coloring);
  const PointSet red = coloring.color_class(0);
  const PointSet blue = coloring.color_class(1);
  MonoDecompositionAudit out;
  out.red = decompose_sigma(red, include_degenerate, threads);
  out.blue = decompose_sigma(blue, include_degenerate, threads);
  out.main_terms = out.red.main_term + out.blue.main_term;
  out.corrections = out.red.total - out.red.main_term + out.blue.total - out.blue.main_term;
  const Rational sigma(static_cast<std::int64_t>(out.red.sigma + out.blue.sigma));
  out.residual = out.main_terms + out.corrections - sigma;
  out.balanced_sums_zero = LatticeFunction::balanced(red).sum() == 0 && LatticeFunction::balanced(blue).sum() == 0;
  out.identity_holds = out.residual == 0 && out.red.total_matches_sigma && out.blue.total_matches_sigma;
  return out;
}

MonoBatchReport mono_corner_batch(std::int64_t p, std::size_t count, std::uint64_t seed, double C, int threads) {
  const Domain domain = Domain::prime_plane(p);
  std::vector<std::uint64_t> totals(count);
  const Rng base(seed);
  parallel_tasks(count, resolve_threads(threads), [&](std::size_t i) {
    const Coloring c = Coloring::random(domain, 2, base.split(i).next());
    const auto counts = mono_corner_counts(c, C);
    totals[i] = counts.sigma_R + counts.sigma_B;
  });
  MonoBatchReport out;
  out.colorings = count;
  out.bound = mono_bound(p, C);
  if (count == 0) return out;
  out.min_total = *std::min_element(totals.begin(), totals.end());
  out.max_total = *std::max_element(totals.begin(), totals.end());
  out.margin = static_cast<double>(out.min_total) - out.bound;
  out.below_bound = static_cast<std::size_t>(
      std::count_if(totals.begin(), totals.end(), [&](std::uint64_t t) { return static_cast<double>(t) < out.bound; }));
  return out;
}

std::optional<MonoAxisCorner> find_mono_axis_corner(const Coloring& coloring) {
  const Domain& domain = coloring.domain;
  const std::int64_t n = domain.size();
  // d = 1, −1, 2, −2, …; on the plane each nonzero residue once (1, p−1, 2, p−2, …).
  std::vector<std::int64_t> steps;
  for (std::int64_t k = 1; domain.is_plane() ? 2 * k <= n : k < n; ++k) {
    steps.push_back(k);
    if (!domain.is_plane()) {
      steps.push_back(-k);
    } else if (n - k != k) {
      steps.push_back(n - k);
    }
  }
  for (std::size_t idx = 0; idx < domain.point_count(); ++idx) {
    const Point base = domain.point(idx);
    const int color = coloring.colors[idx];
    for (std::int64_t d : steps) {
      const Point right{base.x + d, base.y};
      const Point up{base.x, base.y + d};
      if (!domain.is_plane() && (!domain.contains(right) || !domain.contains(up))) continue;
      const Point r = domain.reduce(right);
      const Point u = domain.reduce(up);
      if (coloring.at(r) != color || coloring.at(u) != color) continue;
      if (!is_axis_corner(base, r, u, domain)) throw std::logic_error("axis corner witness failed verification");
      return MonoAxisCorner{{base, r, u}, d, color};
    }
  }
  return std::nullopt;
}

bool is_quadratic_residue(std::int64_t x, std::int64_t p) {
  const std::int64_t v = mod(x, p);
  if (v == 0) throw Error(ErrorCode::ZeroInput, "0 has no quadratic character");
  return pow_mod(v, static_cast<std::uint64_t>((p - 1) / 2), p) == 1;
}

namespace {

// Ascending square roots of every residue (empty when none).
std::vector<std::vector<std::int64_t>> sqrt_table(std::int64_t p) {
  std::vector<std::vector<std::int64_t>> roots(static_cast<std::size_t>(p));
  for (std::int64_t t = 0; t < p; ++t) roots[static_cast<std::size_t>(mul_mod(t, t, p))].push_back(t);
  return roots;
}

struct CollinearQuery {
  std::int64_t p, a, b;
  std::vector<Point> directions;
  // Per direction: admissible (t1, t2) pairs in scan order.
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> scalars;
};

CollinearQuery prepare_collinear(const Domain& domain, std::int64_t a, std::int64_t b, bool force) {
  const std::int64_t p = domain.size();
  CollinearQuery q{p, mod(a, p), mod(b, p), {}, {}};
  if (q.a == 0 || q.b == 0) throw Error(ErrorCode::ZeroInput, "norms a and b must be nonzero");
  if (!force && !is_quadratic_residue(mul_mod(q.a, inv_mod(q.b, p), p), p)) {
    throw Error(ErrorCode::NotQuadraticResidue,
                "a/b = " + std::to_string(mul_mod(q.a, inv_mod(q.b, p), p)) + " is not a quadratic residue mod " +
                    std::to_string(p));
  }
  const auto roots = sqrt_table(p);
  auto add_direction = [&](Point v) {
    const std::int64_t n = domain.norm(v);
    if (n == 0) return;  // isotropic: no nonzero norms along this line
    const std::int64_t inv_n = inv_mod(n, p);
    const auto& r1 = roots[static_cast<std::size_t>(mul_mod(q.a, inv_n, p))];
    const auto& r2 = roots[static_cast<std::size_t>(mul_mod(q.b, inv_n, p))];
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    for (std::int64_t t1 : r1) {
      for (std::int64_t t2 : r2) {
        if (mod(t1 + t2, p) != 0) pairs.emplace_back(t1, t2);
      }
    }
    if (pairs.empty()) return;
    q.directions.push_back(v);
    q.scalars.push_back(std::move(pairs));
  };
  for (std::int64_t m = 0; m < p; ++m) add_direction({1, m});
  add_direction({0, 1});
  return q;
}

std::optional<CollinearTriple> scan_collinear(const Coloring& coloring, const CollinearQuery& q) {
  const Domain& domain = coloring.domain;
  for (std::size_t idx = 0; idx < domain.point_count(); ++idx) {
    const Point x = domain.point(idx);
    const int color = coloring.colors[idx];
    for (std::size_t d = 0; d < q.directions.size(); ++d) {
      const Point v = q.directions[d];
      for (const auto& [t1, t2] : q.scalars[d]) {
        const Point y = domain.add(x, domain.scale(t1, v));
        if (coloring.at(y) != color) continue;
        const Point z = domain.add(y, domain.scale(t2, v));
        if (coloring.at(z) != color) continue;
        return CollinearTriple{x, y, z, v, t1, t2, color};
      }
    }
  }
  return std::nullopt;
}

void verify_collinear(const Domain& domain, const CollinearTriple& t, std::int64_t a, std::int64_t b) {
  const Point u = domain.sub(t.y, t.x);
  const Point w = domain.sub(t.z, t.y);
  const bool parallel = mod(u.x * w.y - u.y * w.x, domain.size()) == 0;
  if (!parallel || domain.norm(u) != a || domain.norm(w) != b || t.x == t.z) {
    throw std::logic_error("collinear triple witness failed verification");
  }
}

}  // namespace

std::optional<CollinearTriple> find_mono_collinear_triple(const Coloring& coloring, std::int64_t a, std::int64_t b,
                                                          bool force) {
  require_two_color_plane(coloring);
  const CollinearQuery q = prepare_collinear(coloring.domain, a, b, force);
  auto found = scan_collinear(coloring, q);
  if (found) verify_collinear(coloring.domain, *found, q.a, q.b);
  return found;
}

std::uint64_t count_collinear_avoiding(std::int64_t p, std::int64_t a, std::int64_t b, bool force) {
  const Domain domain = Domain::prime_plane(p);
  if (domain.point_count() > 20) throw Error(ErrorCode::InvalidArgument, "exhaustive sweep limited to p = 3");
  const CollinearQuery q = prepare_collinear(domain, a, b, force);
  const std::size_t n = domain.point_count();
  std::uint64_t avoiding = 0;
  std::vector<int> colors(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) colors[i] = static_cast<int>((mask >> i) & 1);
    if (!scan_collinear(Coloring{domain, 2, colors}, q)) ++avoiding;
  }
  return avoiding;
}

}  // namespace cornerlab
