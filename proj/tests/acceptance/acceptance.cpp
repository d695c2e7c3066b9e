// Acceptance suite: one PASS/FAIL line per criterion, with its runtime limit.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "cornerlab/analysis.hpp"
#include "cornerlab/configs.hpp"
#include "cornerlab/gaussian.hpp"
#include "cornerlab/ramsey.hpp"
#include "cornerlab/rng.hpp"
#include "cornerlab/saturation.hpp"
#include "cornerlab/verify.hpp"

using namespace cornerlab;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

oracle::Members members(const PointSet& s) {
  oracle::Members m(s.domain().point_count());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = s.contains_index(i) ? 1 : 0;
  return m;
}

PointSet from_members(const Domain& d, const oracle::Members& m) {
  PointSet s(d);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) s.insert_index(i);
  return s;
}

std::vector<oracle::Mat> to_mats(const std::vector<Matrix2>& ms) {
  std::vector<oracle::Mat> out;
  for (const auto& m : ms) out.push_back({m.a, m.b, m.c, m.d});
  return out;
}

long inv(long a, long p) {
  for (long t = 1; t < p; ++t)
    if (oracle::md(a * t, p) == 1) return t;
  return 0;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// --- criteria ----------------------------------------------------------------------

Outcome bessel_endpoint() {
  const auto r = minimize_g();
  const double lb = measure_lower_bound(r.g_min);
  const double err = std::abs(r.g_min - kReferenceGMin);
  const bool ok = err <= 1e-8 && lb >= 0.0079 && std::abs(lb - 0.0079181) <= 1e-6 && r.audit_passed;
  return {ok, fmt("g_min=%.10f |err|=%.1e t*=%.9f lb=%.7f audit=%s", r.g_min, err, r.t_star, lb,
                  r.audit_passed ? "ok" : "FAILED")};
}

Outcome saturation_claim() {
  int primes = 0, bad = 0;
  std::string first_bad;
  for (std::int64_t p = 3; p <= 101; ++p) {
    if (!is_prime(p)) continue;
    ++primes;
    const auto rep = check_saturated(vertical_line_set(p), SaturationKind::Corner);
    const bool ok = rep.is_config_free && rep.is_saturated && corner_sat_lower_bound(p) <= p;
    if (!ok && bad++ == 0) first_bad = std::to_string(p);
  }
  return {bad == 0, fmt("%d primes in [3,101], %d failures%s", primes, bad,
                        bad ? (" (first p=" + first_bad + ")").c_str() : "")};
}

Outcome exact_small_case() {
  const long p = 3;
  const int brute = oracle::min_over_subsets(p, oracle::corner_saturated);
  const Domain plane = Domain::prime_plane(p);
  SearchOptions o;
  o.mode = SearchMode::Exact;
  const auto exact = min_saturated_search(plane, o);
  o.mode = SearchMode::BranchBound;
  const auto bb = min_saturated_search(plane, o);
  std::size_t max_completions = 0;
  for (long a = 0; a < 9; ++a)
    for (long b = a + 1; b < 9; ++b)
      max_completions = std::max(max_completions, oracle::completions({a / 3, a % 3}, {b / 3, b % 3}, p).size());
  const bool ok = brute == 3 && exact.best_size == 3 && exact.status == SearchStatus::ProvedOptimal &&
                  bb.best_size == 3 && bb.status == SearchStatus::ProvedOptimal && max_completions <= 6;
  return {ok, fmt("oracle=%d exact=%zu (%s) bb=%zu (%s) max completions of a pair=%zu < 7", brute, exact.best_size,
                  to_string(exact.status).c_str(), bb.best_size, to_string(bb.status).c_str(), max_completions)};
}

Outcome gaussian_identities() {
  long checked = 0, held = 0;
  for (long p : {7, 11, 19}) {
    const Domain plane = Domain::prime_plane(p);
    Rng rng(1000 + static_cast<std::uint64_t>(p));
    const long h = inv(2, p);
    for (int t = 0; t < 10000; ++t) {
      const long a1 = rng.below(p), a2 = rng.below(p);
      long y1 = 0, y2 = 0;
      while (y1 == 0 && y2 == 0) y1 = rng.below(p), y2 = rng.below(p);
      // β = α + y, γ = α − iy: the right angle sits at α.
      const long b1 = oracle::md(a1 + y1, p), b2 = oracle::md(a2 + y2, p);
      const long g1 = oracle::md(a1 + y2, p), g2 = oracle::md(a2 - y1, p);
      // u + iv = (1+i)/2·β − (1−i)/2·γ; −i(u + iv) = v − iu.
      const long u = oracle::md(h * ((b1 - b2) - (g1 + g2)), p);
      const long v = oracle::md(h * ((b1 + b2) - (g2 - g1)), p);
      const Point alpha{a1, a2}, beta{b1, b2}, gamma{g1, g2};
      ++checked;
      if (apex(beta, gamma, plane) == alpha && fourth_vertex(alpha, beta, gamma, plane) == Point{v, oracle::md(-u, p)})
        ++held;
    }
  }
  return {held == checked, fmt("%ld/%ld random corners over p in {7,11,19}", held, checked)};
}

Outcome counting_equivalence() {
  long sets = 0, mismatches = 0;
  const auto check = [&](const Domain& d, long p, const oracle::Members& m) {
    const PointSet s = from_members(d, m);
    const PatternSpec skew({Matrix2::identity(), {0, 1, 1, 1}}, p);
    ++sets;
    const bool ok = count_corners(s) == oracle::pattern_count_plane(m, p, {oracle::kI, oracle::kRot}) &&
                    count_squares(s) == oracle::pattern_count_plane(m, p, {oracle::kI, oracle::kRot, oracle::kM3}) &&
                    count_matrix_pattern(s, PatternSpec::corner(p)) ==
                        oracle::pattern_count_plane(m, p, {oracle::kI, oracle::kRot}) &&
                    count_matrix_pattern(s, skew) == oracle::pattern_count_plane(m, p, to_mats(skew.matrices()));
    if (!ok) ++mismatches;
  };
  {
    const Domain d = Domain::prime_plane(3);
    for (std::uint64_t mask = 0; mask < 512; ++mask) check(d, 3, oracle::from_mask(mask, 9));
  }
  long p5 = 0;
  {
    // p = 5 scope: every subset of size ≤ 3 or co-size ≤ 2, plus 2000 random subsets.
    const Domain d = Domain::prime_plane(5);
    const long before = sets;
    std::vector<std::vector<int>> small{{}};
    for (int i = 0; i < 25; ++i) {
      small.push_back({i});
      for (int j = i + 1; j < 25; ++j) {
        small.push_back({i, j});
        for (int k = j + 1; k < 25; ++k) small.push_back({i, j, k});
      }
    }
    oracle::Members m(25);
    for (const auto& idx : small) {
      std::fill(m.begin(), m.end(), 0);
      for (int q : idx) m[q] = 1;
      check(d, 5, m);
      if (idx.size() > 2) continue;
      for (auto& c : m) c = !c;
      check(d, 5, m);
    }
    Rng rng(55);
    for (int t = 0; t < 2000; ++t) {
      const std::uint64_t density = 1 + rng.below(9);
      for (auto& c : m) c = rng.below(10) < density;
      check(d, 5, m);
    }
    p5 = sets - before;
  }
  for (long p : {7, 11, 13}) {
    const Domain d = Domain::prime_plane(p);
    Rng rng(7000 + static_cast<std::uint64_t>(p));
    oracle::Members m(p * p);
    for (int t = 0; t < 50; ++t) {
      const std::uint64_t density = 2 + rng.below(7);
      for (auto& c : m) c = rng.below(10) < density;
      check(d, p, m);
    }
  }
  return {mismatches == 0, fmt("%ld sets (p=3 all 512; p=5 %ld: all of size<=3 or co-size<=2 + 2000 random, "
                               "not all 2^25; p=7,11,13 50 each), %ld mismatches",
                               sets, p5, mismatches)};
}

Outcome decomposition_identity() {
  long sets = 0, bad = 0;
  for (std::int64_t p : {5, 7, 11}) {
    const Domain d = Domain::prime_plane(p);
    Rng rng(900 + static_cast<std::uint64_t>(p));
    for (int t = 0; t < 1000; ++t) {
      const auto s = random_subset(d, 1 + rng.below(9), 10, rng.next());
      const auto dec = decompose_sigma(s);
      ++sets;
      const bool ok = dec.total == Rational(dec.sigma) && dec.sigma == count_corners(s) &&
                      dec.single_f_terms[0] == 0 && dec.single_f_terms[1] == 0 && dec.single_f_terms[2] == 0;
      if (!ok) ++bad;
    }
  }
  return {bad == 0, fmt("%ld random sets over p in {5,7,11}, %ld with total != sigma or nonzero single-f term", sets, bad)};
}

// Histogram of (x, y) over all (z_1..z_k), x = Σ z_j, y = −Σ M_j⁻¹ z_j.
std::pair<bool, long> oracle_fibers(const std::vector<oracle::Mat>& ms, long p) {
  std::vector<oracle::Mat> invs;
  for (const auto& m : ms) {
    const long di = inv(oracle::md(m[0] * m[3] - m[1] * m[2], p), p);
    invs.push_back({oracle::md(m[3] * di, p), oracle::md(-m[1] * di, p), oracle::md(-m[2] * di, p),
                    oracle::md(m[0] * di, p)});
  }
  const std::size_t k = ms.size();
  std::map<std::array<long, 4>, long> fibers;
  long total = 1;
  for (std::size_t j = 0; j < 2 * k; ++j) total *= p;
  std::vector<long> z(2 * k);
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (auto& v : z) v = c % p, c /= p;
    std::array<long, 4> key{0, 0, 0, 0};
    for (std::size_t j = 0; j < k; ++j) {
      key[0] += z[2 * j];
      key[1] += z[2 * j + 1];
      key[2] -= invs[j][0] * z[2 * j] + invs[j][1] * z[2 * j + 1];
      key[3] -= invs[j][2] * z[2 * j] + invs[j][3] * z[2 * j + 1];
    }
    for (auto& v : key) v = oracle::md(v, p);
    ++fibers[key];
  }
  const long first = fibers.begin()->second;
  bool uniform = fibers.size() == static_cast<std::size_t>(p * p * p * p);
  for (const auto& [key, n] : fibers) uniform = uniform && n == first;
  return {uniform, first};
}

Outcome uniform_cover() {
  struct Case {
    std::vector<Matrix2> ms;
    std::int64_t p;
  };
  const std::vector<Case> cases{{{Matrix2::identity(), Matrix2::rotation()}, 3},
                                {{Matrix2::identity(), Matrix2::rotation()}, 5},
                                {{Matrix2::identity(), Matrix2::rotation(), Matrix2::diagonal()}, 3}};
  bool ok = true;
  std::ostringstream detail;
  for (const auto& c : cases) {
    const PatternSpec spec(c.ms, c.p);
    const auto r = uniform_cover_check(spec, CoverMethod::Enumerate);
    const auto [oracle_uniform, oracle_fiber] = oracle_fibers(to_mats(c.ms), c.p);
    const auto expected = static_cast<std::uint64_t>(std::pow(c.p, 2 * (static_cast<int>(spec.k()) - 2)));
    const bool row = r.enumerated && r.surjective && r.uniform && oracle_uniform &&
                     r.fiber_size == static_cast<std::uint64_t>(oracle_fiber) && r.fiber_size == expected;
    ok = ok && row;
    detail << "k=" << spec.k() << ",p=" << c.p << ": fiber " << r.fiber_size << " (oracle " << oracle_fiber
           << ", p^{2(k-2)}=" << expected << ")" << (row ? "" : " MISMATCH") << "; ";
  }
  return {ok, detail.str()};
}

Outcome mono_audit() {
  std::ostringstream detail;
  std::size_t flagged = 0;
  for (std::int64_t p : {7, 11}) {
    const auto r = mono_corner_batch(p, 1000, 2024, kDefaultMonoConstant);
    flagged += r.below_bound;
    detail << "p=" << p << ": min(sR+sB)=" << r.min_total << " bound=" << fmt("%.2f", r.bound)
           << " margin=" << fmt("%.2f", r.margin) << " below=" << r.below_bound << "; ";
  }
  detail << "data only, " << flagged << " flagged for investigation";
  return {true, detail.str()};
}

Outcome katz_tao() {
  std::ostringstream detail;
  bool ok = true;
  for (long p : {7, 11, 19}) {
    const Domain plane = Domain::prime_plane(p);
    SearchOptions o;
    o.mode = SearchMode::Greedy;
    o.kind = ConfigKind::Square;
    o.budget = 4;
    o.seed = static_cast<std::uint64_t>(p);
    const PointSet s = min_saturated_search(plane, o).best_set;
    const bool saturated = check_saturated(s, SaturationKind::Square).is_saturated;
    const auto kt = katz_tao_probe(s);
    // Plain-integer recount: for every ordered (β, γ) of S whose apex α is in S,
    // a + b = (1+i)β + (1−i)γ must equal 2α, and fourth vertices β + γ − α are counted.
    const auto m = members(s);
    const long h = inv(2, p);
    std::set<long> fourth, sums;
    long pairs = 0;
    bool sums_ok = true;
    const auto pts = oracle::points(m, p);
    for (const auto& [b1, b2] : pts)
      for (const auto& [g1, g2] : pts) {
        if (b1 == g1 && b2 == g2) continue;
        const long s1 = oracle::md((b1 - b2) + (g1 + g2), p), s2 = oracle::md((b1 + b2) + (g2 - g1), p);
        const long a1 = oracle::md(h * s1, p), a2 = oracle::md(h * s2, p);
        if (!m[a1 * p + a2]) continue;
        ++pairs;
        sums.insert(s1 * p + s2);
        sums_ok = sums_ok && oracle::md(2 * a1 - s1, p) == 0 && oracle::md(2 * a2 - s2, p) == 0;
        fourth.insert(oracle::md(b1 + g1 - a1, p) * p + oracle::md(b2 + g2 - a2, p));
      }
    const bool row = saturated && kt.sums_within_2S && sums_ok && kt.G_size == static_cast<std::size_t>(pairs) &&
                     kt.sumset_size == sums.size() && kt.diffset_size == fourth.size() &&
                     kt.diffset_size >= static_cast<std::size_t>(p * p) - kt.set_size;
    ok = ok && row;
    detail << "p=" << p << ": |S|=" << kt.set_size << " |G|=" << kt.G_size << " diffset=" << kt.diffset_size
           << " recount=" << fourth.size() << " outside=" << p * p - static_cast<long>(kt.set_size) << (row ? "" : " MISMATCH") << "; ";
  }
  return {ok, detail.str()};
}

Outcome determinism() {
  VerifyOptions o;
  o.threads = 1;
  const auto a = verify_claims(o);
  const auto b = verify_claims(o);
  o.threads = 8;
  const auto c = verify_claims(o);
  const bool ok = a.digest == b.digest && a.digest == c.digest;
  return {ok, fmt("digest %s (run 1 %s run 2, threads 1 %s threads 8), battery %s", a.digest.substr(0, 16).c_str(),
                  a.digest == b.digest ? "==" : "!=", a.digest == c.digest ? "==" : "!=",
                  a.all_passed ? "all passed" : "HAS FAILURES")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 = no runtime limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Bessel endpoint", 5, bessel_endpoint},
      {2, "saturation claim, 3 <= p <= 101", 60, saturation_claim},
      {3, "exact minimum on F_3^2", 1, exact_small_case},
      {4, "Gaussian identities", 10, gaussian_identities},
      {5, "counting equivalence", 60, counting_equivalence},
      {6, "sigma decomposition identity", 60, decomposition_identity},
      {7, "uniform cover fibers", 30, uniform_cover},
      {8, "monochromatic corner audit", 120, mono_audit},
      {9, "Katz-Tao probe consistency", 60, katz_tao},
      {10, "verify-claims determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_s == 0 || secs < c.limit_s;
    const bool passed = out.passed && in_time;
    if (!passed) ++failed;
    std::string timing = fmt("%.2f s", secs);
    if (c.limit_s > 0) timing += fmt(" / limit %.0f s", c.limit_s);
    if (!in_time) timing += " OVER LIMIT";
    std::cout << (passed ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << " [" << timing << "]: " << out.detail
              << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
