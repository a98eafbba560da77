// Acceptance checks. Prints one PASS/FAIL line per criterion (sub-items of
// criterion 8 get their own lines) and exits 1 if any check failed.
//
//   acceptance [N ...]   run only the listed criteria
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "dyncomp/compression.hpp"
#include "dyncomp/dynamics.hpp"
#include "dyncomp/families.hpp"
#include "dyncomp/geometry.hpp"
#include "dyncomp/io.hpp"
#include "dyncomp/lattice.hpp"
#include "dyncomp/sweep.hpp"
#include "dyncomp/tables.hpp"

using namespace dyncomp;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const std::string& id, const Outcome& o, double seconds, double limit) {
  const bool in_time = seconds < limit;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::ostringstream t;
  t.precision(2);
  t << std::fixed << seconds << "s / " << limit << "s";
  std::cout << (pass ? "PASS " : "FAIL ") << id << ": " << o.detail << " [" << t.str() << (in_time ? "" : ", too slow") << "]"
            << std::endl;
}

void info(const std::string& id, const std::string& detail) { std::cout << "INFO " << id << ": " << detail << std::endl; }

void run(const std::string& id, double limit, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  report(id, o, std::chrono::duration<double>(Clock::now() - start).count(), limit);
}

const BinomialPoly kQuadratic({11, -4, 1});

bool witnesses(const BinomialPoly& f, long m, long n) {
  return std::holds_alternative<CompressionWitness>(check_window(f, m, n));
}

// 1. T1 rows.
Outcome table1() {
  int ok = 0;
  std::string bad;
  for (const auto& r : tables::table1()) {
    if (witnesses(tables::record_binomial(r), r.m, r.n)) ++ok;
    else bad += " d=" + std::to_string(r.d);
  }
  return {ok == 9, std::to_string(ok) + "/9 T1 windows verified exactly" + bad};
}

// 2. r_d family for d <= 200.
Outcome rd_family() {
  const bool r2 = families::r_poly(2) == RationalPoly({BigRational(11), BigRational(-9, 2), BigRational(1, 2)});
  int ok = 0;
  for (int d = 2; d <= 200; ++d) {
    const auto f = families::r_binomial(d);
    if (f.degree() == d && to_monomial(f) == families::r_poly(d) && witnesses(f, d + 6, families::r_window_n(d))) ++ok;
  }
  return {r2 && ok == 199, std::to_string(ok) + "/199 degrees with r_d([d+6]) in [d+5 or d+4]; r_2 exact: " + (r2 ? "yes" : "no")};
}

// 3. rho and s_d identities; s_d by alternating sum vs interpolation from rho.
Outcome rho_and_s() {
  using families::rho;
  long bad_rho = 0;
  for (long m = -50; m <= 50; ++m)
    for (long d = -50; d <= 50; ++d) {
      const bool ok = rho(m + 3, d) == -rho(m, d) && rho(m, d + 1) == -rho(m + 1, d) && rho(m, d + 3) == rho(m, d) &&
                      rho(m + 1, d + 1) == rho(m, d) + rho(m, d + 1) && rho(m, d) == (d % 2 == 0 ? 1 : -1) * rho(d + 1 - m, d);
      if (!ok) ++bad_rho;
    }
  const RationalPoly neg_x({BigRational(0), BigRational(-1)});
  auto grid = [](long m, int d) -> BigRational { return BigRational(m) - make_rational(d + 1, 2); };
  long bad_s = 0;
  for (int d = 0; d <= 60; ++d) {
    const auto s = families::s_poly(d);
    bool ok = s.degree() == d && s.compose(neg_x) == (d % 2 == 0 ? s : -s) && centered_difference(families::s_poly(d + 1)) == s &&
              s(grid(d + 1, d)) == rho(d + 1, d) && s(grid(d + 2, d)) == rho(d + 2, d) + 1 &&
              s(grid(d + 3, d)) == rho(d + 3, d) + d + 2;
    if (!ok) ++bad_s;
  }
  long bad_interp = 0;
  for (int d = 0; d <= 40; ++d) {
    std::vector<BigRational> v;
    for (long m = 0; m <= d; ++m) v.emplace_back(rho(m, d));
    if (interpolate(std::span<const BigRational>(v), grid(0, d)) != families::s_poly(d)) ++bad_interp;
  }
  return {bad_rho + bad_s + bad_interp == 0, "rho failures " + std::to_string(bad_rho) + ", s_d failures " + std::to_string(bad_s) +
                                                 ", alternating sum vs interpolation mismatches " + std::to_string(bad_interp)};
}

// 4a. T2 for d = 3..15.
Outcome table2() {
  const auto rep = tables::verify_tables({"T2"}).front();
  std::string got;
  for (const auto& row : rep.rows) got += (got.empty() ? "" : ",") + row.computed;
  return {rep.pass() && rep.rows.size() == 13, "counts " + got};
}

// 4b. d = 2 depth search, stability under precision doubling.
Outcome depth_search() {
  dynamics::DepthSearchOptions opt;  // (2, 3), 128 bits, tol 1e-20
  const auto g = kQuadratic.plus_constant(1);
  const auto a = dynamics::common_preper_depth_search(kQuadratic, g, opt);
  auto doubled = opt;
  doubled.precision_bits *= 2;
  doubled.tol = opt.tol * opt.tol;
  const auto b = dynamics::common_preper_depth_search(kQuadratic, g, doubled);
  const bool stable = a.count == b.count;
  return {stable && a.count >= 26, "count " + std::to_string(a.count) + " at 128 bits, " + std::to_string(b.count) +
                                       " at 256 bits (need >= 26, stable: " + (stable ? "yes" : "no") + ")"};
}

// 5. dn - d + 1 <= total <= dn on random integer-valued polynomials.
Outcome preimage_bounds() {
  std::mt19937_64 rng(20260101);
  int ok = 0;
  for (int t = 0; t < 50; ++t) {
    const int d = 2 + static_cast<int>(rng() % 7);
    std::vector<BigInt> c(d + 1);
    for (auto& x : c) x = static_cast<long>(rng() % 41) - 20;
    if (c.back() == 0) c.back() = 1;
    const long n = 1 + static_cast<long>(rng() % 12);
    const auto pc = dynamics::preimage_count_exact(BinomialPoly(c), n);
    if (d * n - d + 1 <= pc.total && pc.total <= d * n) ++ok;
  }
  return {ok == 50, std::to_string(ok) + "/50 random polynomials within [dn-d+1, dn]"};
}

// 6. Default schedule reaches the T1 m for d = 2..9.
Outcome search_reproduction() {
  std::map<int, long> target;
  for (const auto& r : tables::table1()) target[r.d] = std::max(target[r.d], r.m);
  std::string detail;
  bool all = true;
  for (int d = 2; d <= 9; ++d) {
    const auto hit = lattice::search_schedule(d, lattice::default_k_max(d), lattice::default_delta());
    const long m = hit ? hit->witness.m : 0;
    const bool ok = hit && witnesses(hit->witness.poly, hit->witness.m, hit->witness.n) && m >= target[d];
    all = all && ok;
    detail += " d=" + std::to_string(d) + ":" + (hit ? "(" + std::to_string(m) + "," + std::to_string(hit->witness.n) + ")" : "none") +
              (ok ? "" : "!");
  }
  return {all, "schedule witnesses" + detail};
}

// 7. Sweep over degrees 11..40.
Outcome sweep_spot_check() {
  sweep::SweepOptions opt;
  opt.d_from = 11;
  opt.d_to = 40;
  opt.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::map<int, sweep::SweepRecord> last;
  sweep::run(opt, {}, [&](const std::vector<sweep::SweepRecord>& recs) {
    for (const auto& r : recs) last[r.d] = r;
  });
  int ok = 0;
  std::string bad;
  long min_margin = 1L << 30;
  for (int d = 11; d <= 40; ++d) {
    const auto it = last.find(d);
    const bool good = it != last.end() && it->second.found && *it->second.m >= d + 6 && sweep::reverify(it->second);
    if (good) {
      ++ok;
      min_margin = std::min(min_margin, *it->second.m - d);
    } else {
      bad += " " + std::to_string(d);
    }
  }
  return {ok == 30, std::to_string(ok) + "/30 degrees found with m >= d+6 (min m-d = " + std::to_string(min_margin) + ")" +
                        (bad.empty() ? "" : "; missing:" + bad)};
}

// 8a. L_{d,k} on random polynomials.
Outcome l_exactness() {
  std::mt19937_64 rng(88);
  long checked = 0, bad = 0;
  for (int d = 2; d <= 20; ++d)
    for (int k = 2; k <= 6; ++k) {
      const auto l = geometry::build_interpolation_matrix(d, k);
      for (int t = 0; t < 50; ++t) {
        std::vector<BigInt> c(d + 1);
        for (auto& x : c) x = static_cast<long>(rng() % 201) - 100;
        const BinomialPoly g(c);
        const auto v = g.values(0, d);
        for (int r = 0; r < k - 1; ++r) {
          BigInt s = 0;
          for (int j = 0; j <= d; ++j) s += l.entries[r][j] * v[j];
          ++checked;
          if (s != g(static_cast<long>(d + 1 + r))) ++bad;
        }
      }
    }
  return {bad == 0, std::to_string(checked) + " extrapolated values checked, " + std::to_string(bad) + " wrong"};
}

// 8b. max <= spectral <= Frobenius <= sqrt(rank) spectral.
Outcome norm_chain() {
  long checked = 0, bad = 0;
  auto check = [&](const lattice::IntMatrix& m) {
    const mpfr_prec_t bits = 128;
    const auto n = geometry::matrix_norms(m, bits);
    const BigFloat slack(1.0 + 1e-30, bits);
    const long rank = static_cast<long>(std::min(m.size(), m[0].size()));
    const bool ok = BigFloat(n.max, bits) <= n.spectral * slack && n.spectral <= n.frobenius * slack &&
                    n.frobenius <= sqrt(BigFloat(rank, bits)) * n.spectral * slack;
    ++checked;
    if (!ok) ++bad;
  };
  for (int d = 2; d <= 20; ++d)
    for (int k = 2; k <= 6; ++k) check(geometry::build_interpolation_matrix(d, k).entries);
  for (int d : {256, 512, 1024, 2048, 4096}) check(geometry::build_interpolation_matrix(d, std::max(2, geometry::minkowski_k(d))).entries);
  return {bad == 0, std::to_string(checked) + " matrices, " + std::to_string(bad) + " violations"};
}

// 8c. d = 2, ell = 2 diagnostic.
Outcome small_volume() {
  const auto r = geometry::minkowski_check_unchecked(2, 2, 2);
  const double vol = exp(r.log_volume).to_double();
  std::ostringstream s;
  s.precision(7);
  s << "volume " << vol << ", threshold " << exp(r.log_threshold).to_double() << ", holds " << (r.holds ? "true" : "false");
  return {!r.holds && std::abs(vol - 3.24) < 1e-2 && std::abs(vol - 3.2432885) < 1e-3, s.str()};
}

// 8d. Slope log Vol / d for ell = 2.
Outcome slope() {
  std::vector<double> slopes;
  std::ostringstream s;
  s.precision(4);
  for (int d : {256, 512, 1024, 2048, 4096}) {
    const auto r = geometry::minkowski_check(d, 2);
    slopes.push_back(r.log_volume.to_double() / d);
    s << "d=" << d << "(k=" << r.k << "):" << slopes.back() << " ";
  }
  const bool increasing = std::is_sorted(slopes.begin(), slopes.end(), std::less_equal<double>());
  const bool in_range = slopes.back() > std::log(2.0) && slopes.back() <= 0.726;
  s << "increasing: " << (increasing ? "yes" : "no") << ", last in (log 2, 0.726]: " << (in_range ? "yes" : "no");
  return {increasing && in_range, s.str()};
}

// 8e. Empirical D*, persisted next to the binary's working directory.
Outcome d_star() {
  const auto r = geometry::find_d_star(2, 2, 1000, 8);
  if (!r) return {false, "no D* in [2, 1000]"};
  io::Json j{{"ell", 2}, {"d_star", r->d_star}, {"sampled", r->sampled}};
  std::ofstream("d_star.json") << j.dump(2) << "\n";
  bool all = true;
  for (int d : r->sampled) all = all && geometry::minkowski_check_unchecked(d, std::max(2, geometry::minkowski_k(d)), 2).holds;
  return {all, "D* = " + std::to_string(r->d_star) + ", holds on " + std::to_string(r->sampled.size()) +
                   " sampled degrees in [D*, 4D*]; written to d_star.json"};
}

// 9. Reference quadratic dynamics.
Outcome dynamics_golden() {
  using namespace dynamics;
  const auto o1 = orbit(kQuadratic, 1, 100), o2 = orbit(kQuadratic, 2, 100), o9 = orbit(kQuadratic, 9, 100);
  auto is = [](const OrbitRecord& o, long pre, long per) {
    const auto* p = std::get_if<Periodic>(&o.outcome);
    return p && p->preperiod == pre && p->period == per;
  };
  std::vector<BigInt> one_to_eight;
  for (long i = 1; i <= 8; ++i) one_to_eight.emplace_back(i);
  const bool orbits = is(o1, 0, 3) && is(o2, 1, 3) && o9.escaped();
  const bool search = preper_search(kQuadratic, 100) == one_to_eight;
  const long pc = preimage_count_exact(kQuadratic, 7).total;
  const auto cb = common_preper_bound(kQuadratic, 8, 7);
  return {orbits && search && pc == 14 && cb.count == 14 && cb.floor == 13,
          std::string("orbits ") + (orbits ? "ok" : "wrong") + ", preperiodic integers " + (search ? "{1..8}" : "wrong") +
              ", preimages " + std::to_string(pc) + ", common bound (" + std::to_string(cb.count) + ", " + std::to_string(cb.floor) + ")"};
}

void depth_info() {
  dynamics::DepthSearchOptions opt;
  opt.max_pre = 4;
  const auto r = dynamics::common_preper_depth_search(kQuadratic, kQuadratic.plus_constant(1), opt);
  info("4 (d=2, deeper)", "depth search (max_pre, max_per) = (4, 3) gives count " + std::to_string(r.count));
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto want = [&](int n) { return only.empty() || only.count(n) > 0; };

  if (want(1)) run("1 T1 golden suite", 1, table1);
  if (want(2)) run("2 r_d family, d <= 200", 10, rd_family);
  if (want(3)) run("3 rho / s_d property suite", 30, rho_and_s);
  if (want(4)) {
    run("4 T2 reproduction, d = 3..15", 60, table2);
    run("4 d = 2 depth search (2, 3) >= 26", 60, depth_search);
    depth_info();
  }
  if (want(5)) run("5 preimage count bounds", 10, preimage_bounds);
  if (want(6)) run("6 search reproduction, d = 2..9", 300, search_reproduction);
  if (want(7)) run("7 sweep spot check, d = 11..40", 900, sweep_spot_check);
  if (want(8)) {
    run("8a L_{d,k} exactness", 600, l_exactness);
    run("8b norm chain", 600, norm_chain);
    run("8c d = 2 volume diagnostic", 600, small_volume);
    run("8d volume slope", 600, slope);
    run("8e empirical D*", 600, d_star);
  }
  if (want(9)) run("9 dynamics golden suite", 1, dynamics_golden);

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " check(s) failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
