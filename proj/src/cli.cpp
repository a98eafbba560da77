#include "dyncomp/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "dyncomp/compression.hpp"
#include "dyncomp/dynamics.hpp"
#include "dyncomp/families.hpp"
#include "dyncomp/geometry.hpp"
#include "dyncomp/io.hpp"
#include "dyncomp/lattice.hpp"
#include "dyncomp/sweep.hpp"
#include "dyncomp/tables.hpp"

namespace dyncomp::cli {

using io::Json;

namespace {

constexpr const char* kPrecisionEnv = "DYNCOMP_PRECISION";

struct Malformed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string float_string(const BigFloat& x, int digits = 20) { return x.to_string(digits); }

Json witness_json(const CompressionWitness& w, std::optional<int> k = std::nullopt) {
  Json j = io::to_json(w);
  if (k) j["k"] = *k;
  return j;
}

int cmd_family_rd(long degree, std::ostream& out) {
  if (degree < 0) throw Malformed("--degree must be nonnegative");
  const int d = static_cast<int>(degree);
  const BinomialPoly f = families::r_binomial(d);
  Json values = Json::array();
  for (long x = 1; x <= d + 6; ++x) values.push_back(f(x).get_str());
  Json j{{"family", "r"},
         {"degree", d},
         {"poly", io::to_json(f)},
         {"monomial", io::to_json(families::r_poly(d))},
         {"window", {{"m", d + 6}, {"n", families::r_window_n(d)}}},
         {"values", values}};
  out << j.dump(2) << "\n";
  return kPass;
}

int cmd_verify(const std::string& path, long m, long n, std::ostream& out) {
  const BinomialPoly f = io::read_binomial(path);
  if (m < 1 || n < 1) throw Malformed("--m and --n must be positive");
  const auto check = check_window(f, m, n);
  if (const auto* w = std::get_if<CompressionWitness>(&check)) {
    Json j = witness_json(*w);
    j["verified"] = true;
    out << j.dump(2) << "\n";
    return kPass;
  }
  Json j = io::to_json(std::get<WindowRefutation>(check));
  j["verified"] = false;
  j["m"] = m;
  j["n"] = n;
  out << j.dump(2) << "\n";
  return kMismatch;
}

BigRational parse_delta(const std::string& s) {
  const BigRational delta = io::parse_rational(s);
  if (delta <= BigRational(1, 4) || delta >= 1) throw Malformed("--delta must lie in (1/4, 1)");
  return delta;
}

int cmd_search(long degree, std::optional<long> k, std::optional<long> k_max, const std::string& delta_s, std::ostream& out) {
  if (degree < 2) throw Malformed("--degree must be at least 2");
  const BigRational delta = parse_delta(delta_s);
  const int d = static_cast<int>(degree);
  Json list = Json::array();
  if (k) {
    if (*k < 1) throw Malformed("--k must be positive");
    for (const auto& w : lattice::search(d, static_cast<int>(*k), delta)) list.push_back(witness_json(w, static_cast<int>(*k)));
  } else {
    const int top = static_cast<int>(k_max.value_or(lattice::default_k_max(d)));
    if (top < 2) throw Malformed("--k-max must be at least 2");
    for (int kk = top; kk >= 2; --kk) {
      const auto ws = lattice::search(d, kk, delta);
      if (ws.empty()) continue;
      for (const auto& w : ws) list.push_back(witness_json(w, kk));
      break;
    }
  }
  out << list.dump(2) << "\n";
  return kPass;
}

int cmd_sweep(long from, long to, std::optional<long> k_max, long jobs, const std::string& path, const std::string& delta_s,
              bool no_timing) {
  sweep::SweepOptions opt;
  if (from < 2) throw Malformed("--from must be at least 2");
  if (jobs < 1) throw Malformed("--jobs must be positive");
  if (k_max && *k_max < 2) throw Malformed("--k-max must be at least 2");
  opt.d_from = static_cast<int>(from);
  opt.d_to = static_cast<int>(to);
  if (k_max) opt.k_max = static_cast<int>(*k_max);
  opt.jobs = static_cast<int>(jobs);
  opt.delta = parse_delta(delta_s);
  opt.timing = !no_timing;
  if (to < from) {
    // Empty range: nothing to do, but the output file still exists.
    std::ofstream touch(path, std::ios::app);
    return kPass;
  }
  sweep::run_to_file(opt, path);
  return kPass;
}

Json minkowski_json(const geometry::MinkowskiResult& r, mpfr_prec_t bits) {
  Json sig = Json::array();
  for (const auto& s : r.sigmas) sig.push_back(float_string(s));
  return Json{{"d", r.d},
              {"k", r.k},
              {"ell", r.ell},
              {"precision", bits},
              {"log_volume", r.log_volume.to_double()},
              {"log_volume_digits", float_string(r.log_volume, 30)},
              {"log_threshold", r.log_threshold.to_double()},
              {"holds", r.holds},
              {"pairs", r.pairs.get_str()},
              {"sigmas", sig}};
}

int cmd_volume(std::optional<long> degree, long ell, std::optional<long> k, std::optional<long> precision, bool find_d_star,
               long lo, long hi, long samples, const std::string& out_path, std::ostream& out) {
  if (ell < 2) throw Malformed("--ell must be at least 2");
  if (find_d_star) {
    auto res = geometry::find_d_star(static_cast<int>(ell), static_cast<int>(lo), static_cast<int>(hi), static_cast<int>(samples));
    Json j{{"ell", ell}, {"found", res.has_value()}};
    if (res) {
      j["d_star"] = res->d_star;
      j["sampled"] = res->sampled;
    }
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) throw std::runtime_error("cannot write '" + out_path + "'");
      f << j.dump(2) << "\n";
    }
    out << j.dump(2) << "\n";
    return res ? kPass : kMismatch;
  }
  if (!degree) throw Malformed("--degree is required");
  if (*degree < 2) throw Malformed("--degree must be at least 2");
  const int d = static_cast<int>(*degree);
  const int kk = k ? static_cast<int>(*k) : geometry::minkowski_k(d);
  if (!k && kk < ell) throw Malformed("floor(log16 d) < ell; pass --k for the unchecked variant");
  if (kk < ell) throw Malformed("--k must be at least --ell");
  const mpfr_prec_t bits = static_cast<mpfr_prec_t>(precision.value_or(default_precision(geometry::default_precision(d, kk))));
  if (bits < 64) throw Malformed("--precision must be at least 64");
  const auto r = k ? geometry::minkowski_check_unchecked(d, kk, static_cast<int>(ell), bits)
                   : geometry::minkowski_check(d, static_cast<int>(ell), bits);
  Json j = minkowski_json(r, bits);
  j["checked"] = !k.has_value();
  out << j.dump(2) << "\n";
  return kPass;
}

int cmd_preimage_count(const std::string& path, long n, std::ostream& out) {
  const BinomialPoly f = io::read_binomial(path);
  if (f.degree() < 2) throw Malformed("polynomial degree must be at least 2");
  if (n < 1) throw Malformed("--n must be positive");
  const auto pc = dynamics::preimage_count_exact(f, n);
  Json j{{"degree", pc.degree},
         {"n", pc.n},
         {"per_fiber", pc.per_fiber},
         {"ramification_deficit", pc.ramification_deficit},
         {"total", pc.total},
         {"floor", static_cast<long>(pc.degree) * n - pc.degree + 1}};
  out << j.dump(2) << "\n";
  return kPass;
}

int cmd_common(const std::string& path, long m, long n, std::ostream& out) {
  const BinomialPoly f = io::read_binomial(path);
  if (m < 1 || n < 1) throw Malformed("--m and --n must be positive");
  const auto check = check_window(f, m, n);
  const auto* w = std::get_if<CompressionWitness>(&check);
  if (w == nullptr || !w->strict()) {
    Json j{{"m", m}, {"n", n}, {"verified", false}};
    if (w == nullptr) j.update(io::to_json(std::get<WindowRefutation>(check)));
    else j["reason"] = "not_strict";
    out << j.dump(2) << "\n";
    return kMismatch;
  }
  const auto b = dynamics::common_preper_bound(f, m, n);
  out << Json{{"m", m}, {"n", n}, {"verified", true}, {"shifts", m - n + 1}, {"count", b.count}, {"floor", b.floor}}.dump(2) << "\n";
  return kPass;
}

int cmd_common_depth(const std::string& path, long shift, long max_pre, long max_per, std::optional<long> precision,
                     double tol, std::ostream& out) {
  const BinomialPoly f = io::read_binomial(path);
  if (f.degree() < 2) throw Malformed("polynomial degree must be at least 2");
  dynamics::DepthSearchOptions opt;
  opt.max_pre = static_cast<int>(max_pre);
  opt.max_per = static_cast<int>(max_per);
  opt.precision_bits = static_cast<mpfr_prec_t>(precision.value_or(default_precision(128)));
  opt.tol = tol;
  if (opt.max_pre < 0 || opt.max_per < 1) throw Malformed("need --max-pre >= 0 and --max-per >= 1");
  if (opt.precision_bits < 64) throw Malformed("--precision must be at least 64");
  if (!(tol > 0)) throw Malformed("--tol must be positive");
  const auto res = dynamics::common_preper_depth_search(f, f.plus_constant(BigInt(shift)), opt);
  Json layers = Json::array();
  for (const auto& l : res.layers) layers.push_back({{"a", l.a}, {"c", l.c}, {"roots", l.roots}, {"retained", l.retained}});
  Json points = Json::array();
  for (const auto& p : res.points) points.push_back({{"re", float_string(p.re, 25)}, {"im", float_string(p.im, 25)}});
  Json j{{"shift", shift},
         {"max_pre", max_pre},
         {"max_per", max_per},
         {"precision", opt.precision_bits},
         {"tol", tol},
         {"heuristic", res.heuristic},
         {"count", res.count},
         {"layers", layers},
         {"points", points}};
  out << j.dump(2) << "\n";
  return kPass;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

int cmd_verify_tables(const std::string& selector, std::ostream& out) {
  std::vector<std::string> ids;
  std::stringstream ss(selector);
  for (std::string id; std::getline(ss, id, ',');)
    if (!id.empty()) ids.push_back(id);
  if (ids.empty()) throw Malformed("--tables must name at least one of T1,T2,T3");
  for (const auto& id : ids)
    if (id != "T1" && id != "T2" && id != "T3") throw Malformed("unknown table '" + id + "'");
  const bool checksum_ok = tables::checksum() == tables::expected_checksum();
  bool all = checksum_ok;
  Json reports = Json::array();
  for (const auto& rep : tables::verify_tables(ids)) {
    Json rows = Json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"inputs", r.inputs}, {"expected", r.expected}, {"computed", r.computed}, {"pass", r.pass}});
    reports.push_back({{"table_id", rep.table_id}, {"pass", rep.pass()}, {"rows", rows}});
    all = all && rep.pass();
  }
  Json j{{"checksum", hex64(tables::checksum())}, {"checksum_ok", checksum_ok}, {"pass", all}, {"reports", reports}};
  out << j.dump(2) << "\n";
  return all ? kPass : kMismatch;
}

int cmd_dump_values(const std::string& path, long from, long to, std::ostream& out) {
  const Polynomial f = io::read_polynomial(path);
  if (to < from) throw Malformed("--to must be at least --from");
  out << "x,f(x)\n";
  for (long x = from; x <= to; ++x) out << x << ',' << eval(f, BigRational(x)).get_str() << '\n';
  return kPass;
}

}  // namespace

long default_precision(long fallback) {
  const char* env = std::getenv(kPrecisionEnv);
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 64) throw std::invalid_argument(std::string(kPrecisionEnv) + " must be an integer >= 64");
  return v;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamical compression toolkit: exact search and verification of f([m]) in [n]"};
  app.name("dyncomp");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto* family = app.add_subcommand("family", "Explicit polynomial families");
  family->require_subcommand(1);
  auto* rd = family->add_subcommand("rd", "The r_d family: r_d([d+6]) in [d+5] (even d) or [d+4] (odd d)");
  long rd_degree = 0;
  rd->add_option("--degree", rd_degree, "Degree d")->required();

  std::string poly_path;
  long m = 0, n = 0;
  auto* verify = app.add_subcommand("verify", "Check f([m]) in [n]; exit 1 on refutation");
  verify->add_option("--poly", poly_path, "Polynomial JSON file")->required();
  verify->add_option("--m", m, "Domain bound m")->required();
  verify->add_option("--n", n, "Range bound n")->required();

  long degree = 0;
  std::optional<long> k, k_max;
  std::string delta = "3/4";
  auto* search = app.add_subcommand("search", "LLL search on the value lattice");
  search->add_option("--degree", degree, "Degree d")->required();
  search->add_option("--k", k, "Extension length k (default: descending schedule)");
  search->add_option("--k-max", k_max, "Largest k in the schedule (default floor(log2 d) + 8)");
  search->add_option("--delta", delta, "LLL parameter p/q in (1/4, 1)");

  long from = 2, to = 2, jobs = 1;
  std::string out_path;
  bool no_timing = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Search a range of degrees, appending JSONL records");
  sweep_cmd->add_option("--from", from, "First degree")->required();
  sweep_cmd->add_option("--to", to, "Last degree")->required();
  sweep_cmd->add_option("--k-max", k_max, "Largest k tried per degree (default floor(log2 d) + 8)");
  sweep_cmd->add_option("--jobs", jobs, "Worker threads");
  sweep_cmd->add_option("--out", out_path, "Output JSONL file (resumed if present)")->required();
  sweep_cmd->add_option("--delta", delta, "LLL parameter p/q in (1/4, 1)");
  sweep_cmd->add_flag("--no-timing", no_timing, "Write elapsed_ms = 0 so reruns are byte-identical");

  std::optional<long> vol_degree, precision;
  long ell = 2, lo = 2, hi = 4096, samples = 8;
  bool find_d_star = false;
  auto* volume = app.add_subcommand("volume", "Ellipsoid volume and the Minkowski threshold");
  volume->add_option("--degree", vol_degree, "Degree d (k = floor(log16 d) unless --k)");
  volume->add_option("--ell", ell, "Range slack ell");
  volume->add_option("--k", k, "Explicit k: unchecked small-d variant");
  volume->add_option("--precision", precision, "Working precision in bits");
  volume->add_flag("--find-d-star", find_d_star, "Search for D* with the check holding on [D*, 4 D*]");
  volume->add_option("--from", lo, "Lower end of the D* search");
  volume->add_option("--to", hi, "Upper end of the D* search");
  volume->add_option("--samples", samples, "Degrees sampled in [D*, 4 D*]");
  volume->add_option("--out", out_path, "Also write the D* result to this file");

  auto* preimage = app.add_subcommand("preimage-count", "Exact count of f^-1([n]) with ramification");
  preimage->add_option("--poly", poly_path, "Polynomial JSON file")->required();
  preimage->add_option("--n", n, "Fiber range n")->required();

  auto* common = app.add_subcommand("common", "Certified common preperiodic count for f, f+1, ..., f+m-n");
  common->add_option("--poly", poly_path, "Polynomial JSON file")->required();
  common->add_option("--m", m, "Domain bound m")->required();
  common->add_option("--n", n, "Range bound n")->required();

  long shift = 1, max_pre = 2, max_per = 3;
  double tol = 1e-20;
  auto* depth = app.add_subcommand("common-depth", "Numerical common preperiodic points of f and f + shift");
  depth->add_option("--poly", poly_path, "Polynomial JSON file")->required();
  depth->add_option("--shift", shift, "Integer shift I, g = f + I");
  depth->add_option("--max-pre", max_pre, "Largest preperiod a");
  depth->add_option("--max-per", max_per, "Largest period c");
  depth->add_option("--precision", precision, "Target precision in bits");
  depth->add_option("--tol", tol, "Deduplication tolerance");

  std::string selector = "T1,T2,T3";
  auto* vt = app.add_subcommand("verify-tables", "Check the embedded low-degree tables");
  vt->add_option("--tables", selector, "Comma-separated subset of T1,T2,T3");

  auto* dump = app.add_subcommand("dump-values", "CSV of (x, f(x))");
  dump->add_option("--poly", poly_path, "Polynomial JSON file")->required();
  dump->add_option("--from", from, "First x")->required();
  dump->add_option("--to", to, "Last x")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  }

  try {
    if (*rd) return cmd_family_rd(rd_degree, out);
    if (*verify) return cmd_verify(poly_path, m, n, out);
    if (*search) return cmd_search(degree, k, k_max, delta, out);
    if (*sweep_cmd) return cmd_sweep(from, to, k_max, jobs, out_path, delta, no_timing);
    if (*volume) return cmd_volume(vol_degree, ell, k, precision, find_d_star, lo, hi, samples, out_path, out);
    if (*preimage) return cmd_preimage_count(poly_path, n, out);
    if (*common) return cmd_common(poly_path, m, n, out);
    if (*depth) return cmd_common_depth(poly_path, shift, max_pre, max_per, precision, tol, out);
    if (*vt) return cmd_verify_tables(selector, out);
    if (*dump) return cmd_dump_values(poly_path, from, to, out);
  } catch (const Malformed& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kMismatch;
  }
  return kMalformed;
}

}  // namespace dyncomp::cli
