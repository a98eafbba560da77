#include "dyncomp/sweep.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "dyncomp/compression.hpp"
#include "dyncomp/lattice.hpp"

namespace dyncomp::sweep {

io::Json to_json(const SweepRecord& r) {
  io::Json j{{"d", r.d}, {"k", r.k}, {"found", r.found}};
  if (r.m) j["m"] = *r.m;
  if (r.n) j["n"] = *r.n;
  if (r.strict) j["strict"] = *r.strict;
  if (r.coeffs) {
    io::Json c = io::Json::array();
    for (const auto& a : *r.coeffs) c.push_back(a.get_str());
    j["coeffs"] = c;
  }
  j["elapsed_ms"] = r.elapsed_ms;
  if (r.error) j["error"] = *r.error;
  return j;
}

SweepRecord record_from_json(const io::Json& j) {
  try {
    SweepRecord r;
    r.d = j.at("d").get<int>();
    r.k = j.at("k").get<int>();
    r.found = j.at("found").get<bool>();
    if (j.contains("m")) r.m = j["m"].get<long>();
    if (j.contains("n")) r.n = j["n"].get<long>();
    if (j.contains("strict")) r.strict = j["strict"].get<bool>();
    if (j.contains("coeffs")) {
      std::vector<BigInt> c;
      for (const auto& v : j["coeffs"]) c.push_back(io::parse_int(v.get<std::string>()));
      r.coeffs = std::move(c);
    }
    r.elapsed_ms = j.at("elapsed_ms").get<long>();
    if (j.contains("error")) r.error = j["error"].get<std::string>();
    return r;
  } catch (const io::Json::exception& e) {
    throw io::FormatError(std::string("bad sweep record: ") + e.what());
  }
}

bool reverify(const SweepRecord& r) {
  if (!r.found) return true;
  if (!r.m || !r.n || !r.coeffs) return false;
  const auto check = check_window(BinomialPoly(*r.coeffs), *r.m, *r.n);
  return std::holds_alternative<CompressionWitness>(check);
}

std::vector<SweepRecord> sweep_degree(int d, const SweepOptions& options) {
  const int k_max = options.k_max.value_or(lattice::default_k_max(d));
  std::vector<SweepRecord> out;
  for (int k = k_max; k >= options.k_min; --k) {
    SweepRecord rec;
    rec.d = d;
    rec.k = k;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto witnesses = lattice::search(d, k, options.delta);
      if (const auto* best = lattice::best_of(witnesses)) {
        rec.found = true;
        rec.m = best->m;
        rec.n = best->n;
        rec.strict = best->strict();
        rec.coeffs = best->poly.coeffs();
      }
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    if (options.timing)
      rec.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(rec));
    if (out.back().found) break;
  }
  return out;
}

void run(const SweepOptions& options, const std::set<int>& skip,
         const std::function<void(const std::vector<SweepRecord>&)>& sink) {
  if (options.d_from < 2 || options.d_to < options.d_from) throw std::invalid_argument("need 2 <= from <= to");
  if (options.jobs < 1) throw std::invalid_argument("jobs must be positive");
  std::vector<int> degrees;
  for (int d = options.d_from; d <= options.d_to; ++d)
    if (!skip.contains(d)) degrees.push_back(d);

  std::mutex mu;
  std::condition_variable ready;
  std::map<std::size_t, std::vector<SweepRecord>> done;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= degrees.size()) return;
      auto recs = sweep_degree(degrees[i], options);
      {
        std::lock_guard lock(mu);
        done.emplace(i, std::move(recs));
      }
      ready.notify_one();
    }
  };
  std::vector<std::jthread> pool;
  const int n_workers = std::min<int>(options.jobs, static_cast<int>(std::max<std::size_t>(degrees.size(), 1)));
  for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);

  // Single writer: emit degrees strictly in order as they complete.
  for (std::size_t emit = 0; emit < degrees.size(); ++emit) {
    std::vector<SweepRecord> recs;
    {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return done.contains(emit); });
      recs = std::move(done[emit]);
      done.erase(emit);
    }
    sink(recs);
  }
}

std::set<int> completed_degrees(const std::string& path) {
  std::set<int> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.insert(record_from_json(io::Json::parse(line)).d);
    } catch (const std::exception&) {
      if (in.peek() != std::char_traits<char>::eof()) throw io::FormatError("corrupt line in '" + path + "'");
    }
  }
  return out;
}

void run_to_file(const SweepOptions& options, const std::string& path) {
  const auto skip = completed_degrees(path);
  {
    // Drop a trailing partial line left by an interrupted run.
    std::ifstream in(path, std::ios::binary);
    if (in) {
      std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      if (!content.empty() && content.back() != '\n') {
        content.erase(content.find_last_of('\n') == std::string::npos ? 0 : content.find_last_of('\n') + 1);
        in.close();
        std::ofstream rewrite(path, std::ios::binary | std::ios::trunc);
        rewrite << content;
      }
    }
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  run(options, skip, [&](const std::vector<SweepRecord>& recs) {
    std::string block;
    for (const auto& r : recs) block += to_json(r).dump() + "\n";
    out << block;
    out.flush();
  });
}

}  // namespace dyncomp::sweep
