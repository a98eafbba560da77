// Parallel degree sweep over the lattice search, persisted as JSONL.
#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "dyncomp/arith.hpp"
#include "dyncomp/io.hpp"

namespace dyncomp::sweep {

struct SweepRecord {
  int d = 0;
  int k = 0;
  bool found = false;
  std::optional<long> m;
  std::optional<long> n;
  std::optional<bool> strict;
  std::optional<std::vector<BigInt>> coeffs;  // binomial basis
  long elapsed_ms = 0;
  std::optional<std::string> error;
};

io::Json to_json(const SweepRecord& r);
/// Throws io::FormatError on a malformed line.
SweepRecord record_from_json(const io::Json& j);

/// Re-checks a found record from its coefficients alone.
bool reverify(const SweepRecord& r);

struct SweepOptions {
  int d_from = 2;
  int d_to = 2;
  std::optional<int> k_max;  // default: lattice::default_k_max(d)
  int k_min = 2;
  int jobs = 1;
  BigRational delta = BigRational(3, 4);
  bool timing = true;  // false writes elapsed_ms = 0 for byte-stable output
};

/// All (d, k) records for one degree: k from k_max down to k_min, stopping
/// after the first k that yields a witness.
std::vector<SweepRecord> sweep_degree(int d, const SweepOptions& options);

/// Runs degrees d_from..d_to, skipping `skip`, on `jobs` workers. Records are
/// handed to `sink` in (d, k) order, one degree at a time.
void run(const SweepOptions& options, const std::set<int>& skip,
         const std::function<void(const std::vector<SweepRecord>&)>& sink);

/// Degrees already present in a JSONL file (missing file: empty). A trailing
/// partial line is ignored.
std::set<int> completed_degrees(const std::string& path);

/// Appends to `path`, resuming past degrees already recorded there.
void run_to_file(const SweepOptions& options, const std::string& path);

}  // namespace dyncomp::sweep
