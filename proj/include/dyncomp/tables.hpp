// Published low-degree records, embedded verbatim, and their verification.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dyncomp/arith.hpp"

namespace dyncomp::tables {

/// f = (Σ numerator[i] x^i) / denominator with window f([m]) ⊆ [n].
struct CompressionRecord {
  int d;
  long m;
  long n;
  std::vector<long long> numerator;  // ascending powers
  long long denominator;
};

struct InterpolationRecord {
  int d;
  std::vector<long> values;  // f(1), ..., f(d+1)
};

const std::vector<CompressionRecord>& table1();
/// (d, lower bound) for d = 2..15.
const std::vector<std::pair<int, long>>& table2();
const std::vector<InterpolationRecord>& table3();

RationalPoly record_polynomial(const CompressionRecord& r);
BinomialPoly record_binomial(const CompressionRecord& r);
BinomialPoly record_binomial(const InterpolationRecord& r);

/// FNV-1a over a canonical rendering of all three tables.
std::uint64_t checksum();
/// The checksum recorded when the tables were transcribed.
std::uint64_t expected_checksum();

struct TableRow {
  std::string inputs;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct TableReport {
  std::string table_id;  // "T1", "T2", "T3"
  std::vector<TableRow> rows;
  bool pass() const;
};

/// Largest m searched by best_window for the T2 and T3 pipelines.
constexpr long kWindowCap = 64;

/// T1: each row verifies its window exactly.
/// T2: for d = 3..15 the polynomial (r_d for d = 3, 7; T1 for 4..6, 8, 9;
///     T3 for 10..15) goes through best_window to f([m]) ⊆ [m-1] and the
///     exact preimage count of [m-1] must equal the entry. d = 2 is not here
///     (it needs the depth search).
/// T3: each interpolated polynomial has degree d, reproduces its values, and
///     admits a strict window.
/// Unknown ids throw std::invalid_argument.
std::vector<TableReport> verify_tables(const std::vector<std::string>& selector);

}  // namespace dyncomp::tables
