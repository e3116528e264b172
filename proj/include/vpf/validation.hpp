#pragma once

#include <chrono>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "vpf/enumerator.hpp"
#include "vpf/output.hpp"
#include "vpf/recurrence.hpp"

namespace vpf {

struct CheckResult {
  std::string check_id;
  std::map<std::string, long long> parameters;
  std::string expected;
  std::string actual;
  bool passed = false;
  std::chrono::duration<double, std::milli> elapsed{0};

  // "n=3;k=2", keys in lexicographic order.
  std::string parameter_text() const;
};

struct VerificationReport {
  // Sorted by check_id, then parameters.
  std::vector<CheckResult> checks;
  bool overall = true;

  std::size_t failed() const;
};

struct VerifyParams {
  int n_brute_max = 7;
  int n_rec_max = 40;
  int k_max = 7;
};

// Largest n at which monotone tuples are cross-checked by exhaustive scan.
inline constexpr int kMonotoneBruteMax = 12;

// Runs every cross-check between the brute-force, recurrence, product-formula
// and closed-form counting paths. A failing check is recorded, not thrown;
// only out-of-range parameters throw (InputError).
VerificationReport verify_suite(const VerifyParams& params, const EnumConfig& config = {});

void write_report(const VerificationReport& report, OutputFormat format, std::ostream& out);

// (n, count) for n = 1..n_max of a family with no per-car index.
std::vector<std::pair<int, std::string>> sequence_table(CountFamily::Kind family, int n_max);

}  // namespace vpf
