#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "vpf/bigint.hpp"
#include "vpf/rule_engine.hpp"

namespace vpf {

enum class EnumFilter { All, NonDecreasing, NonIncreasing };

const char* to_string(EnumFilter filter);

// Name of the environment variable holding the default worker count.
inline constexpr const char* kWorkersEnvVar = "VPF_WORKERS";

struct EnumConfig {
  unsigned workers = 1;
  // Largest n scanned exhaustively over [n]^n.
  int max_n_all = 9;
  // Largest n for generative monotone scans (at most C(2n-1, n) tuples).
  int max_n_monotone = 16;
  // Largest n for the permutation-invariance scan.
  int max_n_invariant = 6;

  // Defaults, with `workers` taken from VPF_WORKERS or the number of logical
  // processors.
  static EnumConfig from_environment();
};

// Throws ResourceLimitError when n exceeds the ceiling for `filter`.
void check_enumeration_budget(int n, EnumFilter filter, const EnumConfig& config);

// |{a in [n]^n : a passes filter and parks under rule}|. n = 0 counts the
// empty tuple and ignores the rule.
BigInt count_brute(int n, const Rule& rule, EnumFilter filter, const EnumConfig& config = {});

// A passing tuple and the spot each car took (spots[c - 1] for car c).
struct EnumeratedList {
  PreferenceList prefs;
  std::vector<int> spots;
};

using EnumSink = std::function<void(const EnumeratedList&)>;

// Streams passing tuples to `sink` in strict lexicographic order, stopping
// after `limit` items if given. Returns the number delivered.
std::size_t enumerate(int n, const Rule& rule, EnumFilter filter, std::optional<std::size_t> limit,
                      const EnumSink& sink, const EnumConfig& config = {});

std::vector<PreferenceList> enumerate_lists(int n, const Rule& rule, EnumFilter filter,
                                            std::optional<std::size_t> limit = std::nullopt,
                                            const EnumConfig& config = {});

// Per-car breakdown of 1-vacillating parking functions of length n by who
// ends up in spot n. Indices are cars, 1..n.
class SubsetTally {
public:
  explicit SubsetTally(int n);

  int n() const { return n_; }
  BigInt by_spot(int car) const { return by_paren(car) + by_bracket(car); }
  const BigInt& by_paren(int car) const;
  const BigInt& by_bracket(int car) const;
  BigInt total() const;

  void add_paren(int car, const BigInt& count);
  void add_bracket(int car, const BigInt& count);

private:
  int n_;
  std::vector<BigInt> paren_;
  std::vector<BigInt> bracket_;
};

SubsetTally tally_subsets(int n, const EnumConfig& config = {});

struct InvariantScan {
  std::vector<PreferenceList> members;
  std::size_t count = 0;
};

// Members of VPF_n(k) every rearrangement of which is also in VPF_n(k).
InvariantScan permutation_invariant_scan(int n, int k, const EnumConfig& config = {});

}  // namespace vpf
