#include "vpf/enumerator.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>

#include "vpf/errors.hpp"

namespace vpf {

const char* to_string(EnumFilter filter) {
  switch (filter) {
    case EnumFilter::All: return "all";
    case EnumFilter::NonDecreasing: return "nondecreasing";
    case EnumFilter::NonIncreasing: return "nonincreasing";
  }
  return "?";
}

EnumConfig EnumConfig::from_environment() {
  EnumConfig config;
  unsigned workers = std::thread::hardware_concurrency();
  if (const char* env = std::getenv(kWorkersEnvVar); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != nullptr && *end == '\0' && parsed > 0) workers = static_cast<unsigned>(parsed);
  }
  config.workers = std::max(1U, workers);
  return config;
}

void check_enumeration_budget(int n, EnumFilter filter, const EnumConfig& config) {
  if (n < 0) throw InputError("n must be nonnegative, got " + std::to_string(n));
  const int ceiling = filter == EnumFilter::All ? config.max_n_all : config.max_n_monotone;
  if (n > ceiling) {
    throw ResourceLimitError("refusing exhaustive scan at n = " + std::to_string(n) + " with filter " +
                             to_string(filter) + ": the ceiling is " + std::to_string(ceiling) +
                             " (an unfiltered scan visits n^n tuples); raise the ceiling to override");
  }
}

namespace {

// Depth-first walk over tuples passing `filter`, parking each car as its
// preference is fixed. Subtrees under a car that cannot park are skipped:
// every tuple below them fails at that car.
class Walker {
public:
  Walker(int n, const Rule& rule, EnumFilter filter)
      : n_(n), rule_(rule), filter_(filter), street_(n) {
    prefs_.reserve(static_cast<std::size_t>(n));
    spots_.reserve(static_cast<std::size_t>(n));
  }

  // Parks the cars of `prefix`; false if one of them fails.
  bool seed(std::span<const int> prefix) {
    for (int pref : prefix) {
      const auto spot = street_.park(pref, rule_);
      if (!spot) return false;
      prefs_.push_back(pref);
      spots_.push_back(*spot);
    }
    return true;
  }

  // Calls visit(prefs, spots) for each passing extension to length `depth`;
  // visit returns false to stop the walk.
  template <class Visit>
  bool walk(int depth, Visit& visit) {
    const int car = static_cast<int>(prefs_.size());
    if (car == depth) return visit(std::span<const int>(prefs_), std::span<const int>(spots_));

    int lo = 1;
    int hi = n_;
    if (car > 0 && filter_ == EnumFilter::NonDecreasing) lo = prefs_.back();
    if (car > 0 && filter_ == EnumFilter::NonIncreasing) hi = prefs_.back();
    for (int pref = lo; pref <= hi; ++pref) {
      const auto spot = street_.park(pref, rule_);
      if (!spot) continue;
      prefs_.push_back(pref);
      spots_.push_back(*spot);
      const bool keep_going = walk(depth, visit);
      prefs_.pop_back();
      spots_.pop_back();
      street_.vacate(*spot);
      if (!keep_going) return false;
    }
    return true;
  }

private:
  int n_;
  Rule rule_;
  EnumFilter filter_;
  Street street_;
  std::vector<int> prefs_;
  std::vector<int> spots_;
};

// Fixed-length tuple prefixes that split the scan into independent tasks.
// The prefix length is the least d with n^d >= 64 * workers, capped at n.
std::vector<std::vector<int>> task_prefixes(int n, const Rule& rule, EnumFilter filter, unsigned workers) {
  const std::uint64_t target = 64ULL * std::max(1U, workers);
  int depth = 0;
  std::uint64_t cells = 1;
  while (depth < n && cells < target) {
    cells *= static_cast<std::uint64_t>(n);
    ++depth;
  }

  std::vector<std::vector<int>> prefixes;
  Walker walker(n, rule, filter);
  auto collect = [&](std::span<const int> prefs, std::span<const int>) {
    prefixes.emplace_back(prefs.begin(), prefs.end());
    return true;
  };
  walker.walk(depth, collect);
  return prefixes;
}

template <class Fn>
void parallel_for(std::size_t begin, std::size_t end, unsigned workers, Fn&& fn) {
  if (begin >= end) return;
  const std::size_t threads = std::min<std::size_t>(std::max(1U, workers), end - begin);
  if (threads == 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{begin};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < end; i = next++) fn(i);
    });
  }
}

void validate_scan(int n, const Rule& rule, EnumFilter filter, const EnumConfig& config) {
  check_enumeration_budget(n, filter, config);
  if (n > 0) rule.validate_for(n);
}

}  // namespace

BigInt count_brute(int n, const Rule& rule, EnumFilter filter, const EnumConfig& config) {
  validate_scan(n, rule, filter, config);
  if (n == 0) return 1;

  const auto prefixes = task_prefixes(n, rule, filter, config.workers);
  std::vector<std::uint64_t> counts(prefixes.size(), 0);
  parallel_for(0, prefixes.size(), config.workers, [&](std::size_t task) {
    Walker walker(n, rule, filter);
    walker.seed(prefixes[task]);
    std::uint64_t count = 0;
    auto tick = [&](std::span<const int>, std::span<const int>) {
      ++count;
      return true;
    };
    walker.walk(n, tick);
    counts[task] = count;
  });

  BigInt total = 0;
  for (auto c : counts) total += c;
  return total;
}

std::size_t enumerate(int n, const Rule& rule, EnumFilter filter, std::optional<std::size_t> limit,
                      const EnumSink& sink, const EnumConfig& config) {
  validate_scan(n, rule, filter, config);
  if (limit && *limit == 0) return 0;
  if (n == 0) {
    sink(EnumeratedList{});
    return 1;
  }

  const auto prefixes = task_prefixes(n, rule, filter, config.workers);
  const std::size_t window = std::max(1U, config.workers);
  std::size_t delivered = 0;

  for (std::size_t start = 0; start < prefixes.size(); start += window) {
    const std::size_t stop = std::min(prefixes.size(), start + window);
    const std::optional<std::size_t> remaining =
        limit ? std::optional<std::size_t>(*limit - delivered) : std::nullopt;

    std::vector<std::vector<EnumeratedList>> batches(stop - start);
    parallel_for(start, stop, config.workers, [&](std::size_t task) {
      auto& batch = batches[task - start];
      Walker walker(n, rule, filter);
      walker.seed(prefixes[task]);
      auto keep = [&](std::span<const int> prefs, std::span<const int> spots) {
        batch.push_back({PreferenceList(std::vector<int>(prefs.begin(), prefs.end())),
                         std::vector<int>(spots.begin(), spots.end())});
        return !remaining || batch.size() < *remaining;
      };
      walker.walk(n, keep);
    });

    for (const auto& batch : batches) {
      for (const auto& item : batch) {
        sink(item);
        ++delivered;
        if (limit && delivered == *limit) return delivered;
      }
    }
  }
  return delivered;
}

std::vector<PreferenceList> enumerate_lists(int n, const Rule& rule, EnumFilter filter,
                                            std::optional<std::size_t> limit, const EnumConfig& config) {
  std::vector<PreferenceList> out;
  enumerate(n, rule, filter, limit, [&](const EnumeratedList& item) { out.push_back(item.prefs); }, config);
  return out;
}

SubsetTally::SubsetTally(int n)
    : n_(n), paren_(static_cast<std::size_t>(n) + 1, 0), bracket_(static_cast<std::size_t>(n) + 1, 0) {}

const BigInt& SubsetTally::by_paren(int car) const {
  if (car < 1 || car > n_) throw InputError("car index out of range");
  return paren_[static_cast<std::size_t>(car)];
}

const BigInt& SubsetTally::by_bracket(int car) const {
  if (car < 1 || car > n_) throw InputError("car index out of range");
  return bracket_[static_cast<std::size_t>(car)];
}

BigInt SubsetTally::total() const {
  BigInt sum = 0;
  for (int car = 1; car <= n_; ++car) sum += by_spot(car);
  return sum;
}

void SubsetTally::add_paren(int car, const BigInt& count) {
  if (car < 1 || car > n_) throw InputError("car index out of range");
  paren_[static_cast<std::size_t>(car)] += count;
}

void SubsetTally::add_bracket(int car, const BigInt& count) {
  if (car < 1 || car > n_) throw InputError("car index out of range");
  bracket_[static_cast<std::size_t>(car)] += count;
}

SubsetTally tally_subsets(int n, const EnumConfig& config) {
  if (n < 1) throw InputError("tally_subsets needs n >= 1, got " + std::to_string(n));
  const Rule rule = Rule::vacillating(1);
  validate_scan(n, rule, EnumFilter::All, config);

  struct Counts {
    std::vector<std::uint64_t> paren;
    std::vector<std::uint64_t> bracket;
  };
  const auto prefixes = task_prefixes(n, rule, EnumFilter::All, config.workers);
  std::vector<Counts> per_task(prefixes.size());
  parallel_for(0, prefixes.size(), config.workers, [&](std::size_t task) {
    Counts& counts = per_task[task];
    counts.paren.assign(static_cast<std::size_t>(n) + 1, 0);
    counts.bracket.assign(static_cast<std::size_t>(n) + 1, 0);
    Walker walker(n, rule, EnumFilter::All);
    walker.seed(prefixes[task]);
    auto record = [&](std::span<const int> prefs, std::span<const int> spots) {
      const auto it = std::find(spots.begin(), spots.end(), n);
      const auto car = static_cast<std::size_t>(it - spots.begin());
      // With k = 1, spot n is reached only from preference n or n - 1.
      if (prefs[car] == n) {
        ++counts.paren[car + 1];
      } else {
        ++counts.bracket[car + 1];
      }
      return true;
    };
    walker.walk(n, record);
  });

  SubsetTally tally(n);
  for (const auto& counts : per_task) {
    for (int car = 1; car <= n; ++car) {
      tally.add_paren(car, counts.paren[static_cast<std::size_t>(car)]);
      tally.add_bracket(car, counts.bracket[static_cast<std::size_t>(car)]);
    }
  }
  return tally;
}

InvariantScan permutation_invariant_scan(int n, int k, const EnumConfig& config) {
  if (n < 1) throw InputError("permutation_invariant_scan needs n >= 1, got " + std::to_string(n));
  if (n > config.max_n_invariant) {
    throw ResourceLimitError("refusing permutation-invariance scan at n = " + std::to_string(n) +
                             ": the ceiling is " + std::to_string(config.max_n_invariant));
  }
  const Rule rule = Rule::vacillating(k);
  rule.validate_for(n);

  const auto lists = enumerate_lists(n, rule, EnumFilter::All, std::nullopt, config);

  // Invariance depends only on the multiset of entries.
  std::map<std::vector<int>, bool> invariant_by_multiset;
  auto is_invariant = [&](std::vector<int> entries) {
    std::sort(entries.begin(), entries.end());
    if (auto it = invariant_by_multiset.find(entries); it != invariant_by_multiset.end()) return it->second;
    const std::vector<int> key = entries;
    bool invariant = true;
    do {
      Street street(n);
      for (int pref : entries) {
        if (!street.park(pref, rule)) {
          invariant = false;
          break;
        }
      }
    } while (invariant && std::next_permutation(entries.begin(), entries.end()));
    invariant_by_multiset.emplace(key, invariant);
    return invariant;
  };

  InvariantScan scan;
  for (const auto& list : lists) {
    if (is_invariant(std::vector<int>(list.values().begin(), list.values().end()))) scan.members.push_back(list);
  }
  scan.count = scan.members.size();
  return scan;
}

}  // namespace vpf
