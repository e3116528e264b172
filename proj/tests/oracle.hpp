#pragma once

// Reference implementations used only by tests. They share no code with the
// library: the parking rules are re-stated directly and every tuple of [n]^n
// is visited by an odometer, one full simulation per tuple.

#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

// Spot taken by each car (1-indexed), or nullopt if some car fails.
inline std::optional<std::vector<int>> park_vacillating(const std::vector<int>& prefs, int k) {
  const int n = static_cast<int>(prefs.size());
  std::vector<bool> taken(static_cast<std::size_t>(n) + 2, false);
  std::vector<int> spots;
  for (int a : prefs) {
    int chosen = 0;
    for (int candidate : {a, a - k, a + k}) {
      if (candidate >= 1 && candidate <= n && !taken[static_cast<std::size_t>(candidate)]) {
        chosen = candidate;
        break;
      }
    }
    if (chosen == 0) return std::nullopt;
    taken[static_cast<std::size_t>(chosen)] = true;
    spots.push_back(chosen);
  }
  return spots;
}

inline bool parks_classically(const std::vector<int>& prefs) {
  const int n = static_cast<int>(prefs.size());
  std::vector<bool> taken(static_cast<std::size_t>(n) + 2, false);
  for (int a : prefs) {
    int s = a;
    while (s <= n && taken[static_cast<std::size_t>(s)]) ++s;
    if (s > n) return false;
    taken[static_cast<std::size_t>(s)] = true;
  }
  return true;
}

// Calls visit(tuple) for every tuple in [n]^n, lexicographically.
template <class Visit>
void for_each_tuple(int n, Visit visit) {
  std::vector<int> t(static_cast<std::size_t>(n), 1);
  while (true) {
    visit(t);
    int pos = n - 1;
    while (pos >= 0 && t[static_cast<std::size_t>(pos)] == n) t[static_cast<std::size_t>(pos--)] = 1;
    if (pos < 0) return;
    ++t[static_cast<std::size_t>(pos)];
  }
}

inline bool non_decreasing(const std::vector<int>& t) {
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i - 1] > t[i]) return false;
  return true;
}

inline bool non_increasing(const std::vector<int>& t) {
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i - 1] < t[i]) return false;
  return true;
}

}  // namespace oracle
