#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vpf {

// Preferences for cars 1..n, each in [1, n]. Cars and spots are 1-indexed at
// every public interface.
class PreferenceList {
public:
  PreferenceList() = default;

  // Throws InputError if any entry lies outside [1, size()].
  explicit PreferenceList(std::vector<int> prefs);

  int size() const { return static_cast<int>(prefs_.size()); }
  bool empty() const { return prefs_.empty(); }

  // Preference of car `car` (1-indexed).
  int operator[](int car) const { return prefs_[static_cast<std::size_t>(car - 1)]; }

  std::span<const int> values() const { return prefs_; }

  // "4,1,1,4"
  std::string to_string() const;

  // Parses "4,1,1,4"; whitespace around entries is tolerated.
  static PreferenceList parse(const std::string& text);

  friend bool operator==(const PreferenceList&, const PreferenceList&) = default;
  friend auto operator<=>(const PreferenceList&, const PreferenceList&) = default;

private:
  std::vector<int> prefs_;
};

class Rule {
public:
  enum class Kind { Classical, Vacillating };

  static Rule classical() { return Rule{Kind::Classical, 0}; }
  static Rule vacillating(int k) { return Rule{Kind::Vacillating, k}; }

  Kind kind() const { return kind_; }
  // Step size for Vacillating; 0 for Classical.
  int k() const { return k_; }

  // Throws InputError unless the rule makes sense on a street of n spots.
  void validate_for(int n) const;

  std::string to_string() const;

  friend bool operator==(const Rule&, const Rule&) = default;

private:
  Rule(Kind kind, int k) : kind_(kind), k_(k) {}

  Kind kind_;
  int k_;
};

// Occupancy of a street of n spots, mutated one car at a time. The batch
// simulator and the exhaustive enumerator both park through this type.
class Street {
public:
  explicit Street(int n) : occupied_(static_cast<std::size_t>(n) + 1, 0) {}

  int size() const { return static_cast<int>(occupied_.size()) - 1; }
  bool is_free(int spot) const { return occupied_[static_cast<std::size_t>(spot)] == 0; }

  // Parks a car preferring `pref` under `rule`; returns the spot taken or
  // nullopt if the car cannot park. No argument validation.
  std::optional<int> park(int pref, const Rule& rule) {
    const int spot = find_spot(pref, rule);
    if (spot == 0) return std::nullopt;
    occupied_[static_cast<std::size_t>(spot)] = 1;
    return spot;
  }

  void vacate(int spot) { occupied_[static_cast<std::size_t>(spot)] = 0; }

private:
  int find_spot(int pref, const Rule& rule) const {
    const int n = size();
    if (rule.kind() == Rule::Kind::Classical) {
      for (int s = pref; s <= n; ++s)
        if (is_free(s)) return s;
      return 0;
    }
    const int k = rule.k();
    if (is_free(pref)) return pref;
    if (pref - k >= 1 && is_free(pref - k)) return pref - k;
    if (pref + k <= n && is_free(pref + k)) return pref + k;
    return 0;
  }

  std::vector<std::uint8_t> occupied_;
};

struct Outcome {
  enum class Status { Success, Failure };

  Status status = Status::Success;
  // spots[c - 1] is the spot of car c, for every car that parked.
  std::vector<int> spots;
  // First car that could not park; set iff status == Failure.
  std::optional<int> failing_car;

  bool success() const { return status == Status::Success; }
};

Outcome simulate(const PreferenceList& prefs, const Rule& rule);

bool is_parking_function(const PreferenceList& prefs, const Rule& rule);

struct LastSpotStatistics {
  int car;         // car parked in spot n
  int preference;  // that car's preference
};

// Throws ContractViolation if `prefs` is not a parking function under `rule`.
LastSpotStatistics outcome_statistics(const PreferenceList& prefs, const Rule& rule);

}  // namespace vpf
