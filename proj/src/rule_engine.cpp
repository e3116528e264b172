#include "vpf/rule_engine.hpp"

#include <charconv>
#include <sstream>

#include "vpf/errors.hpp"

namespace vpf {

PreferenceList::PreferenceList(std::vector<int> prefs) : prefs_(std::move(prefs)) {
  const int n = size();
  for (int car = 1; car <= n; ++car) {
    const int a = (*this)[car];
    if (a < 1 || a > n) {
      throw InputError("preference of car " + std::to_string(car) + " is " + std::to_string(a) +
                       ", outside [1, " + std::to_string(n) + "]");
    }
  }
}

std::string PreferenceList::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < prefs_.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(prefs_[i]);
  }
  return out;
}

PreferenceList PreferenceList::parse(const std::string& text) {
  std::vector<int> values;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string token = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto first = token.find_first_not_of(" \t");
    const auto last = token.find_last_not_of(" \t");
    if (first == std::string::npos) throw InputError("empty entry in preference list '" + text + "'");
    token = token.substr(first, last - first + 1);

    int value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || end != token.data() + token.size())
      throw InputError("malformed preference '" + token + "'");
    values.push_back(value);

    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return PreferenceList(std::move(values));
}

void Rule::validate_for(int n) const {
  if (kind_ == Kind::Vacillating && (k_ < 1 || k_ > n)) {
    throw InputError("k = " + std::to_string(k_) + " is outside [1, " + std::to_string(n) + "]");
  }
}

std::string Rule::to_string() const {
  if (kind_ == Kind::Classical) return "classical";
  return "vacillating(k=" + std::to_string(k_) + ")";
}

Outcome simulate(const PreferenceList& prefs, const Rule& rule) {
  const int n = prefs.size();
  rule.validate_for(n);

  Outcome outcome;
  outcome.spots.reserve(static_cast<std::size_t>(n));
  Street street(n);
  for (int car = 1; car <= n; ++car) {
    const auto spot = street.park(prefs[car], rule);
    if (!spot) {
      outcome.status = Outcome::Status::Failure;
      outcome.failing_car = car;
      return outcome;
    }
    outcome.spots.push_back(*spot);
  }
  return outcome;
}

bool is_parking_function(const PreferenceList& prefs, const Rule& rule) {
  return simulate(prefs, rule).success();
}

LastSpotStatistics outcome_statistics(const PreferenceList& prefs, const Rule& rule) {
  const Outcome outcome = simulate(prefs, rule);
  if (!outcome.success()) {
    throw ContractViolation("outcome_statistics needs a parking function; car " +
                            std::to_string(*outcome.failing_car) + " of (" + prefs.to_string() +
                            ") fails to park under " + rule.to_string());
  }
  const int n = prefs.size();
  for (int car = 1; car <= n; ++car) {
    if (outcome.spots[static_cast<std::size_t>(car - 1)] == n) return {car, prefs[car]};
  }
  throw ContractViolation("no car occupies spot n");
}

}  // namespace vpf
