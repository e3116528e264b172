#pragma once

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vpf/bigint.hpp"

namespace vpf {

// A count indexed by length n and, for the per-car families, by car i.
//   Total(n)      all 1-vacillating parking functions of length n
//   Spot(n, i)    ... where car i ends in spot n
//   Paren(n, i)   ... where car i prefers spot n and parks there
//   Bracket(n, i) ... where car i prefers spot n - 1 and parks in spot n
//   NonDec(n)     non-decreasing ones
//   NonInc(n)     non-increasing ones
struct CountFamily {
  enum class Kind { Total, Spot, Paren, Bracket, NonDec, NonInc };

  Kind kind = Kind::Total;
  int n = 0;
  int i = 0;  // only meaningful for Spot, Paren, Bracket

  static CountFamily total(int n) { return {Kind::Total, n, 0}; }
  static CountFamily spot(int n, int i) { return {Kind::Spot, n, i}; }
  static CountFamily paren(int n, int i) { return {Kind::Paren, n, i}; }
  static CountFamily bracket(int n, int i) { return {Kind::Bracket, n, i}; }
  static CountFamily nondec(int n) { return {Kind::NonDec, n, 0}; }
  static CountFamily noninc(int n) { return {Kind::NonInc, n, 0}; }

  bool indexed() const { return kind == Kind::Spot || kind == Kind::Paren || kind == Kind::Bracket; }
  std::string to_string() const;

  friend auto operator<=>(const CountFamily&, const CountFamily&) = default;
};

const char* to_string(CountFamily::Kind kind);
// "total", "spot", "paren", "bracket", "nondec", "noninc" (plus the long
// filter spellings "nondecreasing" / "nonincreasing").
CountFamily::Kind parse_family_kind(const std::string& name);

// Hard-coded values of the per-car families at n = 1, 2 that seed the
// recurrences, plus the published n = 3 values the recurrences must
// reproduce.
struct InitialCondition {
  int n;
  int i;
  long paren;
  long bracket;
};
std::span<const InitialCondition> published_initial_conditions();

// Every count family up to n_max, built bottom-up once and immutable
// afterwards; concurrent reads are safe.
class CountTable {
public:
  // Largest n_max accepted; the per-car families hold O(n^2) big integers.
  static constexpr int kMaxLength = 300;

  explicit CountTable(int n_max);

  int n_max() const { return n_max_; }

  // Index errors throw InputError; n beyond n_max throws ResourceLimitError.
  const BigInt& total(int n) const;
  BigInt spot(int n, int i) const;
  const BigInt& paren(int n, int i) const;
  const BigInt& bracket(int n, int i) const;
  const BigInt& nondec(int n) const;
  const BigInt& noninc(int n) const;

  BigInt get(const CountFamily& family) const;

  // Versioned text cache; see load() for the validation applied on read.
  void save(std::ostream& out) const;
  // nullopt unless the stream holds a complete, checksum-valid cache whose
  // seed values match the hard-coded initial conditions.
  static std::optional<CountTable> load(std::istream& in);

private:
  CountTable() = default;

  void check_length(int n, int min_n) const;
  void check_index(int n, int i) const;
  void build();

  int n_max_ = 0;
  std::vector<BigInt> total_;
  std::vector<std::vector<BigInt>> paren_;    // [n][i], i in 1..n
  std::vector<std::vector<BigInt>> bracket_;  // [n][i], i in 1..n
  std::vector<BigInt> nondec_;
  std::vector<BigInt> noninc_;
};

// Returns a table covering at least n_max, reusing the cache file when it is
// valid and large enough and rewriting it otherwise. Cache I/O failures are
// ignored.
CountTable cached_table(int n_max, const std::optional<std::filesystem::path>& cache_path);

BigInt vpf_total(int n);
BigInt vpf_spot(int n, int i);
BigInt vpf_paren(int n, int i);
BigInt vpf_bracket(int n, int i);

BigInt nondec_count(int n);
BigInt noninc_count(int n);

// Sizes of the k residue classes of [n]: floor((n + t) / k) for t = 0..k-1.
std::vector<int> residue_class_sizes(int n, int k);

// (sum of sizes)! / prod(size!), computed as a product of binomials.
BigInt placement_count(std::span<const int> class_sizes);

// n! / prod_t floor((n + t) / k)!
BigInt multinomial(int n, int k);

// |VPF_n(k)| by the product formula; n = 0 gives 1.
BigInt k_vacillating_count(int n, int k);
BigInt k_vacillating_count(int n, int k, const CountTable& table);

}  // namespace vpf
