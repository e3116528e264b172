#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "vpf/enumerator.hpp"
#include "vpf/errors.hpp"
#include "vpf/recurrence.hpp"

using namespace vpf;

namespace {

// Per-car tallies from an independent exhaustive scan of [n]^n.
struct Frozen {
  int n;
  std::vector<long> paren;
  std::vector<long> bracket;
};

const std::vector<Frozen>& frozen_tallies() {
  static const std::vector<Frozen> table{
      {4, {36, 29, 24, 20}, {0, 0, 6, 20}},
      {5, {244, 208, 179, 155, 135}, {0, 0, 21, 59, 135}},
      {6, {2057, 1813, 1605, 1426, 1271, 1136}, {0, 0, 108, 310, 626, 1136}},
      {7, {20796, 18739, 16926, 15321, 13895, 12624, 11488}, {0, 0, 732, 2124, 4223, 7191, 11488}},
  };
  return table;
}

}  // namespace

TEST_CASE("vpf_total examples") {
  CHECK(vpf_total(0) == 1);
  CHECK(vpf_total(1) == 1);
  CHECK(vpf_total(2) == 4);
  CHECK(vpf_total(3) == 20);
  CHECK_THROWS_AS(vpf_total(-1), InputError);
}

TEST_CASE("vpf_spot / vpf_paren / vpf_bracket examples") {
  CHECK(vpf_spot(3, 3) == 8);
  CHECK(vpf_spot(2, 1) == 2);
  CHECK(vpf_spot(1, 1) == 1);
  CHECK(vpf_paren(3, 1) == 7);
  CHECK(vpf_paren(3, 3) == 4);
  CHECK(vpf_bracket(3, 3) == 4);
  CHECK(vpf_bracket(3, 2) == 0);
  CHECK_THROWS_AS(vpf_spot(3, 0), InputError);
  CHECK_THROWS_AS(vpf_paren(3, 4), InputError);
  CHECK_THROWS_AS(vpf_bracket(0, 1), InputError);
}

TEST_CASE("recurrences reproduce the published n = 3 initial conditions") {
  const CountTable table(3);
  for (const auto& seed : published_initial_conditions()) {
    CAPTURE(seed.n);
    CAPTURE(seed.i);
    CHECK(table.paren(seed.n, seed.i) == seed.paren);
    CHECK(table.bracket(seed.n, seed.i) == seed.bracket);
  }
}

TEST_CASE("structural identities of the per-car families") {
  const CountTable table(60);
  for (int n = 1; n <= 60; ++n) {
    CHECK(table.bracket(n, 1) == 0);
    BigInt sum = 0;
    for (int i = 1; i <= n; ++i) sum += table.spot(n, i);
    CHECK(sum == table.total(n));
    if (n >= 3) CHECK(table.paren(n, n) == table.total(n - 1));
  }
}

TEST_CASE("recurrence matches frozen exhaustive-scan tallies for n = 4..7") {
  const CountTable table(7);
  const std::vector<long> totals{1, 1, 4, 20, 135, 1136, 11488, 135547};
  for (int n = 0; n <= 7; ++n) CHECK(table.total(n) == totals[static_cast<std::size_t>(n)]);
  for (const auto& f : frozen_tallies()) {
    for (int i = 1; i <= f.n; ++i) {
      CAPTURE(f.n);
      CAPTURE(i);
      CHECK(table.paren(f.n, i) == f.paren[static_cast<std::size_t>(i - 1)]);
      CHECK(table.bracket(f.n, i) == f.bracket[static_cast<std::size_t>(i - 1)]);
    }
  }
}

TEST_CASE("recurrence agrees with live tallies for n = 1..6") {
  EnumConfig config;
  config.workers = 2;
  const CountTable table(6);
  for (int n = 1; n <= 6; ++n) {
    const auto tally = tally_subsets(n, config);
    for (int i = 1; i <= n; ++i) {
      CHECK(table.paren(n, i) == tally.by_paren(i));
      CHECK(table.bracket(n, i) == tally.by_bracket(i));
    }
  }
}

TEST_CASE("monotone counts") {
  CHECK(nondec_count(1) == 1);
  CHECK(nondec_count(2) == 3);
  CHECK(nondec_count(3) == 7);
  CHECK(nondec_count(8) == 577);
  CHECK(noninc_count(3) == 6);
  CHECK(noninc_count(4) == 13);
  CHECK(noninc_count(6) == 64);
  CHECK_THROWS_AS(nondec_count(0), InputError);
  CHECK_THROWS_AS(noninc_count(0), InputError);

  const CountTable table(50);
  for (int n = 1; n <= 50; ++n) {
    CHECK(table.nondec(n) == nondec_count(n));
    CHECK(table.noninc(n) == noninc_count(n));
  }
}

TEST_CASE("multinomial examples") {
  CHECK(multinomial(4, 2) == 6);
  CHECK(multinomial(5, 1) == 1);
  CHECK(multinomial(5, 5) == 120);
  CHECK(multinomial(7, 3) == 210);  // 7! / (2! 2! 3!)
  CHECK_THROWS_AS(multinomial(3, 4), InputError);
  CHECK_THROWS_AS(multinomial(3, 0), InputError);
}

TEST_CASE("k_vacillating_count examples and degenerations") {
  CHECK(k_vacillating_count(0, 1) == 1);
  CHECK(k_vacillating_count(4, 2) == 96);
  CHECK(k_vacillating_count(3, 1) == 20);
  for (int n = 1; n <= 20; ++n) {
    CHECK(k_vacillating_count(n, n) == factorial(n));
    CHECK(k_vacillating_count(n, 1) == vpf_total(n));
  }
  CHECK_THROWS_AS(k_vacillating_count(3, 4), InputError);
  CHECK_THROWS_AS(k_vacillating_count(3, 0), InputError);
}

TEST_CASE("product formula matches exhaustive counts for n <= 6") {
  EnumConfig config;
  config.workers = 2;
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= n; ++k)
      CHECK(k_vacillating_count(n, k) == count_brute(n, Rule::vacillating(k), EnumFilter::All, config));
}

TEST_CASE("property: product formula depends only on the multiset of class sizes") {
  const CountTable table(60);
  std::mt19937 gen(99);
  for (int n = 1; n <= 60; ++n) {
    for (int k = 1; k <= n; ++k) {
      auto sizes = residue_class_sizes(n, k);
      std::shuffle(sizes.begin(), sizes.end(), gen);
      BigInt direct = placement_count(sizes);
      for (int size : sizes) direct *= table.total(size);
      CHECK(direct == k_vacillating_count(n, k, table));
    }
  }
}

TEST_CASE("count table lookup by family") {
  const CountTable table(5);
  CHECK(table.get(CountFamily::total(5)) == 1136);
  CHECK(table.get(CountFamily::spot(3, 3)) == 8);
  CHECK(table.get(CountFamily::paren(4, 2)) == 29);
  CHECK(table.get(CountFamily::bracket(5, 4)) == 59);
  CHECK(table.get(CountFamily::nondec(5)) == 41);
  CHECK(table.get(CountFamily::noninc(5)) == 29);
  CHECK_THROWS_AS(table.get(CountFamily::total(6)), ResourceLimitError);
  CHECK_THROWS_AS(CountTable(CountTable::kMaxLength + 1), ResourceLimitError);
  CHECK(CountFamily::bracket(5, 4).to_string() == "bracket(5,4)");
  CHECK(parse_family_kind("nonincreasing") == CountFamily::Kind::NonInc);
  CHECK_THROWS_AS(parse_family_kind("bogus"), InputError);
}

TEST_CASE("count table cache round-trips and rejects damaged files") {
  const CountTable table(12);
  std::stringstream buffer;
  table.save(buffer);
  const std::string text = buffer.str();

  std::istringstream in(text);
  const auto loaded = CountTable::load(in);
  REQUIRE(loaded);
  CHECK(loaded->n_max() == 12);
  for (int n = 1; n <= 12; ++n) {
    CHECK(loaded->total(n) == table.total(n));
    CHECK(loaded->noninc(n) == table.noninc(n));
    for (int i = 1; i <= n; ++i) CHECK(loaded->bracket(n, i) == table.bracket(n, i));
  }

  std::string corrupted = text;
  const auto pos = corrupted.find("total 5 0 1136");
  REQUIRE(pos != std::string::npos);
  corrupted.replace(pos, 14, "total 5 0 1137");
  std::istringstream bad(corrupted);
  CHECK_FALSE(CountTable::load(bad));

  std::istringstream truncated(text.substr(0, text.size() / 2));
  CHECK_FALSE(CountTable::load(truncated));

  std::istringstream empty("");
  CHECK_FALSE(CountTable::load(empty));
}

TEST_CASE("cached_table reuses a valid cache file and tolerates a missing one") {
  const auto dir = std::filesystem::temp_directory_path() / "vpf_cache_test";
  std::filesystem::remove_all(dir);
  const auto path = dir / "nested" / "table.txt";

  const auto first = cached_table(9, path);
  CHECK(first.total(9) == CountTable(9).total(9));
  REQUIRE(std::filesystem::exists(path));

  // A smaller request is served from the larger cached table.
  const auto second = cached_table(5, path);
  CHECK(second.n_max() == 9);

  // Damaged caches are ignored and rewritten.
  { std::ofstream(path) << "garbage\n"; }
  const auto third = cached_table(4, path);
  CHECK(third.total(4) == 135);
  std::ifstream reread(path);
  CHECK(CountTable::load(reread));

  CHECK(cached_table(3, std::nullopt).total(3) == 20);
  std::filesystem::remove_all(dir);
}
