#include "vpf/recurrence.hpp"

#include <array>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "vpf/errors.hpp"

namespace vpf {

const char* to_string(CountFamily::Kind kind) {
  switch (kind) {
    case CountFamily::Kind::Total: return "total";
    case CountFamily::Kind::Spot: return "spot";
    case CountFamily::Kind::Paren: return "paren";
    case CountFamily::Kind::Bracket: return "bracket";
    case CountFamily::Kind::NonDec: return "nondec";
    case CountFamily::Kind::NonInc: return "noninc";
  }
  return "?";
}

CountFamily::Kind parse_family_kind(const std::string& name) {
  using Kind = CountFamily::Kind;
  if (name == "total") return Kind::Total;
  if (name == "spot") return Kind::Spot;
  if (name == "paren") return Kind::Paren;
  if (name == "bracket") return Kind::Bracket;
  if (name == "nondec" || name == "nondecreasing") return Kind::NonDec;
  if (name == "noninc" || name == "nonincreasing") return Kind::NonInc;
  throw InputError("unknown count family '" + name + "'");
}

std::string CountFamily::to_string() const {
  std::string out = vpf::to_string(kind);
  out += "(" + std::to_string(n);
  if (indexed()) out += "," + std::to_string(i);
  return out + ")";
}

namespace {

constexpr std::array<InitialCondition, 6> kInitialConditions{{
    {1, 1, 1, 0},
    {2, 1, 2, 0},
    {2, 2, 1, 1},
    {3, 1, 7, 0},
    {3, 2, 5, 0},
    {3, 3, 4, 4},
}};

// Prefix sums over i = 1..x of one length's per-car values; sum(a, b) clamps
// to the valid range and is 0 when the range is empty.
class PrefixSums {
public:
  PrefixSums() = default;

  template <class Weight>
  PrefixSums(const std::vector<BigInt>& values, Weight weight) : prefix_(values.size(), 0) {
    for (std::size_t x = 1; x < values.size(); ++x)
      prefix_[x] = prefix_[x - 1] + weight(static_cast<long>(x)) * values[x];
  }

  BigInt sum(int a, int b) const {
    const int top = static_cast<int>(prefix_.size()) - 1;
    if (a < 1) a = 1;
    if (b > top) b = top;
    if (a > b) return 0;
    return prefix_[static_cast<std::size_t>(b)] - prefix_[static_cast<std::size_t>(a - 1)];
  }

private:
  std::vector<BigInt> prefix_;
};

struct LengthSums {
  PrefixSums paren;           // sum P(m, l)
  PrefixSums paren_weighted;  // sum l * P(m, l)
  PrefixSums paren_triangle;  // sum l(l+1)/2 * P(m, l)
  PrefixSums bracket;         // sum B(m, l)
  PrefixSums spot;            // sum (P + B)(m, l)
};

long choose2(long m) { return m * (m - 1) / 2; }

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

constexpr const char* kCacheMagic = "vpf-count-cache 1";

}  // namespace

std::span<const InitialCondition> published_initial_conditions() { return kInitialConditions; }

CountTable::CountTable(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw InputError("n_max must be nonnegative");
  if (n_max > kMaxLength) {
    throw ResourceLimitError("count table limited to n <= " + std::to_string(kMaxLength) + ", asked for " +
                             std::to_string(n_max));
  }
  build();
}

void CountTable::build() {
  const auto size = static_cast<std::size_t>(n_max_) + 1;
  total_.assign(size, 0);
  paren_.assign(size, {});
  bracket_.assign(size, {});
  std::vector<LengthSums> sums(size);

  auto total_at = [&](int m) -> BigInt { return m < 0 ? BigInt(0) : total_[static_cast<std::size_t>(m)]; };
  auto sums_at = [&](int m) -> const LengthSums* { return m < 1 ? nullptr : &sums[static_cast<std::size_t>(m)]; };
  auto range = [](const LengthSums* s, PrefixSums LengthSums::*which, int a, int b) -> BigInt {
    return s == nullptr ? BigInt(0) : (s->*which).sum(a, b);
  };

  total_[0] = 1;
  for (int n = 1; n <= n_max_; ++n) {
    auto& paren = paren_[static_cast<std::size_t>(n)];
    auto& bracket = bracket_[static_cast<std::size_t>(n)];
    paren.assign(static_cast<std::size_t>(n) + 1, 0);
    bracket.assign(static_cast<std::size_t>(n) + 1, 0);

    if (n <= 2) {
      for (const auto& seed : kInitialConditions) {
        if (seed.n != n) continue;
        paren[static_cast<std::size_t>(seed.i)] = seed.paren;
        bracket[static_cast<std::size_t>(seed.i)] = seed.bracket;
      }
    } else {
      const LengthSums* minus1 = sums_at(n - 1);
      const LengthSums* minus2 = sums_at(n - 2);
      const LengthSums* minus3 = sums_at(n - 3);
      for (int i = 1; i <= n; ++i) {
        // Cars preferring spot n: one (car i alone), or two with the second
        // among the n - i later cars, optionally with a car preferring n - 1.
        BigInt p = total_at(n - 1) + BigInt(n - i) * total_at(n - 2);
        // sum_{l=i}^{n-2} (l + 1 - i) P(n-2, l)
        p += range(minus2, &LengthSums::paren_weighted, i, n - 2) +
             BigInt(1 - i) * range(minus2, &LengthSums::paren, i, n - 2);
        paren[static_cast<std::size_t>(i)] = p;

        // Car i is the first, second or third car preferring spot n - 1.
        const long pairs = choose2(i - 1);
        BigInt b = BigInt(pairs) * total_at(n - 3);
        b += range(minus1, &LengthSums::bracket, 1, i - 1);
        b += BigInt(i - 1) * range(minus2, &LengthSums::spot, 1, i - 2);
        b += range(minus3, &LengthSums::paren_triangle, 1, i - 3);
        b += BigInt(pairs) * range(minus3, &LengthSums::paren, i - 2, n - 3);
        bracket[static_cast<std::size_t>(i)] = b;
      }
    }

    BigInt total = 0;
    std::vector<BigInt> spot(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
      spot[static_cast<std::size_t>(i)] = paren[static_cast<std::size_t>(i)] + bracket[static_cast<std::size_t>(i)];
      total += spot[static_cast<std::size_t>(i)];
    }
    total_[static_cast<std::size_t>(n)] = total;

    auto& s = sums[static_cast<std::size_t>(n)];
    s.paren = PrefixSums(paren, [](long) { return 1L; });
    s.paren_weighted = PrefixSums(paren, [](long l) { return l; });
    s.paren_triangle = PrefixSums(paren, [](long l) { return l * (l + 1) / 2; });
    s.bracket = PrefixSums(bracket, [](long) { return 1L; });
    s.spot = PrefixSums(spot, [](long) { return 1L; });
  }

  nondec_.assign(size, 0);
  noninc_.assign(size, 0);
  for (int n = 1; n <= n_max_; ++n) {
    const auto idx = static_cast<std::size_t>(n);
    if (n == 1) {
      nondec_[idx] = 1;
      noninc_[idx] = 1;
    } else if (n == 2) {
      nondec_[idx] = 3;
      noninc_[idx] = 3;
    } else {
      nondec_[idx] = 2 * nondec_[idx - 1] + nondec_[idx - 2];
      noninc_[idx] = n == 3 ? BigInt(6) : 2 * noninc_[idx - 1] + noninc_[idx - 3];
    }
  }
}

void CountTable::check_length(int n, int min_n) const {
  if (n < min_n) throw InputError("length " + std::to_string(n) + " below minimum " + std::to_string(min_n));
  if (n > n_max_) {
    throw ResourceLimitError("length " + std::to_string(n) + " beyond table size " + std::to_string(n_max_));
  }
}

void CountTable::check_index(int n, int i) const {
  check_length(n, 1);
  if (i < 1 || i > n) {
    throw InputError("car index " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
  }
}

const BigInt& CountTable::total(int n) const {
  check_length(n, 0);
  return total_[static_cast<std::size_t>(n)];
}

BigInt CountTable::spot(int n, int i) const { return paren(n, i) + bracket(n, i); }

const BigInt& CountTable::paren(int n, int i) const {
  check_index(n, i);
  return paren_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
}

const BigInt& CountTable::bracket(int n, int i) const {
  check_index(n, i);
  return bracket_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
}

const BigInt& CountTable::nondec(int n) const {
  check_length(n, 1);
  return nondec_[static_cast<std::size_t>(n)];
}

const BigInt& CountTable::noninc(int n) const {
  check_length(n, 1);
  return noninc_[static_cast<std::size_t>(n)];
}

BigInt CountTable::get(const CountFamily& family) const {
  using Kind = CountFamily::Kind;
  switch (family.kind) {
    case Kind::Total: return total(family.n);
    case Kind::Spot: return spot(family.n, family.i);
    case Kind::Paren: return paren(family.n, family.i);
    case Kind::Bracket: return bracket(family.n, family.i);
    case Kind::NonDec: return nondec(family.n);
    case Kind::NonInc: return noninc(family.n);
  }
  throw InputError("unknown count family");
}

void CountTable::save(std::ostream& out) const {
  std::ostringstream body;
  body << kCacheMagic << '\n' << "n_max " << n_max_ << '\n';
  for (int n = 0; n <= n_max_; ++n) body << "total " << n << " 0 " << total_[static_cast<std::size_t>(n)] << '\n';
  for (int n = 1; n <= n_max_; ++n) {
    for (int i = 1; i <= n; ++i) body << "paren " << n << ' ' << i << ' ' << paren(n, i) << '\n';
    for (int i = 1; i <= n; ++i) body << "bracket " << n << ' ' << i << ' ' << bracket(n, i) << '\n';
  }
  for (int n = 1; n <= n_max_; ++n) body << "nondec " << n << " 0 " << nondec(n) << '\n';
  for (int n = 1; n <= n_max_; ++n) body << "noninc " << n << " 0 " << noninc(n) << '\n';

  const std::string text = body.str();
  std::ostringstream checksum;
  checksum << std::hex << std::setw(16) << std::setfill('0') << fnv1a(text);
  out << text << "checksum " << checksum.str() << '\n';
}

std::optional<CountTable> CountTable::load(std::istream& in) {
  std::ostringstream raw;
  raw << in.rdbuf();
  const std::string text = raw.str();

  const auto tail = text.rfind("checksum ");
  if (tail == std::string::npos || (tail != 0 && text[tail - 1] != '\n')) return std::nullopt;
  const std::string body = text.substr(0, tail);
  std::ostringstream expected;
  expected << "checksum " << std::hex << std::setw(16) << std::setfill('0') << fnv1a(body) << '\n';
  if (text.substr(tail) != expected.str()) return std::nullopt;

  std::istringstream lines(body);
  std::string line;
  if (!std::getline(lines, line) || line != kCacheMagic) return std::nullopt;

  CountTable table;
  {
    if (!std::getline(lines, line)) return std::nullopt;
    std::istringstream header(line);
    std::string key;
    if (!(header >> key >> table.n_max_) || key != "n_max") return std::nullopt;
    if (table.n_max_ < 0 || table.n_max_ > kMaxLength) return std::nullopt;
  }

  const auto size = static_cast<std::size_t>(table.n_max_) + 1;
  table.total_.assign(size, 0);
  table.paren_.assign(size, {});
  table.bracket_.assign(size, {});
  table.nondec_.assign(size, 0);
  table.noninc_.assign(size, 0);
  for (int n = 1; n <= table.n_max_; ++n) {
    table.paren_[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, 0);
    table.bracket_[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, 0);
  }

  // Records must appear in exactly the order save() writes them.
  auto expect = [&](const char* family, int n, int i, BigInt& slot) {
    if (!std::getline(lines, line)) return false;
    std::istringstream record(line);
    std::string name, count, extra;
    int rn = -1, ri = -1;
    if (!(record >> name >> rn >> ri >> count) || (record >> extra)) return false;
    if (name != family || rn != n || ri != i) return false;
    try {
      slot = parse_decimal(count);
    } catch (const InputError&) {
      return false;
    }
    return slot >= 0;
  };

  for (int n = 0; n <= table.n_max_; ++n)
    if (!expect("total", n, 0, table.total_[static_cast<std::size_t>(n)])) return std::nullopt;
  for (int n = 1; n <= table.n_max_; ++n) {
    for (int i = 1; i <= n; ++i)
      if (!expect("paren", n, i, table.paren_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]))
        return std::nullopt;
    for (int i = 1; i <= n; ++i)
      if (!expect("bracket", n, i, table.bracket_[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]))
        return std::nullopt;
  }
  for (int n = 1; n <= table.n_max_; ++n)
    if (!expect("nondec", n, 0, table.nondec_[static_cast<std::size_t>(n)])) return std::nullopt;
  for (int n = 1; n <= table.n_max_; ++n)
    if (!expect("noninc", n, 0, table.noninc_[static_cast<std::size_t>(n)])) return std::nullopt;
  if (std::getline(lines, line)) return std::nullopt;

  if (table.total_[0] != 1) return std::nullopt;
  for (const auto& seed : kInitialConditions) {
    if (seed.n > table.n_max_) continue;
    if (table.paren(seed.n, seed.i) != seed.paren || table.bracket(seed.n, seed.i) != seed.bracket)
      return std::nullopt;
  }
  return table;
}

CountTable cached_table(int n_max, const std::optional<std::filesystem::path>& cache_path) {
  if (cache_path) {
    std::ifstream in(*cache_path, std::ios::binary);
    if (in) {
      if (auto loaded = CountTable::load(in); loaded && loaded->n_max() >= n_max) return std::move(*loaded);
    }
  }
  CountTable table(n_max);
  if (cache_path) {
    std::error_code ec;
    if (cache_path->has_parent_path()) std::filesystem::create_directories(cache_path->parent_path(), ec);
    const auto temp = std::filesystem::path(cache_path->string() + ".tmp");
    {
      std::ofstream out(temp, std::ios::binary | std::ios::trunc);
      if (out) table.save(out);
    }
    std::filesystem::rename(temp, *cache_path, ec);
    if (ec) std::filesystem::remove(temp, ec);
  }
  return table;
}

BigInt vpf_total(int n) {
  if (n < 0) throw InputError("n must be nonnegative");
  return CountTable(n).total(n);
}

BigInt vpf_spot(int n, int i) { return CountTable(std::max(n, 0)).spot(n, i); }
BigInt vpf_paren(int n, int i) { return CountTable(std::max(n, 0)).paren(n, i); }
BigInt vpf_bracket(int n, int i) { return CountTable(std::max(n, 0)).bracket(n, i); }

BigInt nondec_count(int n) {
  if (n < 1) throw InputError("nondec_count needs n >= 1, got " + std::to_string(n));
  BigInt prev = 1;  // n = 1
  BigInt cur = 3;   // n = 2
  if (n == 1) return prev;
  for (int m = 3; m <= n; ++m) {
    BigInt next = 2 * cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

BigInt noninc_count(int n) {
  if (n < 1) throw InputError("noninc_count needs n >= 1, got " + std::to_string(n));
  std::vector<BigInt> values{0, 1, 3, 6};
  for (int m = 4; m <= n; ++m) {
    const auto idx = static_cast<std::size_t>(m);
    values.push_back(2 * values[idx - 1] + values[idx - 3]);
  }
  return values[static_cast<std::size_t>(n)];
}

std::vector<int> residue_class_sizes(int n, int k) {
  if (k < 1 || k > n) {
    throw InputError("k = " + std::to_string(k) + " is outside [1, " + std::to_string(n) + "]");
  }
  std::vector<int> sizes;
  sizes.reserve(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) sizes.push_back((n + t) / k);
  return sizes;
}

BigInt placement_count(std::span<const int> class_sizes) {
  BigInt result = 1;
  long placed = 0;
  for (int size : class_sizes) {
    if (size < 0) throw InputError("negative class size");
    // Multiply by C(placed + size, size), one exact division at a time.
    BigInt binom = 1;
    for (long j = 1; j <= size; ++j) {
      binom *= placed + j;
      binom /= j;
    }
    result *= binom;
    placed += size;
  }
  return result;
}

BigInt multinomial(int n, int k) {
  const auto sizes = residue_class_sizes(n, k);
  return placement_count(sizes);
}

BigInt k_vacillating_count(int n, int k, const CountTable& table) {
  if (n == 0) return 1;
  if (k < 1 || k > n) {
    throw InputError("k = " + std::to_string(k) + " is outside [1, " + std::to_string(n) + "]");
  }
  const int a = n / k;
  const int b = n % k;
  BigInt result = multinomial(n, k);
  if (b > 0) result *= ipow(table.total(a + 1), static_cast<unsigned>(b));
  result *= ipow(table.total(a), static_cast<unsigned>(k - b));
  return result;
}

BigInt k_vacillating_count(int n, int k) {
  if (n < 0) throw InputError("n must be nonnegative");
  if (n == 0) return 1;
  if (k < 1 || k > n) {
    throw InputError("k = " + std::to_string(k) + " is outside [1, " + std::to_string(n) + "]");
  }
  return k_vacillating_count(n, k, CountTable(n % k == 0 ? n / k : n / k + 1));
}

}  // namespace vpf
