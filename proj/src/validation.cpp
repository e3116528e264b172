#include "vpf/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

#include "vpf/closed_forms.hpp"
#include "vpf/errors.hpp"

namespace vpf {

std::string CheckResult::parameter_text() const {
  std::string out;
  for (const auto& [key, value] : parameters) {
    if (!out.empty()) out += ';';
    out += key + '=' + std::to_string(value);
  }
  return out;
}

std::size_t VerificationReport::failed() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

namespace {

struct Verdict {
  std::string expected;
  std::string actual;
  bool passed;
};

Verdict same(std::string expected, std::string actual) {
  const bool passed = expected == actual;
  return {std::move(expected), std::move(actual), passed};
}

Verdict same(const BigInt& expected, const BigInt& actual) { return same(to_decimal(expected), to_decimal(actual)); }

class Recorder {
public:
  void run(std::string id, std::map<std::string, long long> params, const std::function<Verdict()>& body) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult result;
    result.check_id = std::move(id);
    result.parameters = std::move(params);
    try {
      Verdict verdict = body();
      result.expected = std::move(verdict.expected);
      result.actual = std::move(verdict.actual);
      result.passed = verdict.passed;
    } catch (const std::exception& e) {
      result.expected = "(no exception)";
      result.actual = std::string("exception: ") + e.what();
      result.passed = false;
    }
    result.elapsed = std::chrono::steady_clock::now() - start;
    checks_.push_back(std::move(result));
  }

  VerificationReport finish() && {
    std::stable_sort(checks_.begin(), checks_.end(), [](const CheckResult& a, const CheckResult& b) {
      if (a.check_id != b.check_id) return a.check_id < b.check_id;
      return a.parameters < b.parameters;
    });
    VerificationReport report;
    report.overall = std::all_of(checks_.begin(), checks_.end(), [](const CheckResult& c) { return c.passed; });
    report.checks = std::move(checks_);
    return report;
  }

private:
  std::vector<CheckResult> checks_;
};

std::string join(const std::vector<PreferenceList>& lists) {
  std::string out;
  for (const auto& list : lists) out += (out.empty() ? "(" : " (") + list.to_string() + ")";
  return out;
}

std::string describe(const Outcome& outcome) {
  std::string spots;
  for (int s : outcome.spots) spots += (spots.empty() ? "" : ",") + std::to_string(s);
  if (outcome.success()) return "success spots=" + spots;
  return "failure car=" + std::to_string(*outcome.failing_car) + " spots=" + spots;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

// Number of tuples violating lo(i) <= a_i <= hi(i), over all passing
// monotone tuples of length n.
template <class Bounds>
long long bound_violations(int n, EnumFilter filter, Bounds bounds, const EnumConfig& config) {
  long long violations = 0;
  enumerate(
      n, Rule::vacillating(1), filter, std::nullopt,
      [&](const EnumeratedList& item) {
        for (int i = 1; i <= n; ++i) {
          const auto [lo, hi] = bounds(n, i);
          if (item.prefs[i] < lo || item.prefs[i] > hi) {
            ++violations;
            break;
          }
        }
      },
      config);
  return violations;
}

}  // namespace

VerificationReport verify_suite(const VerifyParams& params, const EnumConfig& config) {
  const int nb = params.n_brute_max;
  const int nr = params.n_rec_max;
  if (nb < 1 || nb > config.max_n_all) {
    throw InputError("n_brute_max must lie in [1, " + std::to_string(config.max_n_all) + "], got " +
                     std::to_string(nb));
  }
  if (nr < nb) throw InputError("n_rec_max must be at least n_brute_max");
  if (nr > CountTable::kMaxLength) {
    throw InputError("n_rec_max must be at most " + std::to_string(CountTable::kMaxLength));
  }
  if (params.k_max < 1) throw InputError("k_max must be at least 1");

  const CountTable table(nr);
  const int monotone_max = std::min({nr, kMonotoneBruteMax, config.max_n_monotone});
  Recorder rec;

  std::vector<BigInt> brute_total(static_cast<std::size_t>(nb) + 1);
  for (int n = 1; n <= nb; ++n) {
    rec.run("total_recurrence_vs_brute", {{"n", n}}, [&] {
      brute_total[static_cast<std::size_t>(n)] = count_brute(n, Rule::vacillating(1), EnumFilter::All, config);
      return same(brute_total[static_cast<std::size_t>(n)], table.total(n));
    });
  }

  for (int n = 1; n <= nb; ++n) {
    const SubsetTally tally = tally_subsets(n, config);
    for (int i = 1; i <= n; ++i) {
      rec.run("paren_recurrence_vs_tally", {{"n", n}, {"i", i}},
              [&] { return same(tally.by_paren(i), table.paren(n, i)); });
      rec.run("bracket_recurrence_vs_tally", {{"n", n}, {"i", i}},
              [&] { return same(tally.by_bracket(i), table.bracket(n, i)); });
    }
    rec.run("tally_partition_vs_brute", {{"n", n}},
            [&] { return same(brute_total[static_cast<std::size_t>(n)], tally.total()); });
  }

  for (const auto& seed : published_initial_conditions()) {
    if (seed.n > nr) continue;
    rec.run("initial_condition_paren", {{"n", seed.n}, {"i", seed.i}},
            [&] { return same(BigInt(seed.paren), table.paren(seed.n, seed.i)); });
    rec.run("initial_condition_bracket", {{"n", seed.n}, {"i", seed.i}},
            [&] { return same(BigInt(seed.bracket), table.bracket(seed.n, seed.i)); });
  }

  for (int n = 1; n <= nb; ++n) {
    for (int k = 1; k <= std::min(n, params.k_max); ++k) {
      rec.run("product_formula_vs_brute", {{"n", n}, {"k", k}}, [&] {
        const BigInt brute = k == 1 ? brute_total[static_cast<std::size_t>(n)]
                                    : count_brute(n, Rule::vacillating(k), EnumFilter::All, config);
        return same(brute, k_vacillating_count(n, k, table));
      });
    }
  }
  for (int n = 1; n <= nr; ++n) {
    rec.run("product_formula_k1_vs_recurrence", {{"n", n}},
            [&] { return same(table.total(n), k_vacillating_count(n, 1, table)); });
    if (n <= params.k_max) {
      rec.run("product_formula_k_equals_n", {{"n", n}},
              [&] { return same(factorial(n), k_vacillating_count(n, n, table)); });
    }
  }

  for (int n = 1; n <= monotone_max; ++n) {
    rec.run("nondec_recurrence_vs_brute", {{"n", n}}, [&] {
      return same(count_brute(n, Rule::vacillating(1), EnumFilter::NonDecreasing, config), table.nondec(n));
    });
    rec.run("noninc_recurrence_vs_brute", {{"n", n}}, [&] {
      return same(count_brute(n, Rule::vacillating(1), EnumFilter::NonIncreasing, config), table.noninc(n));
    });
    rec.run("nondec_lemma_bounds", {{"n", n}}, [&] {
      const auto bad = bound_violations(
          n, EnumFilter::NonDecreasing, [](int, int i) { return std::pair{i - 1, i + 1}; }, config);
      return same("0", std::to_string(bad));
    });
    rec.run("noninc_lemma_bounds", {{"n", n}}, [&] {
      const auto bad = bound_violations(
          n, EnumFilter::NonIncreasing, [](int len, int i) { return std::pair{len - i, len + 2 - i}; }, config);
      return same("0", std::to_string(bad));
    });
  }

  for (int n = 1; n <= nr; ++n) {
    rec.run("nondec_recurrence_vs_closed_form", {{"n", n}},
            [&] { return same(table.nondec(n), nondec_closed_exact(n)); });
    rec.run("nondec_recurrence_vs_convergent", {{"n", n}},
            [&] { return same(table.nondec(n), sqrt2_convergent(n).p); });
    rec.run("nondec_standalone_vs_table", {{"n", n}}, [&] { return same(table.nondec(n), nondec_count(n)); });
    rec.run("noninc_standalone_vs_table", {{"n", n}}, [&] { return same(table.noninc(n), noninc_count(n)); });
  }

  const auto series = noninc_series(nr);
  for (int n = 1; n <= nr; ++n) {
    rec.run("noninc_recurrence_vs_series", {{"n", n}},
            [&] { return same(table.noninc(n), series[static_cast<std::size_t>(n)]); });
  }
  for (int n = 1; n <= std::min(nr, kNumericClosedFormMaxN); ++n) {
    const auto numeric = noninc_closed_numeric_detail(n);
    rec.run("noninc_recurrence_vs_numeric", {{"n", n}}, [&] {
      const double exact = table.noninc(n).convert_to<double>();
      const double rel = std::abs(numeric.value - exact) / exact;
      return Verdict{to_decimal(table.noninc(n)) + " (rel 1e-6)", format_double(numeric.value), rel < 1e-6};
    });
    rec.run("noninc_numeric_imag_residue", {{"n", n}}, [&] {
      return Verdict{"< 1e-8", format_double(numeric.imag), std::abs(numeric.imag) < 1e-8};
    });
  }

  for (int n = 1; n <= nb; ++n) {
    rec.run("classical_brute_vs_cayley", {{"n", n}}, [&] {
      return same(ipow(BigInt(n + 1), static_cast<unsigned>(n - 1)),
                  count_brute(n, Rule::classical(), EnumFilter::All, config));
    });
  }

  rec.run("figure_member", {}, [&] {
    Outcome expected;
    expected.spots = {4, 1, 3, 2};
    return same(describe(expected), describe(simulate(PreferenceList({4, 1, 1, 4}), Rule::vacillating(2))));
  });
  rec.run("figure_nonmember", {}, [&] {
    Outcome expected;
    expected.status = Outcome::Status::Failure;
    expected.failing_car = 4;
    expected.spots = {4, 1, 3};
    return same(describe(expected), describe(simulate(PreferenceList({4, 1, 1, 1}), Rule::vacillating(2))));
  });
  rec.run("permutation_counterexample", {}, [&] {
    const bool in = is_parking_function(PreferenceList({1, 1, 2}), Rule::vacillating(1));
    const bool out = is_parking_function(PreferenceList({2, 1, 1}), Rule::vacillating(1));
    return same("(1,1,2) parks, (2,1,1) fails",
                std::string(in ? "(1,1,2) parks" : "(1,1,2) fails") + (out ? ", (2,1,1) parks" : ", (2,1,1) fails"));
  });
  if (monotone_max >= 3) {
    rec.run("noninc_listing", {{"n", 3}}, [&] {
      const std::vector<PreferenceList> expected{
          PreferenceList({2, 2, 2}), PreferenceList({3, 1, 1}), PreferenceList({3, 2, 1}),
          PreferenceList({3, 2, 2}), PreferenceList({3, 3, 1}), PreferenceList({3, 3, 2})};
      return same(join(expected),
                  join(enumerate_lists(3, Rule::vacillating(1), EnumFilter::NonIncreasing, std::nullopt, config)));
    });
  }

  rec.run("a001333_prefix", {}, [&] {
    const std::vector<long> known{1, 3, 7, 17, 41, 99, 239, 577};
    std::string expected, actual;
    for (int n = 1; n <= std::min<int>(nr, static_cast<int>(known.size())); ++n) {
      expected += (n > 1 ? "," : "") + std::to_string(known[static_cast<std::size_t>(n - 1)]);
      actual += (n > 1 ? "," : "") + to_decimal(table.nondec(n));
    }
    return same(expected, actual);
  });

  return std::move(rec).finish();
}

void write_report(const VerificationReport& report, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::JSONLines) {
    for (const auto& check : report.checks) {
      nlohmann::ordered_json record;
      record["check_id"] = check.check_id;
      record["parameters"] = nlohmann::ordered_json::object();
      for (const auto& [key, value] : check.parameters) record["parameters"][key] = value;
      record["expected"] = check.expected;
      record["actual"] = check.actual;
      record["passed"] = check.passed;
      record["elapsed_ms"] = check.elapsed.count();
      out << record.dump() << '\n';
    }
    nlohmann::ordered_json summary;
    summary["summary"] = true;
    summary["overall"] = report.overall;
    summary["checks"] = report.checks.size();
    summary["failed"] = report.failed();
    out << summary.dump() << '\n';
    return;
  }

  std::size_t id_width = 0;
  std::size_t param_width = 0;
  for (const auto& check : report.checks) {
    id_width = std::max(id_width, check.check_id.size());
    param_width = std::max(param_width, check.parameter_text().size());
  }
  RecordWriter writer(format, out, {"check_id", "parameters", "passed", "expected", "actual", "elapsed_ms"},
                      {id_width, param_width, 6, 0, 0, 0});
  for (const auto& check : report.checks) {
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, "%.3f", check.elapsed.count());
    writer.row({check.check_id, check.parameter_text(), check.passed ? "pass" : "FAIL", check.expected,
                check.actual, elapsed});
  }
  if (format == OutputFormat::HumanTable) {
    out << "overall: " << (report.overall ? "PASS" : "FAIL") << " (" << report.checks.size() << " checks, "
        << report.failed() << " failed)\n";
  }
}

std::vector<std::pair<int, std::string>> sequence_table(CountFamily::Kind family, int n_max) {
  using Kind = CountFamily::Kind;
  if (family == Kind::Spot || family == Kind::Paren || family == Kind::Bracket) {
    throw InputError(std::string("family '") + to_string(family) + "' is indexed by car; no single sequence");
  }
  if (n_max < 1) throw InputError("n_max must be at least 1");
  if (n_max > CountTable::kMaxLength) {
    throw InputError("n_max must be at most " + std::to_string(CountTable::kMaxLength));
  }
  const CountTable table(n_max);
  std::vector<std::pair<int, std::string>> rows;
  for (int n = 1; n <= n_max; ++n) rows.emplace_back(n, to_decimal(table.get(CountFamily{family, n, 0})));
  return rows;
}

}  // namespace vpf
