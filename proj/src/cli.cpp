#include "vpf/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "vpf/closed_forms.hpp"
#include "vpf/enumerator.hpp"
#include "vpf/errors.hpp"
#include "vpf/output.hpp"
#include "vpf/recurrence.hpp"
#include "vpf/rule_engine.hpp"
#include "vpf/validation.hpp"

namespace vpf::cli {

namespace {

using json = nlohmann::json;

struct GlobalOptions {
  std::optional<unsigned> threads;
  std::string cache_path;
  bool no_cache = false;
};

struct RuleOptions {
  std::string rule = "vacillating";
  int k = 1;

  Rule build() const {
    if (rule == "classical") return Rule::classical();
    if (rule == "vacillating") return Rule::vacillating(k);
    throw InputError("unknown rule '" + rule + "' (expected classical or vacillating)");
  }
};

EnumFilter parse_filter(const std::string& name) {
  if (name == "all") return EnumFilter::All;
  if (name == "nondecreasing" || name == "nondec") return EnumFilter::NonDecreasing;
  if (name == "nonincreasing" || name == "noninc") return EnumFilter::NonIncreasing;
  throw InputError("unknown filter '" + name + "' (expected all, nondecreasing or nonincreasing)");
}

std::optional<std::filesystem::path> default_cache_path() {
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0')
    return std::filesystem::path(xdg) / "vpf" / "count-table-v1.txt";
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0')
    return std::filesystem::path(home) / ".cache" / "vpf" / "count-table-v1.txt";
  return std::nullopt;
}

std::optional<std::filesystem::path> cache_location(const GlobalOptions& global) {
  if (global.no_cache) return std::nullopt;
  if (!global.cache_path.empty()) return std::filesystem::path(global.cache_path);
  return default_cache_path();
}

EnumConfig enum_config(const GlobalOptions& global, std::optional<int> max_n) {
  EnumConfig config = EnumConfig::from_environment();
  if (global.threads) config.workers = std::max(1U, *global.threads);
  if (max_n) {
    config.max_n_all = *max_n;
    config.max_n_monotone = std::max(config.max_n_monotone, *max_n);
    config.max_n_invariant = *max_n;
  }
  return config;
}

json spots_json(const std::vector<int>& spots) { return json(spots); }

json prefs_json(const PreferenceList& prefs) {
  return json(std::vector<int>(prefs.values().begin(), prefs.values().end()));
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// --- check ------------------------------------------------------------------

struct CheckArgs {
  std::string prefs;
  RuleOptions rule;
  std::string format = "table";
};

int cmd_check(const CheckArgs& args, std::ostream& out) {
  const auto format = parse_output_format(args.format);
  const PreferenceList prefs = PreferenceList::parse(args.prefs);
  const Rule rule = args.rule.build();
  const Outcome outcome = simulate(prefs, rule);

  const json failing = outcome.failing_car ? json(*outcome.failing_car) : json(nullptr);
  const std::string status = outcome.success() ? "success" : "failure";
  if (format == OutputFormat::HumanTable) {
    out << "prefs:  " << prefs.to_string() << '\n'
        << "rule:   " << rule.to_string() << '\n'
        << "status: " << status << '\n'
        << "spots:  " << cell_text(spots_json(outcome.spots)) << '\n';
    if (outcome.failing_car) out << "failing car: " << *outcome.failing_car << '\n';
  } else {
    RecordWriter writer(format, out, {"prefs", "rule", "k", "status", "spots", "failing_car"});
    writer.row({prefs_json(prefs), args.rule.rule, rule.k(), status, spots_json(outcome.spots), failing});
  }
  return outcome.success() ? kExitOk : kExitFailure;
}

// --- count ------------------------------------------------------------------

struct CountArgs {
  int n = 0;
  RuleOptions rule;
  std::string method = "recurrence";
  std::string filter = "all";
  std::string format = "table";
  std::optional<int> max_n;
};

std::string valid_methods(const Rule& rule, EnumFilter filter) {
  if (rule.kind() == Rule::Kind::Classical) return filter == EnumFilter::All ? "brute, closed" : "brute";
  if (filter == EnumFilter::All) return rule.k() == 1 ? "brute, recurrence, product" : "brute, product";
  return rule.k() == 1 ? "brute, recurrence, closed" : "brute";
}

int cmd_count(const CountArgs& args, const GlobalOptions& global, std::ostream& out) {
  const auto format = parse_output_format(args.format);
  const Rule rule = args.rule.build();
  const EnumFilter filter = parse_filter(args.filter);
  if (args.n < 0) throw InputError("n must be nonnegative");
  if (args.n > 0) rule.validate_for(args.n);

  const std::string& method = args.method;
  const std::string allowed = valid_methods(rule, filter);
  auto reject = [&]() -> InputError {
    return InputError("method '" + method + "' does not apply to rule " + rule.to_string() + " with filter " +
                      to_string(filter) + "; valid methods: " + allowed);
  };
  if (method != "brute" && method != "recurrence" && method != "product" && method != "closed") {
    throw InputError("unknown method '" + method + "'; valid methods: " + allowed);
  }

  const auto start = std::chrono::steady_clock::now();
  BigInt count;
  const bool vacillating = rule.kind() == Rule::Kind::Vacillating;
  if (method == "brute") {
    count = count_brute(args.n, rule, filter, enum_config(global, args.max_n));
  } else if (method == "recurrence") {
    if (!vacillating || rule.k() != 1) throw reject();
    if (filter == EnumFilter::All) {
      count = cached_table(args.n, cache_location(global)).total(args.n);
    } else {
      count = filter == EnumFilter::NonDecreasing ? nondec_count(args.n) : noninc_count(args.n);
    }
  } else if (method == "product") {
    if (!vacillating || filter != EnumFilter::All) throw reject();
    count = args.n == 0 ? BigInt(1)
                        : k_vacillating_count(args.n, rule.k(),
                                              cached_table(args.n / rule.k() + 1, cache_location(global)));
  } else {
    if (!vacillating) {
      if (filter != EnumFilter::All) throw reject();
      count = args.n == 0 ? BigInt(1) : ipow(BigInt(args.n + 1), static_cast<unsigned>(args.n - 1));
    } else {
      if (rule.k() != 1 || filter == EnumFilter::All) throw reject();
      if (filter == EnumFilter::NonDecreasing) {
        count = nondec_closed_exact(args.n);
      } else {
        if (args.n < 1) throw InputError("n must be at least 1 for monotone counts");
        count = noninc_series(args.n)[static_cast<std::size_t>(args.n)];
      }
    }
  }
  const double ms = elapsed_ms(start);

  if (format == OutputFormat::HumanTable) {
    out << to_decimal(count) << '\n'
        << "n=" << args.n << " rule=" << rule.to_string() << " filter=" << to_string(filter)
        << " method=" << method << " elapsed_ms=" << ms << '\n';
  } else {
    RecordWriter writer(format, out, {"n", "rule", "k", "filter", "method", "count", "elapsed_ms"});
    writer.row({args.n, args.rule.rule, rule.k(), to_string(filter), method, to_decimal(count), ms});
  }
  return kExitOk;
}

// --- enumerate --------------------------------------------------------------

struct EnumerateArgs {
  int n = 0;
  RuleOptions rule;
  std::string filter = "all";
  std::optional<std::size_t> limit;
  std::string format = "table";
  std::optional<int> max_n;
};

int cmd_enumerate(const EnumerateArgs& args, const GlobalOptions& global, std::ostream& out) {
  const auto format = parse_output_format(args.format);
  const Rule rule = args.rule.build();
  const EnumFilter filter = parse_filter(args.filter);
  const auto width = static_cast<std::size_t>(std::max(0, 2 * args.n - 1));
  RecordWriter writer(format, out, {"prefs", "spots"}, {width, width});
  enumerate(
      args.n, rule, filter, args.limit,
      [&](const EnumeratedList& item) { writer.row({prefs_json(item.prefs), spots_json(item.spots)}); },
      enum_config(global, args.max_n));
  return kExitOk;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  VerifyParams params;
  std::string format = "table";
};

int cmd_verify(const VerifyArgs& args, const GlobalOptions& global, std::ostream& out) {
  const auto format = parse_output_format(args.format);
  const auto report = verify_suite(args.params, enum_config(global, std::nullopt));
  write_report(report, format, out);
  return report.overall ? kExitOk : kExitFailure;
}

// --- invariant-scan ---------------------------------------------------------

struct InvariantArgs {
  int n = 0;
  int k = 1;
  std::string format = "table";
  std::optional<int> max_n;
};

int cmd_invariant_scan(const InvariantArgs& args, const GlobalOptions& global, std::ostream& out) {
  const auto format = parse_output_format(args.format);
  const auto scan = permutation_invariant_scan(args.n, args.k, enum_config(global, args.max_n));
  const auto width = static_cast<std::size_t>(std::max(0, 2 * args.n - 1));
  RecordWriter writer(format, out, {"record", "prefs", "count"}, {6, width});
  for (const auto& member : scan.members) writer.row({"member", prefs_json(member), nullptr});
  writer.row({"total", nullptr, std::to_string(scan.count)});
  return kExitOk;
}

// --- table ------------------------------------------------------------------

struct TableArgs {
  std::string family = "total";
  int n_max = 10;
  std::string format = "table";
};

int cmd_table(const TableArgs& args, std::ostream& out) {
  const auto format = parse_output_format(args.format);
  const auto rows = sequence_table(parse_family_kind(args.family), args.n_max);
  RecordWriter writer(format, out, {"n", "count"}, {3, 0});
  for (const auto& [n, count] : rows) writer.row({n, count});
  return kExitOk;
}

void add_rule_options(CLI::App* cmd, RuleOptions& rule) {
  cmd->add_option("--rule", rule.rule, "Parking rule: classical or vacillating")->capture_default_str();
  cmd->add_option("--k", rule.k, "Step size of the vacillating rule")->capture_default_str();
}

void add_format_option(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format: table, jsonl or csv")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact enumeration and cross-checking of k-vacillating parking functions", "vpf"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--threads", global.threads,
                 std::string("Worker threads (overrides ") + kWorkersEnvVar + ")")
      ->check(CLI::PositiveNumber);
  app.add_option("--cache", global.cache_path, "Count-table cache file");
  app.add_flag("--no-cache", global.no_cache, "Do not read or write the count-table cache");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Simulate one preference list");
  check->add_option("--prefs", check_args.prefs, "Comma-separated preferences, e.g. 4,1,1,4")->required();
  add_rule_options(check, check_args.rule);
  add_format_option(check, check_args.format);

  CountArgs count_args;
  auto* count = app.add_subcommand("count", "Count parking functions of length n");
  count->add_option("--n", count_args.n, "Length")->required();
  add_rule_options(count, count_args.rule);
  count->add_option("--method", count_args.method, "brute, recurrence, product or closed")->capture_default_str();
  count->add_option("--filter", count_args.filter, "all, nondecreasing or nonincreasing")->capture_default_str();
  count->add_option("--max-n", count_args.max_n, "Raise the exhaustive-scan ceiling");
  add_format_option(count, count_args.format);

  EnumerateArgs enum_args;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "List parking functions in lexicographic order");
  enumerate_cmd->add_option("--n", enum_args.n, "Length")->required();
  add_rule_options(enumerate_cmd, enum_args.rule);
  enumerate_cmd->add_option("--filter", enum_args.filter, "all, nondecreasing or nonincreasing")
      ->capture_default_str();
  enumerate_cmd->add_option("--limit", enum_args.limit, "Stop after this many rows");
  enumerate_cmd->add_option("--max-n", enum_args.max_n, "Raise the exhaustive-scan ceiling");
  add_format_option(enumerate_cmd, enum_args.format);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Cross-check every counting path");
  verify->add_option("--n-brute-max", verify_args.params.n_brute_max, "Largest n for exhaustive scans")
      ->capture_default_str();
  verify->add_option("--n-rec-max", verify_args.params.n_rec_max, "Largest n for recurrence checks")
      ->capture_default_str();
  verify->add_option("--k-max", verify_args.params.k_max, "Largest k for product-formula checks")
      ->capture_default_str();
  add_format_option(verify, verify_args.format);

  InvariantArgs inv_args;
  auto* invariant = app.add_subcommand("invariant-scan", "List permutation-invariant k-vacillating parking functions");
  invariant->add_option("--n", inv_args.n, "Length")->required();
  invariant->add_option("--k", inv_args.k, "Step size")->capture_default_str();
  invariant->add_option("--max-n", inv_args.max_n, "Raise the scan ceiling");
  add_format_option(invariant, inv_args.format);

  TableArgs table_args;
  auto* table = app.add_subcommand("table", "Print a count sequence for n = 1..n-max");
  table->add_option("--family", table_args.family, "total, nondec or noninc")->capture_default_str();
  table->add_option("--n-max", table_args.n_max, "Last length")->capture_default_str();
  add_format_option(table, table_args.format);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("vpf");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*check) return cmd_check(check_args, out);
    if (*count) return cmd_count(count_args, global, out);
    if (*enumerate_cmd) return cmd_enumerate(enum_args, global, out);
    if (*verify) return cmd_verify(verify_args, global, out);
    if (*invariant) return cmd_invariant_scan(inv_args, global, out);
    if (*table) return cmd_table(table_args, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace vpf::cli
