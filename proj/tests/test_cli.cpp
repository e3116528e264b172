#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "vpf/bigint.hpp"
#include "vpf/cli.hpp"
#include "vpf/output.hpp"

using namespace vpf;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "--no-cache");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

// Minimal RFC 4180 record parser for round-trip checks.
std::vector<std::string> parse_csv_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

}  // namespace

TEST_CASE("check: figure examples and exit codes") {
  auto r = run({"check", "--prefs", "4,1,1,4", "--rule", "vacillating", "--k", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("status: success") != std::string::npos);
  CHECK(r.out.find("spots:  4,1,3,2") != std::string::npos);

  r = run({"check", "--prefs", "4,1,1,1", "--rule", "vacillating", "--k", "2"});
  CHECK(r.code == 1);
  CHECK(r.out.find("failing car: 4") != std::string::npos);

  r = run({"check", "--prefs", "1", "--rule", "vacillating", "--k", "1"});
  CHECK(r.code == 0);
}

TEST_CASE("check: structured output") {
  auto r = run({"check", "--prefs", "4,1,1,1", "--k", "2", "--format", "jsonl"});
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(lines_of(r.out).at(0));
  CHECK(j["status"] == "failure");
  CHECK(j["failing_car"] == 4);
  CHECK(j["spots"] == nlohmann::json({4, 1, 3}));
}

TEST_CASE("check: malformed input exits 2") {
  CHECK(run({"check", "--prefs", "4,1,x"}).code == 2);
  CHECK(run({"check", "--prefs", "5,1"}).code == 2);
  CHECK(run({"check", "--prefs", "1,2", "--k", "3"}).code == 2);
  CHECK(run({"check", "--prefs", "1,2", "--rule", "naples"}).code == 2);
  CHECK(run({"check"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const auto r = run({"check", "--prefs", "5,1"});
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("count: every method") {
  auto r = run({"count", "--n", "3", "--k", "1", "--method", "recurrence"});
  CHECK(r.code == 0);
  CHECK(lines_of(r.out).at(0) == "20");

  r = run({"count", "--n", "4", "--k", "2", "--method", "product"});
  CHECK(lines_of(r.out).at(0) == "96");

  r = run({"count", "--n", "8", "--filter", "nondecreasing", "--method", "closed"});
  CHECK(lines_of(r.out).at(0) == "577");

  r = run({"count", "--n", "6", "--filter", "nonincreasing", "--method", "closed"});
  CHECK(lines_of(r.out).at(0) == "64");

  r = run({"count", "--n", "5", "--rule", "classical", "--method", "brute"});
  CHECK(lines_of(r.out).at(0) == "1296");

  r = run({"count", "--n", "5", "--rule", "classical", "--method", "closed"});
  CHECK(lines_of(r.out).at(0) == "1296");

  r = run({"count", "--n", "4", "--k", "2", "--method", "brute", "--threads", "3"});
  CHECK(lines_of(r.out).at(0) == "96");
}

TEST_CASE("count: invalid combinations list the valid methods") {
  auto r = run({"count", "--n", "4", "--k", "2", "--method", "recurrence"});
  CHECK(r.code == 2);
  CHECK(r.err.find("valid methods: brute, product") != std::string::npos);

  r = run({"count", "--n", "4", "--method", "closed"});
  CHECK(r.code == 2);
  CHECK(r.err.find("valid methods") != std::string::npos);

  CHECK(run({"count", "--n", "4", "--method", "magic"}).code == 2);
  CHECK(run({"count", "--n", "12", "--method", "brute"}).code == 2);  // resource guard
}

TEST_CASE("count: structured output round-trips the exact integer") {
  auto r = run({"count", "--n", "40", "--method", "recurrence", "--format", "jsonl"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(lines_of(r.out).at(0));
  REQUIRE(j["count"].is_string());
  const BigInt from_json = parse_decimal(j["count"].get<std::string>());

  r = run({"count", "--n", "40", "--method", "recurrence", "--format", "csv"});
  const auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 2);
  const auto header = parse_csv_record(rows[0]);
  const auto values = parse_csv_record(rows[1]);
  const auto col = static_cast<std::size_t>(std::find(header.begin(), header.end(), "count") - header.begin());
  REQUIRE(col < values.size());
  CHECK(parse_decimal(values[col]) == from_json);

  r = run({"count", "--n", "40", "--method", "product"});
  CHECK(parse_decimal(lines_of(r.out).at(0)) == from_json);
}

TEST_CASE("enumerate") {
  auto r = run({"enumerate", "--n", "3", "--k", "1", "--filter", "nonincreasing", "--format", "csv"});
  CHECK(r.code == 0);
  const auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == "prefs,spots");
  CHECK(parse_csv_record(rows[1]) == std::vector<std::string>{"2,2,2", "2,1,3"});
  CHECK(parse_csv_record(rows[6])[0] == "3,3,2");

  r = run({"enumerate", "--n", "1", "--k", "1", "--format", "jsonl"});
  CHECK(lines_of(r.out).size() == 1);

  r = run({"enumerate", "--n", "3", "--k", "1", "--limit", "2", "--format", "jsonl"});
  const auto two = lines_of(r.out);
  REQUIRE(two.size() == 2);
  CHECK(nlohmann::json::parse(two[0])["prefs"] == nlohmann::json({1, 1, 2}));
  CHECK(nlohmann::json::parse(two[1])["prefs"] == nlohmann::json({1, 1, 3}));

  r = run({"enumerate", "--n", "3", "--limit", "2"});
  CHECK(lines_of(r.out).size() == 3);  // header + 2 rows

  CHECK(run({"enumerate", "--n", "10"}).code == 2);
}

TEST_CASE("verify") {
  auto r = run({"verify", "--n-brute-max", "3", "--n-rec-max", "10", "--k-max", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("figure_member") != std::string::npos);
  CHECK(r.out.find("noninc_listing") != std::string::npos);
  CHECK(r.out.find("overall: PASS") != std::string::npos);

  r = run({"verify", "--n-brute-max", "3", "--n-rec-max", "5", "--format", "jsonl"});
  CHECK(r.code == 0);
  for (const auto& line : lines_of(r.out)) CHECK(nlohmann::json::accept(line));

  CHECK(run({"verify", "--n-brute-max", "0"}).code == 2);
  CHECK(run({"verify", "--n-brute-max", "5", "--n-rec-max", "4"}).code == 2);
}

TEST_CASE("invariant-scan") {
  auto r = run({"invariant-scan", "--n", "2", "--k", "1", "--format", "jsonl"});
  CHECK(r.code == 0);
  auto rows = lines_of(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(nlohmann::json::parse(rows.back())["count"] == "4");

  r = run({"invariant-scan", "--n", "1", "--k", "1", "--format", "jsonl"});
  CHECK(nlohmann::json::parse(lines_of(r.out).back())["count"] == "1");

  r = run({"invariant-scan", "--n", "3", "--k", "1", "--format", "csv"});
  CHECK(r.out.find("\"1,1,2\"") == std::string::npos);
  CHECK(r.out.find("\"1,1,1\"") == std::string::npos);  // (1,1,1) is not a parking function
  CHECK(r.out.find("\"1,2,3\"") != std::string::npos);

  CHECK(run({"invariant-scan", "--n", "7"}).code == 2);
}

TEST_CASE("table") {
  auto r = run({"table", "--family", "nondec", "--n-max", "5", "--format", "csv"});
  CHECK(r.out == "n,count\n1,1\n2,3\n3,7\n4,17\n5,41\n");
  CHECK(run({"table", "--family", "paren"}).code == 2);
}

TEST_CASE("help exits 0") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"count", "--help"}).code == 0);
}

TEST_CASE("csv_field quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(parse_csv_record(csv_field("x,\"y\"") + ",z") == std::vector<std::string>{"x,\"y\"", "z"});
}
