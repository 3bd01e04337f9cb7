// Copyright 2026 The mcl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mcl/report.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mcl/acceptance.hpp"

namespace mcl {
namespace {

using report::Json;

// A small JSON Schema validator: type, enum, required, properties, items,
// minimum, maximum. Returns the first violation, or "" when valid.
std::string validate(const nlohmann::json& schema, const Json& v, const std::string& path = "$") {
  if (schema.contains("type")) {
    const auto t = schema["type"].get<std::string>();
    const bool ok = (t == "object" && v.is_object()) || (t == "array" && v.is_array()) ||
                    (t == "string" && v.is_string()) || (t == "boolean" && v.is_boolean()) ||
                    (t == "integer" && v.is_number_integer()) || (t == "number" && v.is_number()) ||
                    (t == "null" && v.is_null());
    if (!ok) return path + ": expected " + t;
  }
  if (schema.contains("enum")) {
    bool hit = false;
    for (const auto& e : schema["enum"]) hit = hit || Json(e) == v;
    if (!hit) return path + ": value not in enum";
  }
  if (schema.contains("minimum") && v.is_number() && v.get<double>() < schema["minimum"].get<double>())
    return path + ": below minimum";
  if (schema.contains("maximum") && v.is_number() && v.get<double>() > schema["maximum"].get<double>())
    return path + ": above maximum";
  if (v.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema["required"])
        if (!v.contains(k.get<std::string>())) return path + ": missing " + k.get<std::string>();
    if (schema.contains("properties"))
      for (const auto& [k, s] : schema["properties"].items())
        if (v.contains(k))
          if (auto e = validate(s, v[k], path + "." + k); !e.empty()) return e;
  }
  if (v.is_array() && schema.contains("items"))
    for (std::size_t i = 0; i < v.size(); ++i)
      if (auto e = validate(schema["items"], v[i], path + "[" + std::to_string(i) + "]"); !e.empty())
        return e;
  return "";
}

nlohmann::json load_schema(const std::string& name) {
  std::ifstream in(std::string(MCL_SOURCE_DIR) + "/docs/schema/" + name);
  return nlohmann::json::parse(in);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("mcl_report_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir / name;
}

// Runs the CLI, returns its exit status; stdout goes to `out`.
int cli(const std::string& args, const std::string& out = "/dev/null") {
  const std::string cmd = std::string(MCL_CLI_PATH) + " " + args + " > " + out + " 2>/dev/null";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

TEST(Report, SeventeenDigits) {
  EXPECT_EQ(report::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(report::format_double(1.0), "1.0");
  EXPECT_EQ(report::format_double(2.0 / 3), "0.66666666666666663");
  EXPECT_EQ(report::format_double(-2.5e-300), "-2.5e-300");  // %g drops trailing zeros
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 10000; ++i) {
    const double v = u(rng);
    EXPECT_EQ(std::strtod(report::format_double(v).c_str(), nullptr), v);
  }
}

TEST(Report, EmptyTableIsHeaderOnly) {
  report::Report r;
  r.command = "sieve";
  r.table.columns = {"n", "value"};
  EXPECT_EQ(report::to_csv(r), "n,value\n");
  const auto j = Json::parse(report::render(r, report::Format::json));
  EXPECT_TRUE(j["rows"].is_array());
  EXPECT_TRUE(j["rows"].empty());
}

TEST(Report, CsvQuotingAndCells) {
  report::Report r;
  r.table.columns = {"a", "b", "c", "d", "e"};
  r.table.add({std::int64_t{-3}, std::string("x,\"y\""), true, 0.5, std::monostate{}});
  EXPECT_EQ(report::to_csv(r), "a,b,c,d,e\n-3,\"x,\"\"y\"\"\",true,0.5,\n");
  EXPECT_THROW(r.table.add({std::int64_t{1}}), PreconditionError);
}

TEST(Report, KeyValueCsvWithoutTable) {
  report::Report r;
  r.command = "arcs";
  r.fields = {{"alpha", 0.25}, {"kind", "major"}, {"approx", {{"q", 4}}}};
  EXPECT_EQ(report::to_csv(r), "key,value\nalpha,0.25\nkind,major\napprox,\"{\"\"q\"\":4}\"\n");
}

TEST(Report, JsonRoundTripsThroughStrictParser) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  report::Report r;
  r.command = "correlate";
  r.fields = {{"nested", {{"x", 1.0 / 3}, {"list", {1, 2.5, "s\"q"}}}}, {"flag", false},
              {"big", std::uint64_t{18446744073709551615ULL}}};
  r.table.columns = {"h", "re"};
  std::vector<double> vals;
  for (int i = 0; i < 100; ++i) {
    vals.push_back(u(rng) * std::pow(10.0, i % 20 - 10));
    r.table.add({std::uint64_t(i), vals.back()});
  }
  const auto text = report::render(r, report::Format::json);
  const auto j = nlohmann::json::parse(text);  // throws on malformed input
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["command"], "correlate");
  EXPECT_EQ(j["nested"]["x"].get<double>(), 1.0 / 3);
  EXPECT_EQ(j["nested"]["list"][2], "s\"q");
  EXPECT_EQ(j["big"].get<std::uint64_t>(), 18446744073709551615ULL);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(j["rows"][i]["re"].get<double>(), vals[i]);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(text.find('\n'), text.size() - 1);
}

TEST(Report, NonFiniteBecomesNull) {
  report::Report r;
  r.fields = {{"a", std::nan("")}, {"b", INFINITY}};
  const auto j = Json::parse(report::render(r, report::Format::json));
  EXPECT_TRUE(j["a"].is_null());
  EXPECT_TRUE(j["b"].is_null());
  EXPECT_EQ(report::format_double(-INFINITY), "-inf");
}

TEST(Report, UnwritablePath) {
  report::Report r;
  EXPECT_THROW(report::emit(r, report::Format::csv, "/nonexistent-dir/x.csv"), OutputError);
  EXPECT_THROW(report::parse_format("xml"), PreconditionError);
}

TEST(Schema, ValidatorRejectsBrokenReports) {
  const auto schema = load_schema("accept.schema.json");
  Json ok = {{"schema_version", 1}, {"command", "accept"}, {"suite", "7"}, {"seed", 1},
             {"passed", 1}, {"total", 1},
             {"criteria", {{{"id", 7}, {"name", "x"}, {"pass", true}, {"summary", ""}, {"metrics", Json::object()}}}},
             {"rows", Json::array()}};
  EXPECT_EQ(validate(schema, ok), "");
  auto missing = ok;
  missing.erase("total");
  EXPECT_NE(validate(schema, missing), "");
  auto wrong = ok;
  wrong["criteria"][0]["pass"] = "yes";
  EXPECT_NE(validate(schema, wrong), "");
  auto range = ok;
  range["criteria"][0]["id"] = 16;
  EXPECT_NE(validate(schema, range), "");
}

TEST(Schema, AcceptReportValidates) {
  const auto runs = acceptance::run_suite(acceptance::parse_suite("2,4,7,9-11"), acceptance::kDefaultSeed);
  std::vector<acceptance::Criterion> cs;
  for (const auto& t : runs) cs.push_back(t.criterion);
  const auto r = acceptance::to_report(cs, "2,4,7,9-11", acceptance::kDefaultSeed);
  const auto j = Json::parse(report::render(r, report::Format::json));
  EXPECT_EQ(validate(load_schema("accept.schema.json"), j), "");
  EXPECT_EQ(validate(load_schema("envelope.schema.json"), j), "");
  EXPECT_EQ(j["total"], 6);
  EXPECT_EQ(j["passed"], 6);
}

TEST(Acceptance, SuiteParsing) {
  EXPECT_EQ(acceptance::parse_suite("all").size(), 15u);
  EXPECT_EQ(acceptance::parse_suite("3,1-2,2"), (std::vector<int>{1, 2, 3}));
  EXPECT_THROW(acceptance::parse_suite("0"), PreconditionError);
  EXPECT_THROW(acceptance::parse_suite("16"), PreconditionError);
  EXPECT_THROW(acceptance::parse_suite("3-1"), PreconditionError);
  EXPECT_THROW(acceptance::parse_suite("x"), PreconditionError);
  EXPECT_THROW(acceptance::parse_suite("2x"), PreconditionError);
}

TEST(Cli, SieveSpfGivesElevenRows) {
  const auto out = scratch("spf.csv").string();
  ASSERT_EQ(cli("sieve --lo 2 --hi 12 --mode spf", out), 0);
  EXPECT_EQ(slurp(out), "n,value\n2,2\n3,3\n4,2\n5,5\n6,2\n7,7\n8,2\n9,3\n10,2\n11,11\n12,2\n");
}

TEST(Cli, SieveBinaryLayout) {
  const auto out = scratch("l.bin").string();
  ASSERT_EQ(cli("--format binary --out " + out + " sieve --lo 1 --hi 12 --mode liouville"), 0);
  const auto b = slurp(out);
  ASSERT_EQ(b.size(), 4u + 1 + 16 + 12);
  EXPECT_EQ(b.substr(0, 4), "MCL1");
  EXPECT_EQ(b[4], 1);
  EXPECT_EQ(static_cast<unsigned char>(b[5]), 1u);   // lo = 1, little-endian
  EXPECT_EQ(static_cast<unsigned char>(b[13]), 12u);  // hi = 12
  const int want[] = {1, -1, -1, 1, -1, 1, -1, -1, 1, 1, -1, -1};
  for (int i = 0; i < 12; ++i) EXPECT_EQ(static_cast<signed char>(b[21 + i]), want[i]) << i + 1;
}

// Two consecutive runs of every subcommand give identical bytes.
TEST(Cli, DeterministicAcrossRuns) {
  const std::vector<std::string> runs{
      "sieve --lo 1 --hi 200 --mode moebius",
      "typical --p1 11 --q1 20 --x0 100000000000 --x 100000000000 --samples 20000",
      "distance --f liouville --g twist:2.5 --x 5000",
      "bigm --f liouville --x 2000",
      "bigm --f char:7:2 --x 500 --qmax 7",
      "correlate --x 10000 --h-max 100 --f liouville",
      "correlate --x 5000 --h-max 30 --k 3 --samples 60",
      "fourier-check --support 20 --range 80 --h 7.5",
      "variance --x 20000 --h 50",
      "expsum --x 2000 --h 40 --alpha 0.3",
      "expsum --x 1000 --h 30 --sup --grid 50",
      "arcs --alpha 0.61803398874989 --qcap 1000",
      "ramare --x 5000",
      "vinogradov --n 2000 --a 100 --alpha 0.1",
      "flask --p 30 --h 500 --alpha 0.2",
      "counterexample --t1 10 --stages 1 --eps 0.1 --corr-max 20000",
      "accept --suite 7,11",
  };
  for (const auto& args : runs) {
    const auto a = scratch("a.out").string(), b = scratch("b.out").string();
    for (const auto& fmt : {"json", "csv"}) {
      const std::string full = std::string("--seed 99 --format ") + fmt + " " + args;
      ASSERT_EQ(cli(full, a), 0) << full;
      ASSERT_EQ(cli(full, b), 0) << full;
      const auto x = slurp(a);
      EXPECT_FALSE(x.empty()) << full;
      EXPECT_EQ(x, slurp(b)) << full;
      if (std::string(fmt) == "json") {
        const auto j = Json::parse(x);
        EXPECT_EQ(validate(load_schema("envelope.schema.json"), j), "") << full;
      }
    }
  }
}

TEST(Cli, SeedChangesSampledOutput) {
  const auto a = scratch("s1.json").string(), b = scratch("s2.json").string();
  const std::string args = " correlate --x 5000 --h-max 30 --k 3 --samples 60";
  ASSERT_EQ(cli("--seed 1" + args, a), 0);
  ASSERT_EQ(cli("--seed 2" + args, b), 0);
  EXPECT_NE(slurp(a), slurp(b));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("frobnicate"), 1);
  EXPECT_EQ(cli(""), 1);
  EXPECT_EQ(cli("sieve --lo 1 --hi 5 --bogus 3"), 1);
  EXPECT_EQ(cli("sieve --lo x --hi 5"), 2);
  EXPECT_EQ(cli("--format xml sieve --lo 1 --hi 5"), 2);
  EXPECT_EQ(cli("--format binary distance --x 100"), 2);
  // Forced failures, one per subcommand.
  EXPECT_EQ(cli("sieve --lo 0 --hi 5"), 2);
  EXPECT_EQ(cli("sieve --lo 1 --hi 20000000000"), 3);
  EXPECT_EQ(cli("--mem-budget 800 sieve --lo 1 --hi 100000"), 3);
  EXPECT_EQ(cli("typical --p1 5 --q1 20 --x0 1000 --x 1000"), 2);
  EXPECT_EQ(cli("distance --f nosuch --x 100"), 2);
  EXPECT_EQ(cli("distance --f char:5:9 --x 100"), 2);
  EXPECT_EQ(cli("bigm --x 50"), 2);
  EXPECT_EQ(cli("bigm --x 1000 --qmax 5000"), 2);
  EXPECT_EQ(cli("correlate --x 100 --h-max 100"), 2);
  EXPECT_EQ(cli("correlate --x 100 --h-max 10 --k 3 --samples 5"), 2);
  EXPECT_EQ(cli("fourier-check --h 0"), 2);
  EXPECT_EQ(cli("variance --x 1000 --h 5"), 2);
  EXPECT_EQ(cli("variance --x 5000000000 --h 100"), 3);
  EXPECT_EQ(cli("expsum --x 0 --h 5"), 2);
  EXPECT_EQ(cli("arcs --alpha 0.5 --qcap 0"), 2);
  EXPECT_EQ(cli("ramare --x 1000 --convention other"), 2);
  EXPECT_EQ(cli("vinogradov --n 0 --a 10 --alpha 0.1"), 2);
  EXPECT_EQ(cli("flask --p 5000 --h 10 --alpha 0.1"), 2);
  EXPECT_EQ(cli("counterexample --t1 5"), 2);
  EXPECT_EQ(cli("counterexample --t1 20 --eps 0.05 --s-cap 500"), 3);
  EXPECT_EQ(cli("accept --suite 99"), 2);
  EXPECT_EQ(cli("--out /nonexistent-dir/r.json arcs --alpha 0.5 --qcap 3"), 3);
}

}  // namespace
}  // namespace mcl
