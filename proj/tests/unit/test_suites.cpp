#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "envalg/config.hpp"
#include "envalg/suites.hpp"

using namespace envalg;

namespace {

const Workbench& workbench() {
  static const Workbench wb = resolve(load_config_file(ENVALG_CONFIG_DIR "/workbench.json"));
  return wb;
}

std::string machine(const std::vector<Report>& reports) {
  std::ostringstream out;
  write_reports(out, reports, OutputFormat::Machine);
  return out.str();
}

}  // namespace

TEST(Suites, EveryShippedSuitePasses) {
  for (const Report& r : run_all(workbench(), {})) {
    EXPECT_TRUE(r.passed) << r.id;
    EXPECT_FALSE(r.error.has_value()) << r.id << ": " << r.error.value_or("");
    EXPECT_FALSE(r.checks.empty()) << r.id;
  }
}

TEST(Suites, NamesCoverAllPipelines) {
  EXPECT_EQ(suite_names().size(), 10u);
  for (const auto& name : suite_names()) {
    bool configured = false;
    for (const auto& s : workbench().config.suites) configured = configured || s.suite == name;
    EXPECT_TRUE(configured) << name;
  }
}

TEST(Suites, LookupByIdOrName) {
  RunOptions opts;
  opts.degree = 3;
  Report by_name = run_suite(workbench(), "bch-identity", opts);
  EXPECT_TRUE(by_name.passed);
  // one check per (m, n) with m + n <= 3 plus one exp-product check per degree
  EXPECT_EQ(by_name.checks.size(), 3u + (2u + 3u + 4u) + 1u);
  EXPECT_EQ(run_suite(workbench(), "extension-gauss", {}).id, "extension-gauss");
  EXPECT_THROW(run_suite(workbench(), "no-such-suite", {}), ConfigError);
}

TEST(Suites, OptionRangesAreChecked) {
  RunOptions opts;
  opts.degree = 11;
  EXPECT_THROW(run_suite(workbench(), "bch-identity", opts), ConfigError);
  opts.degree.reset();
  opts.tolerance = 1e-3;
  EXPECT_THROW(run_suite(workbench(), "kernel", opts), ConfigError);
}

TEST(Suites, MachineReportsAreDeterministic) {
  const std::string first = machine(run_all(workbench(), {}));
  RunOptions parallel;
  parallel.parallel = true;
  EXPECT_EQ(machine(run_all(workbench(), {})), first);
  EXPECT_EQ(machine(run_all(workbench(), parallel)), first);
}

TEST(Suites, MachineRecordsHaveFixedSchema) {
  std::istringstream in(machine({run_suite(workbench(), "local-hom-su2", {})}));
  std::string line;
  std::size_t records = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    ++records;
    if (j["record"] == "check") {
      for (const char* key : {"suite", "id", "check", "status", "expected", "actual", "residual"}) {
        EXPECT_TRUE(j.contains(key)) << key;
      }
      EXPECT_TRUE(j["residual"].is_number());
    } else {
      EXPECT_EQ(j["record"], "summary");
      EXPECT_EQ(j["status"], "PASS");
    }
  }
  EXPECT_EQ(records, 2u);
}

TEST(Suites, SeedChangesRandomizedSuitesOnly) {
  RunOptions seeded;
  seeded.seed = 17;
  Report a = run_suite(workbench(), "kernel", {}), b = run_suite(workbench(), "kernel", seeded);
  EXPECT_TRUE(b.passed);
  EXPECT_NE(machine({a}), machine({b}));
  EXPECT_EQ(machine({run_suite(workbench(), "gns-spin-half", {})}), machine({run_suite(workbench(), "gns-spin-half", seeded)}));
}

TEST(Suites, DumpObjects) {
  EXPECT_NE(dump_object(workbench(), "moment", "gauss", 2).find("3"), std::string::npos);
  EXPECT_FALSE(dump_object(workbench(), "bch", "", 3).empty());
  EXPECT_FALSE(dump_object(workbench(), "algebra", "heis", std::nullopt).empty());
  EXPECT_THROW(dump_object(workbench(), "functional", "nope", std::nullopt), ConfigError);
  EXPECT_THROW(dump_object(workbench(), "widget", "", std::nullopt), ConfigError);
}
