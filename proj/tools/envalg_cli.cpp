// envalg: run the verification suites of a workbench config.
//
//   envalg validate --config workbench.json
//   envalg run recursion --config workbench.json --format machine
//   envalg run-all --config workbench.json --parallel --out report.jsonl
//   envalg dump functional spin_half --config workbench.json
//
// Exit status: 0 all PASS, 1 any FAIL, 2 configuration or usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "envalg/config.hpp"
#include "envalg/suites.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfigError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"envalg: enveloping-algebra positivity and integrability workbench"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path;
  std::optional<unsigned> degree;
  std::optional<double> tolerance;
  std::string format = "text";
  std::uint64_t seed = 0;
  bool parallel = false;
  std::string out_path;

  app.add_option("--config", config_path, "Workbench config (JSON)")->required()->check(CLI::ExistingFile);
  app.add_option("--degree", degree, "Override suite degree N (<= 10)");
  app.add_option("--tolerance", tolerance, "Override suite tolerance, in [0, 1e-6]");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--seed", seed, "Base seed for randomized suites");
  app.add_flag("--parallel", parallel, "Run independent suites concurrently");
  app.add_option("--out", out_path, "Write the report to this file instead of stdout");

  auto* validate = app.add_subcommand("validate", "Parse and validate the config");
  std::string suite_name;
  auto* run = app.add_subcommand("run", "Run one suite (by id or pipeline name)");
  run->add_option("suite", suite_name, "Suite id or name")->required();
  auto* run_all = app.add_subcommand("run-all", "Run every configured suite");
  std::string dump_kind, dump_name;
  auto* dump = app.add_subcommand("dump", "Print a configured object");
  dump->add_option("kind", dump_kind, "config | algebra | representation | functional | moment | bch")->required();
  dump->add_option("name", dump_name, "Object name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      std::cerr << fmt::format("error: cannot write \"{}\"\n", out_path);
      return kConfigError;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  const auto fmt_mode = format == "machine" ? envalg::OutputFormat::Machine : envalg::OutputFormat::Text;

  try {
    envalg::Workbench wb = envalg::resolve(envalg::load_config_file(config_path));
    envalg::RunOptions opts;
    opts.degree = degree;
    opts.tolerance = tolerance;
    opts.seed = seed;
    opts.parallel = parallel;

    if (*validate) {
      out << fmt::format("config OK: {} algebras, {} representations, {} functionals, {} suites\n",
                         wb.config.algebras.size(), wb.config.representations.size(), wb.config.functionals.size(),
                         wb.config.suites.size());
      return kPass;
    }
    if (*dump) {
      out << envalg::dump_object(wb, dump_kind, dump_name, degree);
      return kPass;
    }
    std::vector<envalg::Report> reports;
    if (*run) {
      reports.push_back(envalg::run_suite(wb, suite_name, opts));
    } else if (*run_all) {
      reports = envalg::run_all(wb, opts);
    }
    envalg::write_reports(out, reports, fmt_mode);
    out.flush();
    for (const auto& r : reports) {
      if (!r.passed || r.error) return kFail;
    }
    return kPass;
  } catch (const envalg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    if (*run) std::cerr << app.get_subcommand("run")->help();
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}
