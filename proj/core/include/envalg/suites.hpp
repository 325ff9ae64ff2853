#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "envalg/config.hpp"
#include "envalg/report.hpp"

namespace envalg {

struct RunOptions {
  /// Overrides every suite's degree (N <= 10).
  std::optional<unsigned> degree;
  /// Overrides every suite's tolerance (within [0, 1e-6]).
  std::optional<double> tolerance;
  /// Base seed for randomized suites, combined with each suite's own seed.
  std::uint64_t seed = 0;
  /// Run independent suites concurrently; output order is unchanged.
  bool parallel = false;
};

/// Names accepted by `run`: the ten pipelines.
const std::vector<std::string>& suite_names();

/// Runs one suite descriptor. Errors inside the pipeline become a FAIL report
/// carrying the message; out-of-range options throw ConfigError.
Report run_suite(const Workbench& wb, const SuiteSpec& suite, const RunOptions& options);

/// Looks the suite up by id, falling back to the first descriptor of that
/// suite name. Throws ConfigError when nothing matches.
Report run_suite(const Workbench& wb, std::string_view name, const RunOptions& options);

/// Every configured suite, in config order.
std::vector<Report> run_all(const Workbench& wb, const RunOptions& options);

/// Human-readable dump of a configured object. Kinds: config, algebra,
/// representation, functional, moment (functional at --degree or 2), bch
/// (series at --degree or 4).
std::string dump_object(const Workbench& wb, std::string_view kind, std::string_view name, std::optional<unsigned> degree);

}  // namespace envalg
