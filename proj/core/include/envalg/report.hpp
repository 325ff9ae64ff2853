#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace envalg {

struct CheckRecord {
  std::string id;
  bool passed = false;
  std::string expected;
  std::string actual;
  /// Absent for purely combinatorial checks.
  std::optional<double> residual;
};

struct Report {
  std::string suite;
  std::string id;
  bool passed = true;
  std::vector<CheckRecord> checks;
  /// Notes that do not affect the status (diagnostic tables and the like).
  std::vector<std::string> notes;
  /// Only shown in text output so machine reports stay reproducible.
  double duration_seconds = 0.0;
  /// Set when the suite aborted with an error; the suite then fails.
  std::optional<std::string> error;

  void add(CheckRecord record);
  void add(std::string id, bool passed, std::string expected, std::string actual,
           std::optional<double> residual = std::nullopt);
};

enum class OutputFormat { Text, Machine };

/// Text: one header line per suite and one line per check. Machine: JSON
/// Lines, one record per check plus one "summary" record per suite, with a
/// fixed key set.
void write_report(std::ostream& out, const Report& report, OutputFormat format);
void write_reports(std::ostream& out, const std::vector<Report>& reports, OutputFormat format);

}  // namespace envalg
