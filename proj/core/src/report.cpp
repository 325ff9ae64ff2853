#include "envalg/report.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace envalg {

void Report::add(CheckRecord record) {
  passed = passed && record.passed;
  checks.push_back(std::move(record));
}

void Report::add(std::string check_id, bool ok, std::string expected, std::string actual,
                 std::optional<double> residual) {
  add(CheckRecord{std::move(check_id), ok, std::move(expected), std::move(actual), residual});
}

namespace {

const char* status(bool ok) { return ok ? "PASS" : "FAIL"; }

void write_text(std::ostream& out, const Report& r) {
  out << fmt::format("[{}] {}", status(r.passed && !r.error), r.id);
  if (r.id != r.suite) out << fmt::format(" ({})", r.suite);
  out << fmt::format("  {} checks  {:.3f} s\n", r.checks.size(), r.duration_seconds);
  if (r.error) out << "  error: " << *r.error << "\n";
  for (const auto& c : r.checks) {
    out << fmt::format("  {}  {}  expected: {}  actual: {}", status(c.passed), c.id, c.expected, c.actual);
    if (c.residual) out << fmt::format("  residual: {:.6e}", *c.residual);
    out << "\n";
  }
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
}

void write_machine(std::ostream& out, const Report& r) {
  using json = nlohmann::ordered_json;
  for (const auto& c : r.checks) {
    json rec;
    rec["record"] = "check";
    rec["suite"] = r.suite;
    rec["id"] = r.id;
    rec["check"] = c.id;
    rec["status"] = status(c.passed);
    rec["expected"] = c.expected;
    rec["actual"] = c.actual;
    rec["residual"] = c.residual ? json(*c.residual) : json(nullptr);
    out << rec.dump() << "\n";
  }
  json sum;
  sum["record"] = "summary";
  sum["suite"] = r.suite;
  sum["id"] = r.id;
  sum["status"] = status(r.passed && !r.error);
  sum["checks"] = r.checks.size();
  sum["failed"] = static_cast<std::size_t>(std::count_if(r.checks.begin(), r.checks.end(), [](const CheckRecord& c) { return !c.passed; }));
  sum["error"] = r.error ? json(*r.error) : json(nullptr);
  sum["notes"] = r.notes;
  out << sum.dump() << "\n";
}

}  // namespace

void write_report(std::ostream& out, const Report& report, OutputFormat format) {
  if (format == OutputFormat::Text) {
    write_text(out, report);
  } else {
    write_machine(out, report);
  }
}

void write_reports(std::ostream& out, const std::vector<Report>& reports, OutputFormat format) {
  for (const auto& r : reports) write_report(out, r, format);
  if (format == OutputFormat::Text && reports.size() > 1) {
    std::size_t failed = 0;
    for (const auto& r : reports) failed += (r.passed && !r.error) ? 0 : 1;
    out << fmt::format("{} suites, {} passed, {} failed\n", reports.size(), reports.size() - failed, failed);
  }
}

}  // namespace envalg
