#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "envalg/functionals.hpp"
#include "envalg/gns.hpp"
#include "envalg/lie_structure.hpp"

namespace envalg {

/// Any problem with a configuration: syntax (with line/column), unknown
/// keys, unresolved names, out-of-range parameters, Jacobi or
/// submultiplicativity failures.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlgebraSpec {
  std::vector<std::string> basis;
  /// {"a,b": {"c": coefficient}} for [a, b] = sum coefficient * c.
  std::map<std::pair<std::string, std::string>, std::map<std::string, Rational>> brackets;
  std::vector<Rational> weights;  // empty: all ones
  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

struct RepresentationSpec {
  std::string algebra;
  /// "su2_spin" (with two_j), "heisenberg_upper", or empty for explicit data.
  std::string builtin;
  unsigned two_j = 1;
  std::vector<std::vector<std::vector<Scalar>>> generators;  // [generator][row][col]
  std::vector<Scalar> cyclic;
  std::vector<std::vector<Scalar>> metric;  // empty: identity
  bool skew_hermitian = true;
  friend bool operator==(const RepresentationSpec&, const RepresentationSpec&) = default;
};

struct FunctionalSpec {
  std::string algebra;
  unsigned degree = 0;
  /// "table", "representation", "gaussian" (abelian line) or "delta".
  std::string kind = "table";
  std::string representation;
  FunctionalTable::ValueMap values;
  friend bool operator==(const FunctionalSpec&, const FunctionalSpec&) = default;
};

struct SuiteSpec {
  std::string suite;
  std::string id;  // defaults to the suite name
  std::string algebra;
  std::string functional;
  std::string representation;
  std::optional<unsigned> degree;
  std::optional<unsigned> d_max;
  std::optional<unsigned> n_max;
  std::optional<unsigned> count;
  std::optional<unsigned> repetitions;
  std::optional<unsigned> word_length;
  std::optional<unsigned> random;
  std::optional<unsigned> expect_rank;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::vector<unsigned> levels;
  std::vector<std::vector<Scalar>> probes;
  std::vector<std::vector<Scalar>> directions;
  std::vector<Scalar> x;
  std::vector<Scalar> y;
  std::vector<Rational> scales;
  std::optional<Rational> radius;
  std::optional<Rational> max_deviation;
  std::string truth;  // "gaussian" for the closed-form e^{-t^2/2}
  friend bool operator==(const SuiteSpec&, const SuiteSpec&) = default;
};

/// Declarative workbench description. Names are resolved and every object is
/// validated by parse_config / resolve.
struct WorkbenchConfig {
  std::map<std::string, AlgebraSpec> algebras;
  std::map<std::string, RepresentationSpec> representations;
  std::map<std::string, FunctionalSpec> functionals;
  std::vector<SuiteSpec> suites;
  friend bool operator==(const WorkbenchConfig&, const WorkbenchConfig&) = default;
};

/// Documented parameter ranges.
inline constexpr unsigned kMaxSuiteDegree = 10;     // N
inline constexpr unsigned kMaxMomentDegree = 4;     // d (positivity, gns)
inline constexpr unsigned kMaxExtensionLevel = 8;   // d_max for extension
inline constexpr unsigned kMaxFunctionalDegree = 20;
inline constexpr double kMaxTolerance = 1e-6;

/// Config objects built from the specs.
struct Workbench {
  WorkbenchConfig config;
  std::map<std::string, std::shared_ptr<const LieAlgebra>> algebras;
  std::map<std::string, std::shared_ptr<const MatrixRep>> representations;
  std::map<std::string, std::shared_ptr<const FunctionalTable>> functionals;

  const SuiteSpec* find_suite(std::string_view id) const;
};

/// Parses JSON text and fully validates it. Throws ConfigError.
WorkbenchConfig parse_config(std::string_view text);
/// Canonical JSON text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const WorkbenchConfig& config);
/// Builds algebras, representations and functionals; runs jacobi_validate,
/// submult_check and representation validation. Throws ConfigError.
Workbench resolve(const WorkbenchConfig& config);

WorkbenchConfig load_config_file(const std::string& path);

}  // namespace envalg
