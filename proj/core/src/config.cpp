#include "envalg/config.hpp"

#include "envalg/group_integration.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace envalg {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where.empty() ? what : fmt::format("{}: {}", where, what));
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
}

void check_keys(const json& j, const std::string& where, std::initializer_list<std::string_view> allowed) {
  require_object(j, where);
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(where, fmt::format("unknown field \"{}\"", key));
    }
  }
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

unsigned get_unsigned(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    fail(where, "expected a nonnegative integer");
  }
  auto v = j.get<unsigned long long>();
  if (v > 1'000'000'000ULL) fail(where, "integer out of range");
  return static_cast<unsigned>(v);
}

Rational get_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      fail(where, e.what());
    }
  }
  if (j.is_number_float()) fail(where, "write non-integer rationals as strings, e.g. \"1/5\"");
  fail(where, "expected a rational");
}

Scalar get_scalar(const json& j, const std::string& where) {
  if (j.is_array()) {
    if (j.size() != 2) fail(where, "complex values are two-element arrays [re, im]");
    return Scalar(get_rational(j[0], where + "[0]"), get_rational(j[1], where + "[1]"));
  }
  return Scalar(get_rational(j, where));
}

std::vector<Scalar> get_vector(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of scalars");
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_scalar(j[i], fmt::format("{}[{}]", where, i)));
  return out;
}

std::vector<std::vector<Scalar>> get_matrix(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of rows");
  std::vector<std::vector<Scalar>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_vector(j[i], fmt::format("{}[{}]", where, i)));
  return out;
}

json put_rational(const Rational& q) { return format_rational(q); }

json put_scalar(const Scalar& s) {
  if (s.is_real()) return put_rational(s.re());
  return json::array({format_rational(s.re()), format_rational(s.im())});
}

json put_vector(const std::vector<Scalar>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(put_scalar(s));
  return out;
}

json put_matrix(const std::vector<std::vector<Scalar>>& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(put_vector(row));
  return out;
}

std::pair<std::string, std::string> split_pair(const std::string& key, const std::string& where) {
  auto comma = key.find(',');
  if (comma == std::string::npos || key.find(',', comma + 1) != std::string::npos) {
    fail(where, fmt::format("bracket key \"{}\" must have the form \"a,b\"", key));
  }
  auto trim = [](std::string s) {
    s.erase(0, s.find_first_not_of(' '));
    s.erase(s.find_last_not_of(' ') + 1);
    return s;
  };
  return {trim(key.substr(0, comma)), trim(key.substr(comma + 1))};
}

AlgebraSpec spec_of(const LieAlgebra& g) {
  AlgebraSpec s;
  s.basis = g.basis_names();
  for (const auto& b : g.brackets()) {
    auto& entry = s.brackets[{s.basis[b.i], s.basis[b.j]}];
    for (unsigned k = 0; k < g.dim(); ++k) {
      if (!b.value[k].is_zero()) entry[s.basis[k]] = b.value[k].re();
    }
  }
  return s;
}

AlgebraSpec parse_algebra(const json& j, const std::string& where) {
  check_keys(j, where, {"builtin", "dim", "basis", "brackets", "weights"});
  AlgebraSpec s;
  if (j.contains("builtin")) {
    if (j.contains("basis") || j.contains("brackets")) fail(where, "\"builtin\" cannot be combined with basis/brackets");
    const std::string b = get_string(j["builtin"], where + ".builtin");
    unsigned dim = j.contains("dim") ? get_unsigned(j["dim"], where + ".dim") : 1;
    if (b != "abelian" && j.contains("dim")) fail(where, "\"dim\" only applies to the abelian builtin");
    if (b == "abelian") {
      if (dim == 0 || dim > MultiIndex::kMaxDim) fail(where + ".dim", fmt::format("must be in [1, {}]", MultiIndex::kMaxDim));
      s = spec_of(LieAlgebra::abelian(dim));
    } else if (b == "heisenberg") {
      s = spec_of(LieAlgebra::heisenberg());
    } else if (b == "so3" || b == "su2") {
      s = spec_of(LieAlgebra::so3());
    } else if (b == "affine_line") {
      s = spec_of(LieAlgebra::affine_line());
    } else {
      fail(where + ".builtin", fmt::format("unknown builtin algebra \"{}\"", b));
    }
  } else {
    if (j.contains("dim")) fail(where, "\"dim\" only applies to the abelian builtin");
    if (!j.contains("basis")) fail(where, "missing \"basis\"");
    const json& basis = j["basis"];
    if (!basis.is_array()) fail(where + ".basis", "expected an array of names");
    for (std::size_t i = 0; i < basis.size(); ++i) s.basis.push_back(get_string(basis[i], fmt::format("{}.basis[{}]", where, i)));
    if (j.contains("brackets")) {
      const json& br = j["brackets"];
      require_object(br, where + ".brackets");
      for (const auto& [key, value] : br.items()) {
        const std::string w = fmt::format("{}.brackets.\"{}\"", where, key);
        require_object(value, w);
        std::map<std::string, Rational> entry;
        for (const auto& [name, coeff] : value.items()) entry[name] = get_rational(coeff, w + "." + name);
        if (!s.brackets.emplace(split_pair(key, w), std::move(entry)).second) fail(w, "duplicate bracket");
      }
    }
  }
  if (j.contains("weights")) {
    const json& wj = j["weights"];
    if (!wj.is_array()) fail(where + ".weights", "expected an array of rationals");
    for (std::size_t i = 0; i < wj.size(); ++i) s.weights.push_back(get_rational(wj[i], fmt::format("{}.weights[{}]", where, i)));
  }
  return s;
}

json put_algebra(const AlgebraSpec& s) {
  json j;
  j["basis"] = s.basis;
  json br = json::object();
  for (const auto& [pair, entry] : s.brackets) {
    json e = json::object();
    for (const auto& [name, c] : entry) e[name] = put_rational(c);
    br[pair.first + "," + pair.second] = e;
  }
  j["brackets"] = br;
  if (!s.weights.empty()) {
    json w = json::array();
    for (const auto& q : s.weights) w.push_back(put_rational(q));
    j["weights"] = w;
  }
  return j;
}

RepresentationSpec parse_representation(const json& j, const std::string& where) {
  check_keys(j, where, {"algebra", "builtin", "two_j", "generators", "cyclic", "metric", "skew_hermitian"});
  RepresentationSpec s;
  if (!j.contains("algebra")) fail(where, "missing \"algebra\"");
  s.algebra = get_string(j["algebra"], where + ".algebra");
  if (j.contains("builtin")) {
    s.builtin = get_string(j["builtin"], where + ".builtin");
    if (s.builtin != "su2_spin" && s.builtin != "heisenberg_upper") {
      fail(where + ".builtin", fmt::format("unknown builtin representation \"{}\"", s.builtin));
    }
    if (j.contains("generators") || j.contains("cyclic") || j.contains("metric") || j.contains("skew_hermitian")) {
      fail(where, "\"builtin\" cannot be combined with explicit matrices");
    }
    if (j.contains("two_j")) {
      if (s.builtin != "su2_spin") fail(where, "\"two_j\" only applies to su2_spin");
      s.two_j = get_unsigned(j["two_j"], where + ".two_j");
    }
    s.skew_hermitian = s.builtin == "su2_spin";
    return s;
  }
  if (j.contains("two_j")) fail(where, "\"two_j\" only applies to su2_spin");
  if (!j.contains("generators") || !j.contains("cyclic")) fail(where, "explicit representations need \"generators\" and \"cyclic\"");
  const json& gens = j["generators"];
  if (!gens.is_array()) fail(where + ".generators", "expected an array of matrices");
  for (std::size_t i = 0; i < gens.size(); ++i) s.generators.push_back(get_matrix(gens[i], fmt::format("{}.generators[{}]", where, i)));
  s.cyclic = get_vector(j["cyclic"], where + ".cyclic");
  if (j.contains("metric")) s.metric = get_matrix(j["metric"], where + ".metric");
  if (j.contains("skew_hermitian")) {
    if (!j["skew_hermitian"].is_boolean()) fail(where + ".skew_hermitian", "expected true or false");
    s.skew_hermitian = j["skew_hermitian"].get<bool>();
  }
  return s;
}

json put_representation(const RepresentationSpec& s) {
  json j;
  j["algebra"] = s.algebra;
  if (!s.builtin.empty()) {
    j["builtin"] = s.builtin;
    if (s.builtin == "su2_spin") j["two_j"] = s.two_j;
    return j;
  }
  json gens = json::array();
  for (const auto& g : s.generators) gens.push_back(put_matrix(g));
  j["generators"] = gens;
  j["cyclic"] = put_vector(s.cyclic);
  if (!s.metric.empty()) j["metric"] = put_matrix(s.metric);
  j["skew_hermitian"] = s.skew_hermitian;
  return j;
}

FunctionalSpec parse_functional(const json& j, const std::string& where,
                                const std::map<std::string, AlgebraSpec>& algebras) {
  check_keys(j, where, {"algebra", "degree", "kind", "representation", "values"});
  FunctionalSpec s;
  if (!j.contains("algebra")) fail(where, "missing \"algebra\"");
  s.algebra = get_string(j["algebra"], where + ".algebra");
  if (!j.contains("degree")) fail(where, "missing \"degree\"");
  s.degree = get_unsigned(j["degree"], where + ".degree");
  if (j.contains("kind")) s.kind = get_string(j["kind"], where + ".kind");
  if (j.contains("representation")) s.representation = get_string(j["representation"], where + ".representation");
  if (j.contains("values")) {
    auto it = algebras.find(s.algebra);
    if (it == algebras.end()) fail(where + ".algebra", fmt::format("unknown Lie algebra \"{}\"", s.algebra));
    const unsigned dim = static_cast<unsigned>(it->second.basis.size());
    const json& vals = j["values"];
    require_object(vals, where + ".values");
    for (const auto& [key, value] : vals.items()) {
      const std::string w = fmt::format("{}.values.\"{}\"", where, key);
      MultiIndex alpha;
      try {
        alpha = MultiIndex::parse(key, dim);
      } catch (const std::exception& e) {
        fail(w, e.what());
      }
      Scalar v = get_scalar(value, w);
      if (!v.is_zero()) s.values[alpha] = v;
    }
  }
  return s;
}

json put_functional(const FunctionalSpec& s) {
  json j;
  j["algebra"] = s.algebra;
  j["degree"] = s.degree;
  j["kind"] = s.kind;
  if (!s.representation.empty()) j["representation"] = s.representation;
  if (!s.values.empty()) {
    json v = json::object();
    for (const auto& [alpha, c] : s.values) v[alpha.to_string()] = put_scalar(c);
    j["values"] = v;
  }
  return j;
}

SuiteSpec parse_suite(const json& j, const std::string& where) {
  check_keys(j, where,
             {"suite", "id", "algebra", "functional", "representation", "degree", "d_max", "n_max", "count",
              "repetitions", "word_length", "random", "expect_rank", "tolerance", "seed", "levels", "probes",
              "directions", "x", "y", "scales", "radius", "max_deviation", "truth"});
  SuiteSpec s;
  if (!j.contains("suite")) fail(where, "missing \"suite\"");
  s.suite = get_string(j["suite"], where + ".suite");
  s.id = j.contains("id") ? get_string(j["id"], where + ".id") : s.suite;
  auto str = [&](const char* key, std::string& out) {
    if (j.contains(key)) out = get_string(j[key], where + "." + key);
  };
  auto num = [&](const char* key, std::optional<unsigned>& out) {
    if (j.contains(key)) out = get_unsigned(j[key], where + "." + key);
  };
  str("algebra", s.algebra);
  str("functional", s.functional);
  str("representation", s.representation);
  str("truth", s.truth);
  num("degree", s.degree);
  num("d_max", s.d_max);
  num("n_max", s.n_max);
  num("count", s.count);
  num("repetitions", s.repetitions);
  num("word_length", s.word_length);
  num("random", s.random);
  num("expect_rank", s.expect_rank);
  if (j.contains("tolerance")) {
    const json& t = j["tolerance"];
    if (t.is_number()) {
      s.tolerance = t.get<double>();
    } else {
      s.tolerance = to_double(get_rational(t, where + ".tolerance"));
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail(where + ".seed", "expected a nonnegative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("levels")) {
    const json& l = j["levels"];
    if (!l.is_array()) fail(where + ".levels", "expected an array of degrees");
    for (std::size_t i = 0; i < l.size(); ++i) s.levels.push_back(get_unsigned(l[i], fmt::format("{}.levels[{}]", where, i)));
  }
  if (j.contains("probes")) s.probes = get_matrix(j["probes"], where + ".probes");
  if (j.contains("directions")) s.directions = get_matrix(j["directions"], where + ".directions");
  if (j.contains("x")) s.x = get_vector(j["x"], where + ".x");
  if (j.contains("y")) s.y = get_vector(j["y"], where + ".y");
  if (j.contains("scales")) {
    const json& l = j["scales"];
    if (!l.is_array()) fail(where + ".scales", "expected an array of rationals");
    for (std::size_t i = 0; i < l.size(); ++i) s.scales.push_back(get_rational(l[i], fmt::format("{}.scales[{}]", where, i)));
  }
  if (j.contains("radius")) s.radius = get_rational(j["radius"], where + ".radius");
  if (j.contains("max_deviation")) s.max_deviation = get_rational(j["max_deviation"], where + ".max_deviation");
  return s;
}

json put_suite(const SuiteSpec& s) {
  json j;
  j["suite"] = s.suite;
  j["id"] = s.id;
  auto str = [&](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
  };
  auto num = [&](const char* key, const std::optional<unsigned>& v) {
    if (v) j[key] = *v;
  };
  str("algebra", s.algebra);
  str("functional", s.functional);
  str("representation", s.representation);
  str("truth", s.truth);
  num("degree", s.degree);
  num("d_max", s.d_max);
  num("n_max", s.n_max);
  num("count", s.count);
  num("repetitions", s.repetitions);
  num("word_length", s.word_length);
  num("random", s.random);
  num("expect_rank", s.expect_rank);
  if (s.tolerance) j["tolerance"] = *s.tolerance;
  if (s.seed) j["seed"] = *s.seed;
  if (!s.levels.empty()) j["levels"] = s.levels;
  if (!s.probes.empty()) j["probes"] = put_matrix(s.probes);
  if (!s.directions.empty()) j["directions"] = put_matrix(s.directions);
  if (!s.x.empty()) j["x"] = put_vector(s.x);
  if (!s.y.empty()) j["y"] = put_vector(s.y);
  if (!s.scales.empty()) {
    json a = json::array();
    for (const auto& q : s.scales) a.push_back(put_rational(q));
    j["scales"] = a;
  }
  if (s.radius) j["radius"] = put_rational(*s.radius);
  if (s.max_deviation) j["max_deviation"] = put_rational(*s.max_deviation);
  return j;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// ------------------------------------------------------------- resolution

std::shared_ptr<const LieAlgebra> build_algebra(const std::string& name, const AlgebraSpec& s) {
  const std::string where = "lie_algebras." + name;
  if (s.basis.empty()) fail(where, "basis must be nonempty");
  if (s.basis.size() > MultiIndex::kMaxDim) fail(where, fmt::format("at most {} basis elements are supported", MultiIndex::kMaxDim));
  std::map<std::string, unsigned> index;
  for (unsigned i = 0; i < s.basis.size(); ++i) {
    if (s.basis[i].empty()) fail(where, "basis names must be nonempty");
    if (!index.emplace(s.basis[i], i).second) fail(where, fmt::format("duplicate basis name \"{}\"", s.basis[i]));
  }
  auto lookup = [&](const std::string& n, const std::string& w) {
    auto it = index.find(n);
    if (it == index.end()) fail(w, fmt::format("unknown basis element \"{}\"", n));
    return it->second;
  };
  const unsigned dim = static_cast<unsigned>(s.basis.size());
  std::map<std::pair<unsigned, unsigned>, GVector> table;
  for (const auto& [pair, entry] : s.brackets) {
    const std::string w = fmt::format("{}.brackets.\"{},{}\"", where, pair.first, pair.second);
    unsigned i = lookup(pair.first, w), j = lookup(pair.second, w);
    if (i == j) fail(w, "[x, x] = 0 cannot be specified");
    GVector v(dim);
    for (const auto& [n, c] : entry) v[lookup(n, w)] = Scalar(c);
    if (i > j) {
      std::swap(i, j);
      v = -v;
    }
    if (!table.emplace(std::make_pair(i, j), v).second) fail(w, "bracket given twice (in both orders)");
  }
  std::vector<LieAlgebra::Bracket> brackets;
  for (auto& [ij, v] : table) brackets.push_back({ij.first, ij.second, v});
  std::shared_ptr<const LieAlgebra> g;
  try {
    g = std::make_shared<const LieAlgebra>(name, s.basis, brackets, s.weights);
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
  JacobiReport jac = jacobi_validate(*g);
  if (!jac.passed) {
    const auto& w = *jac.witness;
    fail(where, fmt::format("Jacobi identity fails for ({}, {}, {}): residual {}", s.basis[w[0]], s.basis[w[1]],
                            s.basis[w[2]], jac.residual.to_string()));
  }
  SubmultReport sub = submult_check(*g);
  if (!sub.passed) {
    const auto& w = *sub.witness;
    fail(where, fmt::format("weights are not submultiplicative at ({}, {}): sum_k w_k |c^k| = {} > w_i w_j = {}",
                            s.basis[w[0]], s.basis[w[1]], format_rational(sub.lhs), format_rational(sub.rhs)));
  }
  return g;
}

ExactMatrix exact_of(const std::vector<std::vector<Scalar>>& rows, std::size_t n, const std::string& where) {
  if (rows.size() != n) fail(where, fmt::format("expected {} rows", n));
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) fail(where, fmt::format("row {} must have {} entries", i, n));
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::shared_ptr<const MatrixRep> build_representation(const std::string& name, const RepresentationSpec& s,
                                                      const std::shared_ptr<const LieAlgebra>& g) {
  const std::string where = "representations." + name;
  std::optional<MatrixRep> rep;
  try {
    if (s.builtin == "su2_spin" || s.builtin == "heisenberg_upper") {
      if (s.builtin == "su2_spin" && (s.two_j == 0 || s.two_j > 8)) fail(where + ".two_j", "must be in [1, 8]");
      MatrixRep b = s.builtin == "su2_spin" ? MatrixRep::su2_spin(s.two_j) : MatrixRep::heisenberg_upper();
      if (b.algebra().dim() != g->dim()) {
        fail(where, fmt::format("{} acts on a {}-dimensional algebra, \"{}\" has dimension {}", s.builtin,
                                b.algebra().dim(), g->name(), g->dim()));
      }
      rep.emplace(g, b.exact_generators(), b.exact_cyclic(), b.exact_metric(), b.skew_hermitian());
    } else {
      const std::size_t n = s.cyclic.size();
      if (n == 0) fail(where + ".cyclic", "must be nonempty");
      std::vector<ExactMatrix> gens;
      for (std::size_t i = 0; i < s.generators.size(); ++i) {
        gens.push_back(exact_of(s.generators[i], n, fmt::format("{}.generators[{}]", where, i)));
      }
      std::optional<ExactMatrix> metric;
      if (!s.metric.empty()) metric = exact_of(s.metric, n, where + ".metric");
      rep.emplace(g, std::move(gens), s.cyclic, std::move(metric), s.skew_hermitian);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
  RepValidation v = validate_rep(*rep);
  if (!v.homomorphism) {
    fail(where, fmt::format("homomorphism law fails at ({}, {}), residual {:.3e}", g->basis_names()[v.worst_pair[0]],
                            g->basis_names()[v.worst_pair[1]], v.hom_residual));
  }
  if (!v.skew) fail(where, fmt::format("generators are not skew-hermitian for the metric, residual {:.3e}", v.skew_residual));
  return std::make_shared<const MatrixRep>(std::move(*rep));
}

std::shared_ptr<const FunctionalTable> build_functional(const std::string& name, const FunctionalSpec& s,
                                                        const Workbench& wb) {
  const std::string where = "functionals." + name;
  auto git = wb.algebras.find(s.algebra);
  if (git == wb.algebras.end()) fail(where + ".algebra", fmt::format("unknown Lie algebra \"{}\"", s.algebra));
  const auto& g = git->second;
  if (s.degree > kMaxFunctionalDegree) fail(where + ".degree", fmt::format("must be <= {}", kMaxFunctionalDegree));
  if (s.kind != "representation" && !s.representation.empty()) fail(where, "\"representation\" requires kind \"representation\"");
  if (s.kind != "table" && !s.values.empty()) fail(where, "\"values\" requires kind \"table\"");
  try {
    if (s.kind == "table") {
      FunctionalTable t(g, s.degree);
      for (const auto& [alpha, v] : s.values) t.set(alpha, v);
      return std::make_shared<const FunctionalTable>(std::move(t));
    }
    if (s.kind == "delta") return std::make_shared<const FunctionalTable>(FunctionalTable::delta(g, s.degree));
    if (s.kind == "gaussian") {
      if (g->dim() != 1) fail(where, "the gaussian functional lives on a one-dimensional algebra");
      FunctionalTable base = gaussian_functional(s.degree);
      FunctionalTable t(g, s.degree);
      for (const auto& [alpha, v] : base.values()) t.set(alpha, v);
      return std::make_shared<const FunctionalTable>(std::move(t));
    }
    if (s.kind == "representation") {
      auto rit = wb.representations.find(s.representation);
      if (rit == wb.representations.end()) {
        fail(where + ".representation", fmt::format("unknown representation \"{}\"", s.representation));
      }
      if (wb.config.representations.at(s.representation).algebra != s.algebra) {
        fail(where, fmt::format("representation \"{}\" is not a representation of \"{}\"", s.representation, s.algebra));
      }
      return std::make_shared<const FunctionalTable>(functional_from_rep(*rit->second, s.degree));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
  fail(where + ".kind", fmt::format("unknown functional kind \"{}\"", s.kind));
}

const std::set<std::string, std::less<>>& known_suites() {
  static const std::set<std::string, std::less<>> names{"bch-identity", "pbw-confluence", "radius", "recursion",
                                                        "positivity",   "gns",            "local-hom", "kernel",
                                                        "cauchy",       "extension"};
  return names;
}

void validate_suite(const SuiteSpec& s, const Workbench& wb) {
  const std::string where = fmt::format("suite \"{}\"", s.id);
  if (!known_suites().contains(s.suite)) fail(where, fmt::format("unknown suite \"{}\"", s.suite));
  if (s.id.empty()) fail(where, "id must be nonempty");

  const LieAlgebra* g = nullptr;
  if (!s.algebra.empty()) {
    auto it = wb.algebras.find(s.algebra);
    if (it == wb.algebras.end()) fail(where, fmt::format("unknown Lie algebra \"{}\"", s.algebra));
    g = it->second.get();
  }
  if (!s.functional.empty()) {
    auto it = wb.functionals.find(s.functional);
    if (it == wb.functionals.end()) fail(where, fmt::format("unknown functional \"{}\"", s.functional));
    if (g && !(it->second->algebra() == *g)) fail(where, "functional and algebra disagree");
    g = &it->second->algebra();
  }
  if (!s.representation.empty()) {
    auto it = wb.representations.find(s.representation);
    if (it == wb.representations.end()) fail(where, fmt::format("unknown representation \"{}\"", s.representation));
    if (g && !(it->second->algebra() == *g)) fail(where, "representation and algebra/functional disagree");
    g = &it->second->algebra();
  }

  if (s.degree && *s.degree > kMaxSuiteDegree) fail(where, fmt::format("degree must be <= {}", kMaxSuiteDegree));
  if (s.tolerance && !(*s.tolerance >= 0.0 && *s.tolerance <= kMaxTolerance)) {
    fail(where, fmt::format("tolerance must lie in [0, {}]", kMaxTolerance));
  }
  if (s.d_max && (*s.d_max > kMaxMomentDegree)) fail(where, fmt::format("d_max must be <= {}", kMaxMomentDegree));
  for (unsigned l : s.levels) {
    if (l == 0 || l > kMaxExtensionLevel) fail(where, fmt::format("levels must lie in [1, {}]", kMaxExtensionLevel));
  }
  if (s.n_max && *s.n_max > 2 * kMaxFunctionalDegree) fail(where, "n_max out of range");
  if (s.word_length && *s.word_length > 8) fail(where, "word_length must be <= 8");
  if (s.radius && sgn(*s.radius) <= 0) fail(where, "radius must be positive");
  for (const auto& q : s.scales) {
    if (sgn(q) <= 0) fail(where, "scales must be positive");
  }

  auto check_dim = [&](const std::vector<Scalar>& v, const char* what) {
    if (!g) fail(where, fmt::format("\"{}\" needs an algebra, functional or representation", what));
    if (v.size() != g->dim()) fail(where, fmt::format("\"{}\" must have {} components", what, g->dim()));
  };
  for (const auto& p : s.probes) check_dim(p, "probes");
  for (const auto& d : s.directions) check_dim(d, "directions");
  if (!s.x.empty()) check_dim(s.x, "x");
  if (!s.y.empty()) check_dim(s.y, "y");

  auto need = [&](bool ok, const char* what) {
    if (!ok) fail(where, fmt::format("suite {} requires {}", s.suite, what));
  };
  const std::string& n = s.suite;
  if (n == "radius" || n == "positivity" || n == "gns") need(!s.functional.empty(), "\"functional\"");
  if (n == "recursion") need(!s.functional.empty() || (!s.algebra.empty() && s.random), "\"functional\" or \"algebra\" with \"random\"");
  if (n == "local-hom") need(!s.representation.empty() && !s.x.empty() && !s.y.empty(), "\"representation\", \"x\" and \"y\"");
  if (n == "kernel") need(!s.representation.empty(), "\"representation\"");
  if (n == "cauchy") need(!s.representation.empty() || s.random, "\"representation\" or \"random\"");
  if (n == "cauchy" && !s.representation.empty()) need(!s.x.empty(), "\"x\"");
  if (n == "extension") {
    need(!s.levels.empty() && !s.probes.empty(), "\"levels\" and \"probes\"");
    need(!s.representation.empty() || (!s.functional.empty() && s.truth == "gaussian"),
         "\"representation\", or \"functional\" with truth \"gaussian\"");
    if (!s.functional.empty()) {
      unsigned top = *std::max_element(s.levels.begin(), s.levels.end());
      if (wb.functionals.at(s.functional)->max_degree() < 2 * top) {
        fail(where, fmt::format("functional degree must be >= {} for level {}", 2 * top, top));
      }
    }
  }
  if (!s.truth.empty() && s.truth != "gaussian") fail(where, fmt::format("unknown truth \"{}\"", s.truth));
}

}  // namespace

const SuiteSpec* Workbench::find_suite(std::string_view id) const {
  for (const auto& s : config.suites) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

Workbench resolve(const WorkbenchConfig& config) {
  Workbench wb;
  wb.config = config;
  for (const auto& [name, spec] : config.algebras) wb.algebras.emplace(name, build_algebra(name, spec));
  for (const auto& [name, spec] : config.representations) {
    auto it = wb.algebras.find(spec.algebra);
    if (it == wb.algebras.end()) fail("representations." + name, fmt::format("unknown Lie algebra \"{}\"", spec.algebra));
    wb.representations.emplace(name, build_representation(name, spec, it->second));
  }
  for (const auto& [name, spec] : config.functionals) wb.functionals.emplace(name, build_functional(name, spec, wb));
  std::set<std::string> ids;
  for (const auto& s : config.suites) {
    if (!ids.insert(s.id).second) fail("suites", fmt::format("duplicate suite id \"{}\"", s.id));
    validate_suite(s, wb);
  }
  return wb;
}

WorkbenchConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte);
    std::string msg = e.what();
    // drop nlohmann's "[json.exception.parse_error.101] parse error at line x, column y: " prefix
    if (auto pos = msg.find(": "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw ConfigError(fmt::format("syntax error at line {}, column {}: {}", line, col, msg));
  }
  check_keys(root, "", {"lie_algebra", "lie_algebras", "representations", "functionals", "suites"});
  WorkbenchConfig c;
  if (root.contains("lie_algebra") && root.contains("lie_algebras")) {
    fail("", "use either \"lie_algebra\" or \"lie_algebras\", not both");
  }
  if (root.contains("lie_algebra")) {
    const json& a = root["lie_algebra"];
    check_keys(a, "lie_algebra", {"name", "builtin", "dim", "basis", "brackets", "weights"});
    json body = a;
    std::string name = "g";
    if (a.contains("name")) {
      name = get_string(a["name"], "lie_algebra.name");
      body.erase("name");
    }
    c.algebras.emplace(name, parse_algebra(body, "lie_algebra"));
  }
  if (root.contains("lie_algebras")) {
    require_object(root["lie_algebras"], "lie_algebras");
    for (const auto& [name, a] : root["lie_algebras"].items()) c.algebras.emplace(name, parse_algebra(a, "lie_algebras." + name));
  }
  if (root.contains("representations")) {
    require_object(root["representations"], "representations");
    for (const auto& [name, r] : root["representations"].items()) {
      c.representations.emplace(name, parse_representation(r, "representations." + name));
    }
  }
  if (root.contains("functionals")) {
    require_object(root["functionals"], "functionals");
    for (const auto& [name, f] : root["functionals"].items()) {
      c.functionals.emplace(name, parse_functional(f, "functionals." + name, c.algebras));
    }
  }
  if (root.contains("suites")) {
    const json& s = root["suites"];
    if (!s.is_array()) fail("suites", "expected an array of suite descriptors");
    for (std::size_t i = 0; i < s.size(); ++i) c.suites.push_back(parse_suite(s[i], fmt::format("suites[{}]", i)));
  }
  resolve(c);
  return c;
}

std::string serialize_config(const WorkbenchConfig& config) {
  json root;
  json algebras = json::object();
  for (const auto& [name, a] : config.algebras) algebras[name] = put_algebra(a);
  root["lie_algebras"] = algebras;
  json reps = json::object();
  for (const auto& [name, r] : config.representations) reps[name] = put_representation(r);
  root["representations"] = reps;
  json funcs = json::object();
  for (const auto& [name, f] : config.functionals) funcs[name] = put_functional(f);
  root["functionals"] = funcs;
  json suites = json::array();
  for (const auto& s : config.suites) suites.push_back(put_suite(s));
  root["suites"] = suites;
  return root.dump(2) + "\n";
}

WorkbenchConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open config file \"{}\"", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace envalg
