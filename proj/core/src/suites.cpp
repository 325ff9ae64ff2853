#include "envalg/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "envalg/free_algebra.hpp"
#include "envalg/group_integration.hpp"

namespace envalg {

namespace {

constexpr double kDefaultTolerance = 1e-10;

std::string num(double v) { return fmt::format("{:.6e}", v); }

GVector to_gvector(const std::vector<Scalar>& v) { return GVector(v); }

struct Context {
  const Workbench& wb;
  const SuiteSpec& spec;
  unsigned degree(unsigned fallback) const { return override_degree ? *override_degree : spec.degree.value_or(fallback); }
  double tolerance() const { return override_tol ? *override_tol : spec.tolerance.value_or(kDefaultTolerance); }
  std::uint64_t seed() const { return base_seed * 1000003ULL + spec.seed.value_or(0); }

  const FunctionalTable& functional() const { return *wb.functionals.at(spec.functional); }
  const MatrixRep& representation() const { return *wb.representations.at(spec.representation); }

  std::optional<unsigned> override_degree;
  std::optional<double> override_tol;
  std::uint64_t base_seed = 0;
};

// ---------------------------------------------------------------- suites

void bch_identity(const Context& ctx, Report& r) {
  const unsigned n = ctx.degree(6);
  for (unsigned total = 1; total <= n; ++total) {
    // exp(X) exp(Y) = exp(Z) mod degree total+1
    const FreeSeries x = FreeSeries::letter(2, total, 0), y = FreeSeries::letter(2, total, 1);
    FreeSeries z = bch_series(total);
    const bool ok = multiply(exp(x), exp(y)) == exp(z);
    r.add(fmt::format("exp-product N={}", total), ok, "exp(X)exp(Y) == exp(Z)", ok ? "equal" : "differ");
    for (unsigned m = 0; m <= total; ++m) {
      ExpIdentityReport e = check_exp_identity(m, total - m);
      r.add(fmt::format("bidegree ({},{})", m, total - m), e.bidegree_identity,
            "X^m Y^n/(m!n!) == sum_k T_mn(Z^k)/k!", e.bidegree_identity ? "equal" : "differ");
    }
  }
  if (n >= 2) {
    FreeSeries z = bch_series(2);
    const Scalar xy = z.coefficient(Word{0, 1}), yx = z.coefficient(Word{1, 0});
    const bool ok = xy == Scalar(Rational(1, 2)) && yx == Scalar(Rational(-1, 2));
    r.add("degree-2 coefficient", ok, "XY: 1/2, YX: -1/2", fmt::format("XY: {}, YX: {}", xy.to_string(), yx.to_string()));
  }
}

void pbw_confluence(const Context& ctx, Report& r) {
  const unsigned pairs = ctx.spec.count.value_or(500);
  const unsigned max_len = ctx.spec.word_length.value_or(5);
  std::vector<std::pair<std::string, const LieAlgebra*>> targets;
  if (!ctx.spec.algebra.empty()) {
    targets.emplace_back(ctx.spec.algebra, ctx.wb.algebras.at(ctx.spec.algebra).get());
  } else {
    for (const auto& [name, g] : ctx.wb.algebras) targets.emplace_back(name, g.get());
  }
  std::uint64_t offset = 0;
  for (const auto& [name, g] : targets) {
    std::mt19937_64 rng(ctx.seed() + offset++);
    std::uniform_int_distribution<unsigned> len(0, max_len), letter(0, g->dim() - 1);
    unsigned agree = 0;
    std::string first_failure;
    for (unsigned p = 0; p < pairs; ++p) {
      std::vector<unsigned> a(len(rng)), b(len(rng));
      for (auto& l : a) l = letter(rng);
      for (auto& l : b) l = letter(rng);
      std::vector<unsigned> ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      if (g->multiply(g->reduce(a), g->reduce(b)) == g->reduce(ab)) {
        ++agree;
      } else if (first_failure.empty()) {
        first_failure = fmt::format(" (first failure at pair {})", p);
      }
    }
    r.add(fmt::format("{}: {} word pairs, length <= {}", name, pairs, max_len), agree == pairs,
          "reduce(ab) == reduce(a) reduce(b)", fmt::format("{}/{} agree{}", agree, pairs, first_failure));
  }
}

void radius(const Context& ctx, Report& r) {
  const FunctionalTable& lambda = ctx.functional();
  RadiusEstimate est = radius_estimate(lambda);
  bool finite_terms = std::all_of(est.terms.begin(), est.terms.end(), [](const RootTerm& t) { return std::isfinite(t.root) && t.root > 0; });
  r.add("root terms", finite_terms, "finite positive roots", fmt::format("{} nonzero components", est.terms.size()));
  for (const auto& t : est.terms) r.notes.push_back(fmt::format("n={} ||beta_n^s||_p^2={} root={}", t.n, format_rational(t.norm_sq), num(t.root)));
  r.notes.push_back(fmt::format("radius estimate {} (argmax n={}), tail radius {}", num(est.radius),
                                est.argmax ? std::to_string(*est.argmax) : std::string("-"), num(est.tail_radius)));
  if (ctx.spec.x.empty()) return;
  const unsigned n_max = ctx.spec.n_max.value_or(lambda.max_degree() / 2);
  AnalyticReport a = analytic_diagnostics(lambda, to_gvector(ctx.spec.x), n_max);
  r.add("s_n^2 >= 0", a.positive, "(-1)^n Re lambda(x^{2n}) >= 0 for all n",
        a.positive ? fmt::format("n <= {}", n_max) : fmt::format("negative at n={}", *a.negative_witness));
  for (unsigned n = 0; n <= n_max; ++n) r.notes.push_back(fmt::format("n={} s_n^2={}", n, format_rational(a.s_sq[n])));
  r.notes.push_back(fmt::format("vector root-test radius {}", num(a.vector_radius)));
  if (a.ratio) r.notes.push_back(fmt::format("vector radius * p(x) / functional radius = {}", num(*a.ratio)));
}

void add_recursion_rows(Report& r, const RecursionReport& rec, const std::string& prefix) {
  for (const auto& row : rec.rows) {
    r.add(fmt::format("{}c_{} bound", prefix, row.n), row.bound_holds,
          row.n == 0 ? "c_0 == ||beta_1||_p" : "c_n <= ||beta_{n+1}^s||_p + n c_{n-1}",
          fmt::format("c_n={} ||beta_(n+1)^s||_p={}", num(row.c.value()), num(row.beta_next.value())));
    const bool inv = row.right_invariance && row.left_invariance && row.insertion_identity;
    r.add(fmt::format("{}regular action n={}", prefix, row.n), inv, "invariance bounds and insertion identity",
          fmt::format("right={} left={} insertion={}", row.right_invariance, row.left_invariance, row.insertion_identity));
  }
}

void recursion(const Context& ctx, Report& r) {
  const unsigned n_max = ctx.degree(4);
  if (!ctx.spec.functional.empty()) add_recursion_rows(r, recursion_check(ctx.functional(), n_max), "");
  if (ctx.spec.random && !ctx.spec.algebra.empty()) {
    const auto& g = ctx.wb.algebras.at(ctx.spec.algebra);
    unsigned ok = 0;
    std::string first_failure;
    for (unsigned k = 0; k < *ctx.spec.random; ++k) {
      RecursionReport rec = recursion_check(random_functional(g, n_max + 1, ctx.seed() + k), n_max);
      if (rec.passed()) {
        ++ok;
      } else if (first_failure.empty()) {
        first_failure = fmt::format(" (first failure: functional {})", k);
      }
    }
    r.add(fmt::format("{} random functionals on {}", *ctx.spec.random, ctx.spec.algebra), ok == *ctx.spec.random,
          "all recursions hold", fmt::format("{}/{} hold{}", ok, *ctx.spec.random, first_failure));
  }
}

void positivity(const Context& ctx, Report& r) {
  const FunctionalTable& lambda = ctx.functional();
  const unsigned d_max = ctx.spec.d_max.value_or(2);
  MomentMatrix mm = moment_matrix(lambda, d_max);
  r.add("moment matrix hermitian", mm.hermitian, "M == M^H", mm.hermitian ? "hermitian" : "not hermitian");
  if (mm.hermitian) {
    PsdReport psd = psd_check(mm.matrix);
    r.add(fmt::format("moment matrix PSD d_max={}", d_max), psd.passed, "all pivots >= 0",
          psd.passed ? fmt::format("rank {} of {}", psd.rank, mm.monomials.size())
                     : fmt::format("witness value {}", num(psd.witness_value)));
  }

  std::vector<std::vector<Scalar>> dirs = ctx.spec.directions;
  if (ctx.spec.random) {
    std::mt19937_64 rng(ctx.seed());
    std::uniform_int_distribution<long> coord(-8, 8);
    const unsigned d = lambda.algebra().dim();
    while (dirs.size() < ctx.spec.directions.size() + *ctx.spec.random) {
      std::vector<Scalar> v(d);
      bool nonzero = false;
      for (auto& c : v) {
        long k = coord(rng);
        nonzero = nonzero || k != 0;
        c = Scalar(Rational(k, 8));
      }
      if (nonzero) dirs.push_back(std::move(v));
    }
  }
  const unsigned n_max = std::min(ctx.spec.n_max.value_or(4), lambda.max_degree() / 2);
  unsigned ok = 0;
  std::string first_failure;
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    AnalyticReport a = analytic_diagnostics(lambda, to_gvector(dirs[k]), n_max, {}, false);
    if (a.positive) {
      ++ok;
    } else if (first_failure.empty()) {
      first_failure = fmt::format(" (direction {} negative at n={})", k, *a.negative_witness);
    }
  }
  if (!dirs.empty()) {
    r.add(fmt::format("(-1)^n lambda(x^2n) >= 0, n <= {}", n_max), ok == dirs.size(), "nonnegative for every direction",
          fmt::format("{}/{} directions{}", ok, dirs.size(), first_failure));
  }
}

void gns(const Context& ctx, Report& r) {
  const FunctionalTable& lambda = ctx.functional();
  const unsigned d_max = ctx.spec.d_max.value_or(2);
  GnsModel m = gns_build(lambda, d_max);
  if (ctx.spec.expect_rank) {
    r.add("quotient rank", m.quotient_rank == *ctx.spec.expect_rank, std::to_string(*ctx.spec.expect_rank),
          std::to_string(m.quotient_rank));
  } else {
    r.notes.push_back(fmt::format("quotient rank {} of {} monomials", m.quotient_rank, m.monomials.size()));
  }
  r.add("skew-symmetry", m.skew_exact(), "<rho(x)u,w> + <u,rho(x)w> == 0 exactly",
        m.skew_exact() ? "all residuals zero" : "nonzero residual");
  if (!ctx.spec.representation.empty()) {
    const MatrixRep& rep = ctx.representation();
    bool equal = false;
    std::string actual = "float representation: compared in binary64";
    if (rep.exact()) {
      // orbit Gram <R^b v, R^a v>_H over the same monomials
      const auto& gens = rep.exact_generators();
      std::vector<ExactVector> orbit;
      for (const auto& alpha : m.monomials) {
        ExactVector w = rep.exact_cyclic();
        auto letters = alpha.letters();
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) w = gens[*it] * w;
        orbit.push_back(std::move(w));
      }
      ExactMatrix og(orbit.size(), orbit.size());
      for (std::size_t a = 0; a < orbit.size(); ++a) {
        for (std::size_t b = 0; b < orbit.size(); ++b) og(a, b) = form(rep.exact_metric(), orbit[b], orbit[a]);
      }
      equal = og == m.gram;
      actual = equal ? "equal" : "differ";
      r.add("GNS Gram == orbit Gram", equal, "exact equality", actual);
    } else {
      r.notes.push_back(actual);
    }
  }
}

void local_hom(const Context& ctx, Report& r) {
  const unsigned n = ctx.degree(4);
  std::vector<double> scales;
  for (const auto& q : ctx.spec.scales) scales.push_back(to_double(q));
  if (scales.empty()) scales = {0.2, 0.1, 0.05, 0.025};
  LocalHomReport h = local_hom_check(ctx.representation(), to_gvector(ctx.spec.x), to_gvector(ctx.spec.y), n, scales);
  for (const auto& row : h.rows) r.notes.push_back(fmt::format("r={} E={}", num(row.scale), num(row.error)));
  if (h.exact) {
    double worst = 0;
    for (const auto& row : h.rows) worst = std::max(worst, row.error);
    r.add(fmt::format("local homomorphism N={}", n), true, "E(r) < 1e-12 at all scales (exact)", num(worst), worst);
  } else {
    r.add(fmt::format("local homomorphism N={}", n), h.passed, fmt::format("slope >= {}", n + 0.5),
          h.slope ? fmt::format("slope {:.4f}", *h.slope) : std::string("no fit"), h.slope);
  }
}

void kernel(const Context& ctx, Report& r) {
  const unsigned count = ctx.spec.count.value_or(20), reps = ctx.spec.repetitions.value_or(10);
  const double tol = ctx.tolerance();
  for (unsigned k = 0; k < reps; ++k) {
    GroupSample s = sample_group(ctx.representation(), count, ctx.seed() + k);
    KernelReport kr = pd_kernel_check(s, tol);
    r.add(fmt::format("sample {} ({} elements)", k, count), kr.passed, fmt::format("min eigenvalue >= -{}", num(tol)),
          num(kr.min_eigenvalue), kr.min_eigenvalue);
  }
}

void cauchy(const Context& ctx, Report& r) {
  const double radius = ctx.spec.radius ? to_double(*ctx.spec.radius) : 1.0;
  const unsigned n_max = ctx.spec.n_max.value_or(12);
  auto record = [&](const std::string& id, const CauchyReport& c) {
    double worst = 0.0;  // max lhs/rhs
    for (const auto& row : c.rows) worst = std::max(worst, row.lhs / row.rhs);
    r.add(id, c.passed, fmt::format("||R(x)^n v|| <= sqrt(C) n! r^-n, n <= {}", n_max),
          fmt::format("C={} max ratio {}", num(c.c), num(worst)), worst);
  };
  if (!ctx.spec.representation.empty()) {
    std::vector<std::complex<double>> x;
    for (const auto& s : ctx.spec.x) x.push_back(s.to_complex());
    record(ctx.spec.representation, cauchy_estimate_check(ctx.representation(), x, radius, n_max));
  }
  for (unsigned k = 0; k < ctx.spec.random.value_or(0); ++k) {
    MatrixRep rep = random_skew_rep(4, ctx.seed() + k);
    record(fmt::format("random skew-hermitian 4x4 #{}", k), cauchy_estimate_check(rep, {1.0}, radius, n_max));
  }
}

void extension(const Context& ctx, Report& r) {
  std::vector<GVector> probes;
  for (const auto& p : ctx.spec.probes) probes.push_back(to_gvector(p));
  ExtensionReport e;
  if (!ctx.spec.representation.empty()) {
    e = extension_demo(ctx.representation(), ctx.spec.levels, probes);
  } else {
    auto truth = [](const GVector& x) {
      const std::complex<double> t = x[0].to_complex();
      return std::exp(-t * t / 2.0);
    };
    e = extension_demo(ctx.functional(), truth, ctx.spec.levels, probes);
  }
  for (const auto& level : e.levels) {
    r.notes.push_back(fmt::format("d_max={} quotient rank {} max deviation {}", level.d_max, level.quotient_rank,
                                  num(level.max_deviation)));
  }
  std::string devs;
  for (const auto& level : e.levels) devs += (devs.empty() ? "" : ", ") + num(level.max_deviation);
  r.add("deviation non-increasing in d_max", e.non_increasing, fmt::format("non-increasing (noise floor {})", num(e.noise_floor)),
        devs);
  if (ctx.spec.max_deviation && !e.levels.empty()) {
    const double bound = to_double(*ctx.spec.max_deviation);
    const double dev = e.levels.back().max_deviation;
    r.add(fmt::format("max deviation at d_max={}", e.levels.back().d_max), dev <= bound, fmt::format("<= {}", num(bound)),
          num(dev), dev);
  }
}

using SuiteFn = void (*)(const Context&, Report&);

SuiteFn lookup(std::string_view name) {
  static const std::vector<std::pair<std::string_view, SuiteFn>> table{
      {"bch-identity", bch_identity}, {"pbw-confluence", pbw_confluence}, {"radius", radius},
      {"recursion", recursion},       {"positivity", positivity},         {"gns", gns},
      {"local-hom", local_hom},       {"kernel", kernel},                 {"cauchy", cauchy},
      {"extension", extension}};
  for (const auto& [n, f] : table) {
    if (n == name) return f;
  }
  return nullptr;
}

void check_options(const RunOptions& o) {
  if (o.degree && *o.degree > kMaxSuiteDegree) throw ConfigError(fmt::format("--degree must be <= {}", kMaxSuiteDegree));
  if (o.tolerance && !(*o.tolerance >= 0.0 && *o.tolerance <= kMaxTolerance)) {
    throw ConfigError(fmt::format("--tolerance must lie in [0, {}]", kMaxTolerance));
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"bch-identity", "pbw-confluence", "radius", "recursion", "positivity",
                                              "gns",          "local-hom",      "kernel", "cauchy",    "extension"};
  return names;
}

Report run_suite(const Workbench& wb, const SuiteSpec& spec, const RunOptions& options) {
  check_options(options);
  Report r;
  r.suite = spec.suite;
  r.id = spec.id;
  SuiteFn fn = lookup(spec.suite);
  if (!fn) throw ConfigError(fmt::format("unknown suite \"{}\"", spec.suite));
  Context ctx{wb, spec, options.degree, options.tolerance, options.seed};
  const auto start = std::chrono::steady_clock::now();
  try {
    fn(ctx, r);
  } catch (const std::exception& e) {
    r.error = e.what();
    r.passed = false;
  }
  r.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Report run_suite(const Workbench& wb, std::string_view name, const RunOptions& options) {
  if (const SuiteSpec* s = wb.find_suite(name)) return run_suite(wb, *s, options);
  for (const auto& s : wb.config.suites) {
    if (s.suite == name) return run_suite(wb, s, options);
  }
  if (lookup(name)) {
    // a bare pipeline name with no descriptor: run it with defaults where possible
    SuiteSpec s;
    s.suite = std::string(name);
    s.id = s.suite;
    if (s.suite != "bch-identity" && s.suite != "pbw-confluence") {
      throw ConfigError(fmt::format("suite \"{}\" needs a descriptor in the config", name));
    }
    return run_suite(wb, s, options);
  }
  std::string known;
  for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
  throw ConfigError(fmt::format("unknown suite \"{}\" (known suites: {})", name, known));
}

std::vector<Report> run_all(const Workbench& wb, const RunOptions& options) {
  check_options(options);
  const auto& suites = wb.config.suites;
  std::vector<Report> out;
  if (!options.parallel) {
    for (const auto& s : suites) out.push_back(run_suite(wb, s, options));
    return out;
  }
  std::vector<std::future<Report>> futures;
  for (const auto& s : suites) {
    futures.push_back(std::async(std::launch::async, [&wb, &s, &options] { return run_suite(wb, s, options); }));
  }
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

std::string dump_object(const Workbench& wb, std::string_view kind, std::string_view name, std::optional<unsigned> degree) {
  std::ostringstream out;
  auto find = [&](const auto& map, const char* what) -> const auto& {
    auto it = map.find(std::string(name));
    if (it == map.end()) throw ConfigError(fmt::format("unknown {} \"{}\"", what, name));
    return *it->second;
  };
  if (kind == "config") {
    out << serialize_config(wb.config);
  } else if (kind == "algebra") {
    const LieAlgebra& g = find(wb.algebras, "Lie algebra");
    out << fmt::format("{}: dimension {}\n", g.name(), g.dim());
    for (unsigned i = 0; i < g.dim(); ++i) out << fmt::format("  w({}) = {}\n", g.basis_names()[i], format_rational(g.weights()[i]));
    for (const auto& b : g.brackets()) {
      out << fmt::format("  [{}, {}] = ", g.basis_names()[b.i], g.basis_names()[b.j]);
      bool first = true;
      for (unsigned k = 0; k < g.dim(); ++k) {
        if (b.value[k].is_zero()) continue;
        out << (first ? "" : " + ") << b.value[k].to_string() << " " << g.basis_names()[k];
        first = false;
      }
      out << "\n";
    }
  } else if (kind == "representation") {
    const MatrixRep& rep = find(wb.representations, "representation");
    out << fmt::format("representation of {} on C^{} ({}, {})\n", rep.algebra().name(), rep.space_dim(),
                       rep.exact() ? "exact" : "binary64", rep.skew_hermitian() ? "skew-hermitian" : "not skew-hermitian");
    for (unsigned i = 0; i < rep.algebra().dim(); ++i) {
      out << "R(" << rep.algebra().basis_names()[i] << ") =\n";
      const auto& m = rep.generators()[i];
      for (Eigen::Index a = 0; a < m.rows(); ++a) {
        out << " ";
        for (Eigen::Index b = 0; b < m.cols(); ++b) out << fmt::format(" ({:+.6f}{:+.6f}i)", m(a, b).real(), m(a, b).imag());
        out << "\n";
      }
    }
  } else if (kind == "functional") {
    const FunctionalTable& f = find(wb.functionals, "functional");
    out << fmt::format("functional on {} to degree {}\n", f.algebra().name(), f.max_degree());
    for (const auto& [alpha, v] : f.values()) out << fmt::format("  ({}) -> {}\n", alpha.to_string(), v.to_string());
  } else if (kind == "moment") {
    const FunctionalTable& f = find(wb.functionals, "functional");
    MomentMatrix mm = moment_matrix(f, degree.value_or(2));
    for (std::size_t a = 0; a < mm.monomials.size(); ++a) {
      out << fmt::format("({})", mm.monomials[a].to_string());
      for (std::size_t b = 0; b < mm.monomials.size(); ++b) out << " " << mm.matrix(a, b).to_string();
      out << "\n";
    }
  } else if (kind == "bch") {
    out << bch_series(degree.value_or(4)).to_string({"X", "Y"}) << "\n";
  } else {
    throw ConfigError(fmt::format("unknown dump kind \"{}\" (config, algebra, representation, functional, moment, bch)", kind));
  }
  return out.str();
}

}  // namespace envalg
