#pragma once

// Job runner behind the invmetric executable. One JSON job per call; outputs
// go to an output directory as CSV/JSON, errors to the given stream as JSON.
//
// Exit codes: 0 success, 1 validation error, 2 numeric failure, 3 property
// suite violation (verify).

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "invmetric/io.hpp"
#include "invmetric/verify.hpp"

namespace invmetric::cli {

using io::Json;

enum ExitCode { kOk = 0, kValidation = 1, kNumeric = 2, kViolation = 3 };

struct Overrides {
  /// Takes precedence over the job's "output" field; both absent means ".".
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

struct JobResult {
  int exit_code = kOk;
  std::vector<std::filesystem::path> written;
};

namespace detail {

using io::fmt;

class Context {
 public:
  Context(const Json& job, const Overrides& ov) : job_(job), ov_(ov) {}

  const Json& job() const { return job_; }
  bool has(const char* key) const { return job_.contains(key); }
  const Json& at(const char* key) const { return io::require(job_, key); }

  double real(const char* key, double fallback) const { return has(key) ? io::to_real(at(key), key) : fallback; }
  int count(const char* key, int fallback) const {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_number_integer() || v.get<long long>() <= 0)
      throw PreconditionError(std::string(key) + " must be a positive integer");
    return static_cast<int>(v.get<long long>());
  }
  bool flag(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!at(key).is_boolean()) throw PreconditionError(std::string(key) + " must be a boolean");
    return at(key).get<bool>();
  }
  double tol(double fallback) const {
    if (ov_.tol) return *ov_.tol;
    const double t = real("tol", fallback);
    if (!(t > 0.0)) throw PreconditionError("tol must be positive");
    return t;
  }
  std::uint64_t seed() const {
    if (ov_.seed) return *ov_.seed;
    if (!has("seed")) return 1;
    const Json& s = at("seed");
    if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<std::int64_t>() < 0))
      throw PreconditionError("seed must be a non-negative integer");
    return at("seed").get<std::uint64_t>();
  }
  Domain domain() const { return io::parse_domain(at("domain")); }
  MetricKind metric() const {
    return has("metric") ? metric_from_string(io::to_string_field(at("metric"), "metric")) : MetricKind::kKobayashi;
  }

  /// Outputs are staged and only written once the whole job succeeded.
  void emit(const std::string& name, const std::string& content) { staged_.emplace_back(name, content); }

  std::vector<std::filesystem::path> commit() const {
    std::filesystem::path dir = ".";
    if (ov_.out_dir)
      dir = *ov_.out_dir;
    else if (job_.contains("output"))
      dir = io::to_string_field(job_.at("output"), "output");
    std::vector<std::filesystem::path> out;
    for (const auto& [name, content] : staged_) {
      io::write_atomic(dir / name, content);
      out.push_back(dir / name);
    }
    return out;
  }

 private:
  const Json& job_;
  const Overrides& ov_;
  std::vector<std::pair<std::string, std::string>> staged_;
};

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline int run_density(Context& ctx) {
  const Domain domain = ctx.domain();
  const MetricKind metric = ctx.metric();
  const auto points = io::to_complex_list(ctx.at("points"), "point");
  const auto vectors = ctx.has("vectors") ? io::to_complex_list(ctx.at("vectors"), "vector")
                                          : std::vector<Complex>{Complex(1.0)};
  io::CsvTable t({"x", "y", "xi_re", "xi_im", "metric", "lower", "upper", "exact"});
  for (Complex z : points) {
    for (Complex v : vectors) {
      const DensityBound b = density(domain, metric, z, TangentVector(v));
      t.row({fmt(z.real()), fmt(z.imag()), fmt(v.real()), fmt(v.imag()), to_string(metric), fmt(b.lower),
             fmt(b.upper), b.exact ? "1" : "0"});
    }
  }
  ctx.emit("density.csv", t.str());
  return kOk;
}

inline DistanceOptions distance_options(const Context& ctx) {
  DistanceOptions opt;
  opt.force_grid = ctx.flag("force_grid", false);
  opt.refine = ctx.flag("refine", true);
  opt.tolerance = ctx.tol(1e-6);
  opt.refinement.sweep_tolerance = std::min(1e-6, opt.tolerance);
  return opt;
}

inline Json distance_json(const DistanceResult& r) {
  return {{"value", r.value},   {"lower", r.lower},           {"upper", r.upper},
          {"method", to_string(r.method)}, {"grid_value", r.grid_value}, {"grid_nodes", r.grid_nodes},
          {"gap", r.upper - r.lower}};
}

inline int run_distance(Context& ctx) {
  const Domain domain = ctx.domain();
  const MetricKind metric = ctx.metric();
  const DistanceOptions opt = distance_options(ctx);
  std::vector<std::pair<Complex, Complex>> pairs;
  if (ctx.has("pairs")) {
    for (const auto& p : ctx.at("pairs")) {
      if (!p.is_array() || p.size() != 2) throw PreconditionError("each pair must be [z, w]");
      pairs.emplace_back(io::to_complex(p[0], "z"), io::to_complex(p[1], "w"));
    }
  } else {
    pairs.emplace_back(io::to_complex(ctx.at("z"), "z"), io::to_complex(ctx.at("w"), "w"));
  }
  io::CsvTable t({"zx", "zy", "wx", "wy", "metric", "method", "value", "lower", "upper", "grid_value"});
  for (const auto& [z, w] : pairs) {
    const DistanceResult r = distance(domain, metric, z, w, opt);
    t.row({fmt(z.real()), fmt(z.imag()), fmt(w.real()), fmt(w.imag()), to_string(metric), to_string(r.method),
           fmt(r.value), fmt(r.lower), fmt(r.upper), fmt(r.grid_value)});
  }
  ctx.emit("distance.csv", t.str());
  return kOk;
}

inline int run_geodesic(Context& ctx) {
  const Domain domain = ctx.domain();
  const Complex z = io::to_complex(ctx.at("z"), "z"), w = io::to_complex(ctx.at("w"), "w");
  const DistanceResult r = distance(domain, ctx.metric(), z, w, distance_options(ctx));
  Json j = distance_json(r);
  j["path"] = io::polyline_json(r.path);
  ctx.emit("geodesic.json", dump(j));
  ctx.emit("geodesic.csv", io::polyline_csv(r.path).str());
  return kOk;
}

inline int run_fixed_point(Context& ctx) {
  const HolomorphicMap f = io::parse_map(ctx.at("map"));
  FixedPointOptions opt;
  opt.max_iterations = ctx.count("max_iterations", opt.max_iterations);
  opt.n_boundary_samples = ctx.count("boundary_samples", opt.n_boundary_samples);
  const FixedPointReport r = farkas_ritt_fixed_point(f, ctx.tol(1e-12), opt);
  Json restarts = Json::array();
  for (const auto& run : r.restarts)
    restarts.push_back({{"start", io::complex_json(run.start)},
                        {"point", io::complex_json(run.point)},
                        {"iterations", run.iterations}});
  const Json j = {{"point", io::complex_json(r.point)},
                  {"iterations", r.iterations},
                  {"residual", r.residual},
                  {"epsilon_margin", r.epsilon_margin},
                  {"observed_contraction", r.observed_contraction},
                  {"contraction_bound", r.contraction_bound},
                  {"restart_spread", r.restart_spread},
                  {"unique", r.unique},
                  {"restarts", restarts}};
  ctx.emit("fixed_point.json", dump(j));
  io::CsvTable t({"n", "x", "y", "step_distance"});
  for (std::size_t k = 0; k < r.trace.size(); ++k) {
    const Complex z = r.trace[k];
    const double step = k ? disc_distance(z, r.trace[k - 1]) : 0.0;
    t.row({std::to_string(k), fmt(z.real()), fmt(z.imag()), fmt(step)});
  }
  ctx.emit("fixed_point_trace.csv", t.str());
  return r.unique ? kOk : kNumeric;
}

inline int run_regions(Context& ctx) {
  const Domain domain = ctx.domain();
  ApproachRegionParams params;
  params.alpha = ctx.real("alpha", params.alpha);
  params.beta = ctx.real("beta", params.beta);
  params.r0 = ctx.real("r0", params.r0);
  const auto alphas = ctx.has("alphas") ? io::to_real_list(ctx.at("alphas"), "alpha") : std::vector<double>{};
  const auto betas = ctx.has("betas") ? io::to_real_list(ctx.at("betas"), "beta") : std::vector<double>{};
  const RegionComparisonReport r = lindelof_region_comparison(domain, io::to_complex(ctx.at("p"), "p"), params,
                                                              ctx.count("n_samples", 400), alphas, betas);
  io::CsvTable t({"alpha", "beta", "in_gamma", "in_m", "in_both", "gamma_in_m", "m_in_gamma"});
  for (const auto& c : r.cells)
    t.row({fmt(c.alpha), fmt(c.beta), std::to_string(c.in_gamma), std::to_string(c.in_m), std::to_string(c.in_both),
           fmt(c.gamma_in_m), fmt(c.m_in_gamma)});
  ctx.emit("regions.csv", t.str());
  Json per_alpha = Json::array(), per_beta = Json::array();
  for (std::size_t k = 0; k < r.alphas.size(); ++k)
    per_alpha.push_back({{"alpha", r.alphas[k]},
                         {"beta_threshold", r.beta_threshold[k]},
                         {"smallest_beta", r.beta_for_alpha[k] ? Json(*r.beta_for_alpha[k]) : Json(nullptr)}});
  for (std::size_t k = 0; k < r.betas.size(); ++k)
    per_beta.push_back({{"beta", r.betas[k]},
                        {"alpha_threshold", r.alpha_threshold[k]},
                        {"smallest_alpha", r.alpha_for_beta[k] ? Json(*r.alpha_for_beta[k]) : Json(nullptr)}});
  ctx.emit("regions.json", dump({{"samples", r.samples}, {"gamma_in_m", per_alpha}, {"m_in_gamma", per_beta}}));
  return kOk;
}

inline std::vector<Complex> parse_compact(const Json& k) {
  if (k.is_object() && k.contains("disc")) {
    const Json& d = k.at("disc");
    return sample_closed_disc(io::to_complex(io::require(d, "center"), "center"),
                              io::to_real(io::require(d, "radius"), "radius"));
  }
  return io::to_complex_list(k, "compact sample point");
}

inline int run_orbit(Context& ctx) {
  std::vector<MobiusTransform> phis;
  int first = 1;
  if (ctx.has("escape_sequence")) {
    // φ_j = ϕ_{−a_j} with a_j = 1 − 2^{−j}
    const Json& s = ctx.at("escape_sequence");
    const int count = s.contains("count") ? s.at("count").get<int>() : 10;
    first = s.contains("first") ? s.at("first").get<int>() : 1;
    if (count < 2 || first < 1) throw PreconditionError("escape_sequence needs count >= 2 and first >= 1");
    for (int j = first; j < first + count; ++j) phis.push_back(MobiusTransform::from_origin(1.0 - std::ldexp(1.0, -j)));
  } else {
    for (const auto& m : ctx.at("automorphisms")) phis.push_back(io::parse_mobius(m));
    first = ctx.count("first_index", 1);
  }
  const Json& v = ctx.at("V");
  const EuclideanBall ball{io::to_complex(io::require(v, "center"), "V center"),
                           io::to_real(io::require(v, "radius"), "V radius")};
  const Complex P = ctx.has("P") ? io::to_complex(ctx.at("P"), "P") : Complex(0.0);
  const OrbitReport r = orbit_boundary_escape(Domain::unit_disc(), phis, P, parse_compact(ctx.at("K")), ball, first);
  io::CsvTable t({"j", "orbit_modulus", "image_diameter", "contained"});
  for (const auto& s : r.steps)
    t.row({std::to_string(s.j), fmt(s.orbit_modulus), fmt(s.image_diameter), s.contained ? "1" : "0"});
  ctx.emit("orbit.csv", t.str());
  ctx.emit("orbit.json", dump({{"escape_index", r.escape_index ? Json(*r.escape_index) : Json(nullptr)},
                               {"steps", r.steps.size()}}));
  return kOk;
}

inline int run_balls(Context& ctx) {
  const Domain domain = ctx.domain();
  const MetricKind metric = ctx.metric();
  const auto centers = io::to_complex_list(ctx.at("centers"), "center");
  const auto radii = ctx.has("radii") ? io::to_real_list(ctx.at("radii"), "radius")
                                      : std::vector<double>{io::to_real(ctx.at("radius"), "radius")};
  const int n = ctx.count("n_directions", 64);
  io::CsvTable t({"cx", "cy", "radius", "diameter"});
  for (Complex c : centers)
    for (double rad : radii)
      t.row({fmt(c.real()), fmt(c.imag()), fmt(rad), fmt(metric_ball_diameter(domain, metric, c, rad, n))});
  ctx.emit("balls.csv", t.str());
  return kOk;
}

inline int run_completeness(Context& ctx) {
  const auto rows = completeness_probe(ctx.domain(), ctx.metric(), io::to_complex(ctx.at("z0"), "z0"),
                                       io::to_complex(ctx.at("target"), "target"),
                                       io::to_real_list(ctx.at("epsilons"), "epsilon"));
  io::CsvTable t({"epsilon", "lower", "upper"});
  for (const auto& r : rows) t.row({fmt(r.epsilon), fmt(r.lower), fmt(r.upper)});
  ctx.emit("completeness.csv", t.str());
  return kOk;
}

inline int run_annulus_gap(Context& ctx) {
  double r_inner = ctx.real("r_inner", 0.2);
  if (ctx.has("domain")) {
    const Domain d = ctx.domain();
    if (!d.is_annulus()) throw PreconditionError("annulus-gap needs an annulus domain");
    r_inner = d.annulus_radius();
  }
  const Complex dir = ctx.has("direction") ? io::to_complex(ctx.at("direction"), "direction") : Complex(0.0, 1.0);
  const auto rows = annulus_gap(r_inner, ctx.count("n_points", 64), dir);
  io::CsvTable t({"x", "y", "kobayashi", "caratheodory_lower", "gap"});
  for (const auto& r : rows)
    t.row({fmt(r.z.real()), fmt(r.z.imag()), fmt(r.kobayashi), fmt(r.caratheodory_lower), fmt(r.gap)});
  ctx.emit("annulus_gap.csv", t.str());
  return kOk;
}

inline int run_verify(Context& ctx) {
  VerifyOptions opt;
  opt.seed = ctx.seed();
  opt.n_random = ctx.count("n_random", opt.n_random);
  opt.n_grid_pairs = ctx.count("n_grid_pairs", opt.n_grid_pairs);
  const VerifyReport r = run_all_suites(opt);
  io::CsvTable t({"suite", "cases", "violations", "worst"});
  Json suites = Json::array();
  for (const auto& s : r.suites) {
    t.row({s.name, std::to_string(s.cases), std::to_string(s.violations), fmt(s.worst)});
    suites.push_back({{"name", s.name}, {"cases", s.cases}, {"violations", s.violations}, {"worst", s.worst}});
  }
  ctx.emit("verify.csv", t.str());
  ctx.emit("verify.json", dump({{"seed", r.seed}, {"passed", r.passed()}, {"suites", suites}}));
  return r.passed() ? kOk : kViolation;
}

}  // namespace detail

inline void report_error(std::ostream& err, const char* kind, const std::string& message, int code) {
  err << Json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
}

/// Runs one job; never throws.
inline JobResult run_job(const Json& job, const Overrides& ov, std::ostream& err) {
  try {
    if (!job.is_object()) throw PreconditionError("job must be a JSON object");
    detail::Context ctx(job, ov);
    const std::string command = io::to_string_field(ctx.at("command"), "command");
    int code = kOk;
    if (command == "density") code = detail::run_density(ctx);
    else if (command == "distance") code = detail::run_distance(ctx);
    else if (command == "geodesic") code = detail::run_geodesic(ctx);
    else if (command == "fixed-point") code = detail::run_fixed_point(ctx);
    else if (command == "regions") code = detail::run_regions(ctx);
    else if (command == "orbit") code = detail::run_orbit(ctx);
    else if (command == "balls") code = detail::run_balls(ctx);
    else if (command == "completeness") code = detail::run_completeness(ctx);
    else if (command == "annulus-gap") code = detail::run_annulus_gap(ctx);
    else if (command == "verify") code = detail::run_verify(ctx);
    else throw PreconditionError("unknown command '" + command + "'");
    JobResult out{code, ctx.commit()};
    if (code == kViolation) report_error(err, "violation", "property suite violations; see verify.csv", code);
    if (code == kNumeric) report_error(err, "numeric", "restarts disagree on the fixed point", code);
    return out;
  } catch (const PreconditionError& e) {
    report_error(err, e.kind(), e.what(), kValidation);
    return {kValidation, {}};
  } catch (const NumericError& e) {
    report_error(err, e.kind(), e.what(), kNumeric);
    return {kNumeric, {}};
  } catch (const Json::exception& e) {
    report_error(err, "schema", e.what(), kValidation);
    return {kValidation, {}};
  } catch (const std::filesystem::filesystem_error& e) {
    report_error(err, "io", e.what(), kValidation);
    return {kValidation, {}};
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what(), kNumeric);
    return {kNumeric, {}};
  }
}

/// Parses job text then runs it.
inline JobResult run_job_text(const std::string& text, const Overrides& ov, std::ostream& err) {
  Json job;
  try {
    job = Json::parse(text);
  } catch (const Json::exception& e) {
    report_error(err, "schema", e.what(), kValidation);
    return {kValidation, {}};
  }
  return run_job(job, ov, err);
}

}  // namespace invmetric::cli
