#include "logbm/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "logbm/equality.hpp"
#include "logbm/spectral.hpp"

namespace logbm {

namespace {

const Zonotope& zonotope_k(const BodiesFile& f, const std::string& check) {
  const auto* z = std::get_if<Zonotope>(&f.get(f.task.k));
  if (!z) throw UnsupportedCombination(check + ": K must be a zonotope");
  return *z;
}

const SmoothBody& smooth(const BodiesFile& f, const std::string& name, const std::string& check) {
  const auto* s = std::get_if<SmoothBody>(&f.get(name));
  if (!s || s->dim() != 3) throw UnsupportedCombination(check + ": body '" + name + "' must be smooth in R^3");
  return *s;
}

const std::string& need_l(const BodiesFile& f, const std::string& check) {
  if (f.task.l.empty()) throw ParseError(check + ": task needs a body L");
  return f.task.l;
}

SupportExpr f_of(const BodiesFile& f, const std::string& check) {
  SupportExpr e = SupportExpr::of(f.get(need_l(f, check)));
  if (f.task.m) e.add(f.get(*f.task.m), Scalar(-1));
  return e;
}

InequalityReport alexandrov_report(const Zonotope& k, const Body& l) {
  MeasureEqualityReport m = check_alexandrov_condition(k, l);
  InequalityReport r;
  r.name = "alexandrov-eq";
  r.n = k.dim();
  r.form = "h_K dS_{f,K..K} = -(1/(n-1)) f dS_K atomwise";
  r.lhs = Scalar(static_cast<long>(m.lhs.size()));
  r.rhs = Scalar(static_cast<long>(m.rhs.size()));
  r.deficit = m.max_discrepancy;
  r.verdict = m.matched ? Verdict::kEquality : Verdict::kHolds;
  r.details["a"] = m.a.str();
  r.details["matched"] = m.matched ? "true" : "false";
  r.details["lhs_measure"] = to_json(m.lhs).dump();
  r.details["rhs_measure"] = to_json(m.rhs).dump();
  return r;
}

InequalityReport bochner_report(const BodiesFile& f, const CheckOptions& opt) {
  const SmoothBody& k = smooth(f, f.task.k, "bochner");
  SphereQuadrature q(f.task.level.value_or(5), SphereQuadrature::Rule::kSevenPoint);
  SupportExpr g = f.task.l.empty() ? SupportExpr::of(Body(k))
                                   : orthogonalized_difference(k, smooth(f, f.task.l, "bochner"), q);
  BochnerResidual b = bochner_residual(k, g, q);
  const double tol = opt.tolerance.value_or(1e-6);
  InequalityReport r;
  r.name = "bochner";
  r.n = 3;
  r.form = "quadrature level " + std::to_string(q.level());
  r.lhs = Scalar::from_double(b.side1);
  r.rhs = Scalar::from_double(b.side2);
  r.deficit = Scalar::from_double(b.side1 - b.side2);
  r.error_bound = tol;
  r.verdict = b.residual <= tol ? Verdict::kEquality : Verdict::kViolated;
  r.details["residual"] = Scalar::from_double(b.residual).str();
  r.details["integrand_nonnegative"] = b.integrand_nonnegative ? "true" : "false";
  r.details["side1_nonnegative"] = b.side1 >= -tol ? "true" : "false";
  return r;
}

InequalityReport superlich_report(const BodiesFile& f, const CheckOptions& opt) {
  const SmoothBody& k = smooth(f, f.task.k, "superlich");
  SphereQuadrature q(f.task.level.value_or(5), SphereQuadrature::Rule::kSevenPoint);
  SupportExpr g = f.task.l.empty() ? SupportExpr::of(Body(k))
                                   : orthogonalized_difference(k, smooth(f, f.task.l, "superlich"), q);
  return check_superlich_quadrature(k, g, q, opt.tolerance.value_or(1e-8));
}

InequalityReport geomean_report(const BodiesFile& f) {
  const Body& k = f.get(f.task.k);
  const Body& l = f.get(need_l(f, "geomean"));
  const Scalar t = f.task.t.value_or(Scalar(mpq_class(1, 2)));
  const int radius = static_cast<int>(f.task.grid.value_or(2));
  auto dirs = lattice_directions(body_dim(k), radius);
  GeoMeanBounds b = geomean_volume_bounds(k, l, t, dirs);
  const double vk = body_volume(k).to_double(), vl = body_volume(l).to_double(), td = t.to_double();
  const double target = std::exp((1 - td) * std::log(vk) + td * std::log(vl));
  InequalityReport r;
  r.name = "geomean";
  r.n = body_dim(k);
  r.form = "Vol(K^(1-t) L^t) >= Vol(K)^(1-t) Vol(L)^t from volume bounds";
  r.lhs = b.lower;
  r.rhs = Scalar::from_double(target);
  r.deficit = Scalar::from_double(b.lower.to_double() - target);
  r.error_bound = 1e-12 * target;
  if (b.lower.to_double() >= target * (1 + 1e-12))
    r.verdict = Verdict::kHolds;
  else if (b.upper.to_double() < target * (1 - 1e-12))
    r.verdict = Verdict::kViolated;
  else
    r.verdict = Verdict::kUndetermined;
  r.details["lower"] = b.lower.str();
  r.details["upper"] = b.upper.str();
  r.details["halfspaces"] = std::to_string(b.halfspaces);
  r.details["directions_radius"] = std::to_string(radius);
  return r;
}

void apply_tolerance(InequalityReport& r, const CheckOptions& opt) {
  if (!opt.tolerance || r.deficit.is_exact() || r.name == "bochner" || r.name == "superlich") return;
  r.error_bound = *opt.tolerance;
  r.verdict = verdict_of(r.deficit, *opt.tolerance);
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Vec random_vec(std::mt19937_64& rng, std::size_t n, int range) {
  Vec v;
  do {
    v.clear();
    for (std::size_t i = 0; i < n; ++i) v.push_back(Scalar(uniform(rng, -range, range)));
  } while (is_zero(v));
  return v;
}

Zonotope random_zonotope(std::mt19937_64& rng, std::size_t n, std::size_t gens, int range) {
  while (true) {
    std::vector<Generator> g;
    for (std::size_t i = 0; i < gens; ++i)
      g.push_back({random_vec(rng, n, range), Scalar(mpq_class(uniform(rng, 1, 3), uniform(rng, 1, 2)))});
    Zonotope z(n, std::move(g));
    if (z.full_dimensional()) return z;
  }
}

SymmetricPolytope random_polytope(std::mt19937_64& rng, std::size_t n, std::size_t pairs, int range) {
  while (true) {
    std::vector<Vec> v;
    for (std::size_t i = 0; i < pairs; ++i) v.push_back(random_vec(rng, n, range));
    SymmetricPolytope p(n, std::move(v));
    if (p.full_dimensional()) return p;
  }
}

struct TrialOutcome {
  std::string check;
  std::optional<InequalityReport> report;  // empty when unsupported
  CheckInstance instance;
};

TrialOutcome run_trial(const SuiteConfig& cfg, std::size_t i) {
  std::mt19937_64 rng(trial_seed(cfg.seed, i));
  const std::string& check = cfg.checks[i % cfg.checks.size()];
  const std::size_t n = cfg.dim_min + static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(cfg.dim_max - cfg.dim_min)));
  TrialOutcome out{check, std::nullopt, random_instance(check, n, cfg, rng)};
  try {
    InequalityReport r = run_check(out.instance);
    if (cfg.tolerance) apply_tolerance(r, CheckOptions{cfg.backend, cfg.tolerance});
    out.report = std::move(r);
  } catch (const UnsupportedCombination&) {
  } catch (const PreconditionError&) {
  }
  return out;
}

}  // namespace

int exit_code_for(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
    case Verdict::kEquality:
      return kExitOk;
    case Verdict::kViolated:
      return kExitViolated;
    case Verdict::kUndetermined:
      break;
  }
  return kExitUndetermined;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"bm",    "mink1",         "mink2",     "local-logbm", "logmink",
                                              "indstep", "alexandrov-eq", "superlich", "bochner",     "geomean"};
  return names;
}

InequalityReport evaluate_check(const std::string& name, const BodiesFile& file, const CheckOptions& opt) {
  if (std::find(check_names().begin(), check_names().end(), name) == check_names().end())
    throw ParseError("unknown check '" + name + "'");
  if (name == "superlich") return superlich_report(file, opt);
  if (name == "bochner") return bochner_report(file, opt);

  BodiesFile f = file;
  if (opt.backend == Backend::kFloat)
    for (auto& [key, body] : f.bodies) body = to_backend(body, Backend::kFloat);

  InequalityReport r;
  if (name == "geomean") {
    r = geomean_report(f);
  } else if (name == "bm") {
    r = check_bm(f.get(f.task.k), f.get(need_l(f, name)), f.task.t.value_or(Scalar(mpq_class(1, 2))));
  } else if (name == "alexandrov-eq") {
    r = alexandrov_report(zonotope_k(f, name), f.get(need_l(f, name)));
  } else {
    const Zonotope& k = zonotope_k(f, name);
    if (name == "mink1") r = check_minkowski_first(k, f.get(need_l(f, name)));
    if (name == "mink2") r = check_minkowski_second(k, f.get(need_l(f, name)));
    if (name == "logmink") r = check_log_minkowski(k, f.get(need_l(f, name)));
    if (name == "local-logbm") r = check_local_logbm(k, f_of(f, name));
    if (name == "indstep") {
      if (!f.task.u) throw ParseError("indstep: task needs a direction u");
      Vec u = opt.backend == Backend::kFloat ? to_backend(*f.task.u, Backend::kFloat) : *f.task.u;
      r = check_induction_step(k, f_of(f, name), u);
    }
  }
  apply_tolerance(r, opt);
  return r;
}

unsigned resolve_threads(unsigned requested) {
  unsigned cap = 0;
  if (const char* env = std::getenv("LOGBM_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) cap = static_cast<unsigned>(v);
  }
  unsigned n = requested ? requested : (cap ? cap : std::max(1u, std::thread::hardware_concurrency()));
  if (cap) n = std::min(n, cap);
  return std::max(1u, n);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return splitmix(splitmix(seed) ^ static_cast<std::uint64_t>(trial));
}

CheckInstance random_instance(const std::string& check, std::size_t n, const SuiteConfig& cfg, std::mt19937_64& rng) {
  const int range = cfg.coord_range;
  const std::size_t extra = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(cfg.extra_generators)));
  Zonotope k = random_zonotope(rng, n, n + extra, range);
  Body l = uniform(rng, 0, 1) == 0
               ? Body(random_zonotope(rng, n, n + static_cast<std::size_t>(uniform(rng, 0, 2)), range))
               : Body(random_polytope(rng, n, n + static_cast<std::size_t>(uniform(rng, 0, 2)), range));
  Scalar t(mpq_class(uniform(rng, 1, 4), 5));
  Vec u = random_vec(rng, n, range);
  if (cfg.backend == Backend::kFloat) {
    k = std::get<Zonotope>(to_backend(Body(k), Backend::kFloat));
    l = to_backend(l, Backend::kFloat);
    u = to_backend(u, Backend::kFloat);
  }
  return CheckInstance{check, std::move(k), std::move(l), std::move(t), std::move(u)};
}

SuiteSummary run_suite(const SuiteConfig& cfg) {
  if (cfg.checks.empty()) throw std::invalid_argument("suite: no checks selected");
  if (cfg.dim_min < 2 || cfg.dim_max < cfg.dim_min) throw std::invalid_argument("suite: bad dimension range");

  std::vector<std::optional<TrialOutcome>> outcomes(cfg.trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.trials; i = next++) {
      try {
        outcomes[i] = run_trial(cfg, i);
      } catch (...) {
        std::lock_guard<std::mutex> g(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned threads = std::min<std::size_t>(resolve_threads(cfg.threads), std::max<std::size_t>(cfg.trials, 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  SuiteSummary s;
  s.seed = cfg.seed;
  s.trials = cfg.trials;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    TrialOutcome& o = *outcomes[i];
    CheckTally& tally = s.per_check[o.check];
    ++tally.trials;
    if (!o.report) {
      ++tally.verdicts["unsupported"];
      continue;
    }
    const InequalityReport& r = *o.report;
    ++tally.verdicts[verdict_name(r.verdict)];
    if (!std::isnan(r.deficit.to_double()) && (!tally.min_deficit || r.deficit < *tally.min_deficit)) {
      tally.min_deficit = r.deficit;
      tally.min_trial = i;
    }
    const double scale = std::max(std::abs(r.lhs.to_double()), std::abs(r.rhs.to_double()));
    if (scale > 0) {
      const double rel = r.deficit.to_double() / scale;
      if (!tally.min_relative_deficit || rel < *tally.min_relative_deficit) tally.min_relative_deficit = rel;
    }
    if (r.verdict == Verdict::kViolated) {
      Violation v{i, r, o.instance, ""};
      std::mt19937_64 rng(trial_seed(cfg.seed, i) ^ 0x5eedULL);
      auto fails = [](const CheckInstance& c) {
        try {
          return run_check(c).verdict == Verdict::kViolated;
        } catch (const std::exception&) {
          return false;
        }
      };
      v.witness = minimize_witness(o.instance, fails, rng);
      if (!cfg.witness_dir.empty()) {
        std::filesystem::create_directories(cfg.witness_dir);
        v.witness_file = (std::filesystem::path(cfg.witness_dir) / ("witness_" + std::to_string(i) + ".json")).string();
        std::ofstream(v.witness_file) << to_json(bodies_file_for(v.witness)).dump(2) << '\n';
      }
      s.violations.push_back(std::move(v));
    }
  }
  return s;
}

Json to_json(const SuiteSummary& s) {
  Json checks = Json::object();
  for (const auto& [name, t] : s.per_check) {
    Json c{{"trials", t.trials}, {"verdicts", t.verdicts}};
    if (t.min_deficit) {
      c["min_deficit"] = to_json(*t.min_deficit);
      c["min_deficit_trial"] = t.min_trial;
    }
    if (t.min_relative_deficit) c["min_relative_deficit"] = *t.min_relative_deficit;
    checks[name] = c;
  }
  Json violations = Json::array();
  for (const auto& v : s.violations) {
    Json j{{"trial", v.trial}, {"report", to_json(v.report)}, {"witness", to_json(bodies_file_for(v.witness))}};
    if (!v.witness_file.empty()) j["witness_file"] = v.witness_file;
    violations.push_back(j);
  }
  return Json{{"seed", s.seed}, {"trials", s.trials}, {"violations", violations}, {"checks", checks}};
}

std::string summary_table(const SuiteSummary& s) {
  std::ostringstream out;
  out << "violations: " << s.violations.size() << '\n';
  if (s.per_check.empty()) return out.str();
  out << "check          trials  holds  equality  violated  other  min deficit  min relative\n";
  for (const auto& [name, t] : s.per_check) {
    auto count = [&](const char* v) {
      auto it = t.verdicts.find(v);
      return it == t.verdicts.end() ? std::size_t{0} : it->second;
    };
    const std::size_t other = t.trials - count("holds") - count("equality") - count("violated");
    char line[256];
    std::snprintf(line, sizeof line, "%-13s %7zu %6zu %9zu %9zu %6zu  %11.4g  %12.4g\n", name.c_str(), t.trials,
                  count("holds"), count("equality"), count("violated"), other,
                  t.min_deficit ? t.min_deficit->to_double() : 0.0, t.min_relative_deficit.value_or(0.0));
    out << line;
  }
  return out.str();
}

}  // namespace logbm
