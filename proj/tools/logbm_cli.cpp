// logbm: check inequalities on bodies files, run random suites, certify
// equality cases, and print circle spectra / quadrature convergence tables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "logbm/commands.hpp"
#include "logbm/equality.hpp"
#include "logbm/io.hpp"
#include "logbm/spectral.hpp"

using namespace logbm;

namespace {

Backend parse_backend(const std::string& s) {
  if (s == "exact") return Backend::kExact;
  if (s == "float") return Backend::kFloat;
  throw ParseError("backend must be 'exact' or 'float', got '" + s + "'");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

void parse_dims(const std::string& s, SuiteConfig& cfg) {
  auto dash = s.find('-');
  try {
    cfg.dim_min = std::stoul(s.substr(0, dash));
    cfg.dim_max = dash == std::string::npos ? cfg.dim_min : std::stoul(s.substr(dash + 1));
  } catch (const std::exception&) {
    throw ParseError("--dim expects N or A-B, got '" + s + "'");
  }
  if (cfg.dim_min < 2 || cfg.dim_max < cfg.dim_min || cfg.dim_max > 6) throw ParseError("--dim out of range 2..6");
}

const SmoothBody& smooth_k(const BodiesFile& f, std::size_t dim) {
  const auto* s = std::get_if<SmoothBody>(&f.get(f.task.k));
  if (!s || s->dim() != dim)
    throw UnsupportedCombination("K must be a smooth body in R^" + std::to_string(dim));
  return *s;
}

// Runs `body`, mapping exceptions to the exit-code contract.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const UnsupportedCombination& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const DegenerateInput& e) {
    std::cerr << "degenerate input: " << e.what() << '\n';
    return kExitUnsupported;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical checks of the log-Brunn-Minkowski family for zonoids"};
  app.require_subcommand(1);
  int code = kExitOk;

  std::string backend = "exact", out, name, file;
  double tolerance = -1;

  auto* check = app.add_subcommand("check", "Evaluate one inequality on a bodies file");
  check->add_option("name", name, "bm|mink1|mink2|local-logbm|logmink|indstep|alexandrov-eq|superlich|bochner|geomean")
      ->required();
  check->add_option("file", file, "Bodies file (JSON)")->required();
  check->add_option("--backend", backend, "exact|float");
  check->add_option("--tolerance", tolerance, "Tolerance for float comparisons");
  check->add_option("--out", out, "Write OUT.json and OUT.csv");
  check->callback([&] {
    code = guarded([&] {
      BodiesFile f = load_bodies_file(file);
      CheckOptions opt{parse_backend(backend), tolerance >= 0 ? std::optional<double>(tolerance) : std::nullopt};
      InequalityReport r = evaluate_check(name, f, opt);
      const std::string json = to_json(r).dump(2) + "\n";
      std::cout << json;
      if (!out.empty()) {
        write_file(out + ".json", json);
        write_file(out + ".csv", report_csv_header() + "\n" + report_csv_row(r) + "\n");
      }
      return exit_code_for(r.verdict);
    });
  });

  SuiteConfig cfg;
  std::string dims = "3", checks, witness_dir;
  unsigned threads = 0;
  auto* suite = app.add_subcommand("suite", "Run seeded random trials of the exact checks");
  suite->add_option("--seed", cfg.seed, "Random seed");
  suite->add_option("--trials", cfg.trials, "Number of trials");
  suite->add_option("--dim", dims, "Dimension N or range A-B");
  suite->add_option("--checks", checks, "Comma-separated checks (default: all suite checks)");
  suite->add_option("--range", cfg.coord_range, "Coordinate range of random generators");
  suite->add_option("--backend", backend, "exact|float");
  suite->add_option("--tolerance", tolerance, "Tolerance for float comparisons");
  suite->add_option("--threads", threads, "Worker threads (default: LOGBM_THREADS or all cores)");
  suite->add_option("--witness-dir", witness_dir, "Directory for minimized witnesses");
  suite->add_option("--out", out, "Write OUT.json and OUT.txt");
  suite->callback([&] {
    code = guarded([&] {
      parse_dims(dims, cfg);
      cfg.backend = parse_backend(backend);
      if (tolerance >= 0) cfg.tolerance = tolerance;
      cfg.threads = threads;
      cfg.witness_dir = witness_dir;
      if (!checks.empty()) {
        cfg.checks.clear();
        std::size_t start = 0;
        while (start <= checks.size()) {
          auto comma = checks.find(',', start);
          std::string c = checks.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
          if (c != "bm" && c != "mink1" && c != "mink2" && c != "local-logbm" && c != "logmink" && c != "indstep")
            throw ParseError("suite cannot run check '" + c + "'");
          cfg.checks.push_back(c);
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
      }
      SuiteSummary s = run_suite(cfg);
      const std::string table = summary_table(s);
      std::cout << table;
      if (!out.empty()) {
        write_file(out + ".json", to_json(s).dump(2) + "\n");
        write_file(out + ".txt", table);
      }
      return s.violations.empty() ? kExitOk : kExitViolated;
    });
  });

  auto* certify = app.add_subcommand("certify", "Certify an equality case of the local inequality");
  certify->add_option("file", file, "Bodies file with a zonotope K and a body L")->required();
  certify->add_option("--out", out, "Write the certificate to OUT");
  certify->callback([&] {
    code = guarded([&] {
      BodiesFile f = load_bodies_file(file);
      const auto* k = std::get_if<Zonotope>(&f.get(f.task.k));
      if (!k) throw UnsupportedCombination("certify: K must be a zonotope");
      if (f.task.l.empty()) throw ParseError("certify: task needs a body L");
      DecompositionCertificate c = certify_equality(*k, f.get(f.task.l));
      const std::string json = to_json(c).dump(2) + "\n";
      std::cout << json;
      if (!out.empty()) write_file(out, json);
      return kExitOk;
    });
  });

  std::size_t grid = 2048;
  auto* spectrum = app.add_subcommand("spectrum", "Circle spectrum of a smooth planar body (CSV)");
  spectrum->add_option("file", file, "Bodies file with a smooth planar K")->required();
  spectrum->add_option("--grid", grid, "Number of angles (even)");
  spectrum->callback([&] {
    code = guarded([&] {
      BodiesFile f = load_bodies_file(file);
      CircleOperator op(smooth_k(f, 2), f.task.grid.value_or(grid));
      auto spec = circle_spectrum(op);
      std::printf("index,parity,eigenvalue\n");
      for (std::size_t i = 0; i < spec.size(); ++i)
        std::printf("%zu,%s,%.17g\n", i, spec[i].even ? "even" : "odd", spec[i].value);
      return kExitOk;
    });
  });

  int level_min = 3, level_max = 6;
  std::string rule = "centroid";
  auto* conv = app.add_subcommand("convergence", "Bochner residual against mesh level (CSV)");
  conv->add_option("file", file, "Bodies file with smooth K and L in R^3")->required();
  conv->add_option("--min-level", level_min);
  conv->add_option("--max-level", level_max);
  conv->add_option("--rule", rule, "centroid|seven-point");
  conv->callback([&] {
    code = guarded([&] {
      BodiesFile f = load_bodies_file(file);
      const SmoothBody& k = smooth_k(f, 3);
      if (rule != "centroid" && rule != "seven-point") throw ParseError("--rule must be centroid or seven-point");
      auto r = rule == "centroid" ? SphereQuadrature::Rule::kCentroid : SphereQuadrature::Rule::kSevenPoint;
      SupportExpr g = SupportExpr::of(Body(k));
      if (!f.task.l.empty()) {
        const auto* l = std::get_if<SmoothBody>(&f.get(f.task.l));
        if (!l) throw UnsupportedCombination("L must be smooth");
        g = orthogonalized_difference(k, *l, SphereQuadrature(level_max, SphereQuadrature::Rule::kSevenPoint));
      }
      std::printf("level,nodes,side1,side2,residual\n");
      for (int lv = level_min; lv <= level_max; ++lv) {
        SphereQuadrature q(lv, r);
        BochnerResidual b = bochner_residual(k, g, q);
        std::printf("%d,%zu,%.17g,%.17g,%.6e\n", lv, q.size(), b.side1, b.side2, b.residual);
      }
      return kExitOk;
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }
  return code;
}
