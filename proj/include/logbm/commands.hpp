// What the command line does, as library calls: evaluate a named check on a
// bodies file, and run seeded random suites across threads.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "logbm/inequalities.hpp"
#include "logbm/io.hpp"

namespace logbm {

/// Stable exit codes of the CLI.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitViolated = 2,
  kExitUnsupported = 3,
  kExitParse = 4,
  kExitUndetermined = 5,
};

int exit_code_for(Verdict v);

struct CheckOptions {
  Backend backend = Backend::kExact;
  std::optional<double> tolerance;  // overrides float tolerances
};

/// bm, mink1, mink2, local-logbm, logmink, indstep, alexandrov-eq, superlich,
/// bochner, geomean.
const std::vector<std::string>& check_names();

/// Evaluates check `name` on the task of a bodies file. Throws ParseError for
/// missing task fields, UnsupportedCombination or PreconditionError when the
/// bodies do not fit the check.
InequalityReport evaluate_check(const std::string& name, const BodiesFile& file, const CheckOptions& opt = {});

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 100;
  std::size_t dim_min = 3;
  std::size_t dim_max = 3;
  std::size_t extra_generators = 3;  // K gets n + [0, extra] generators
  int coord_range = 3;
  Backend backend = Backend::kExact;
  std::optional<double> tolerance;
  std::vector<std::string> checks{"bm", "mink1", "mink2", "local-logbm", "indstep", "logmink"};
  std::string witness_dir;  // empty: keep witnesses in memory only
  unsigned threads = 0;     // 0: LOGBM_THREADS, else hardware concurrency
};

/// Number of worker threads: `requested` if nonzero, else LOGBM_THREADS,
/// else the hardware concurrency; LOGBM_THREADS also caps explicit requests.
unsigned resolve_threads(unsigned requested);

/// Seed of trial i, independent of scheduling.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

/// A random instance of the given check in dimension n with small integer data.
CheckInstance random_instance(const std::string& check, std::size_t n, const SuiteConfig& cfg, std::mt19937_64& rng);

struct CheckTally {
  std::size_t trials = 0;
  std::map<std::string, std::size_t> verdicts;  // verdict name or "unsupported"
  std::optional<Scalar> min_deficit;
  std::optional<double> min_relative_deficit;  // deficit / max(|lhs|, |rhs|)
  std::size_t min_trial = 0;
};

struct Violation {
  std::size_t trial = 0;
  InequalityReport report;
  CheckInstance witness;
  std::string witness_file;
};

struct SuiteSummary {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::map<std::string, CheckTally> per_check;
  std::vector<Violation> violations;
};

/// Trial i runs check i mod |checks| on an instance drawn from trial_seed(i).
/// Trials run in parallel; tallies are reduced in trial order, so the summary
/// does not depend on the thread count.
SuiteSummary run_suite(const SuiteConfig& cfg);

Json to_json(const SuiteSummary& s);
/// "violations: k" followed by one line per check.
std::string summary_table(const SuiteSummary& s);

}  // namespace logbm
