// Evaluators for the Brunn-Minkowski family of inequalities on zonotopes and
// symmetric polytopes, with exact verdicts wherever no logarithm is involved.

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>

#include "logbm/arith.hpp"
#include "logbm/bodies.hpp"
#include "logbm/mixedvol.hpp"

namespace logbm {

/// A precondition of a check fails (degenerate denominator, indefinite
/// matrix, wrong dimension).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Verdict { kHolds, kEquality, kViolated, kUndetermined };
const char* verdict_name(Verdict v);

struct InequalityReport {
  std::string name;
  std::size_t n = 0;
  std::string form;  // which rewriting of the inequality was evaluated
  Scalar lhs;
  Scalar rhs;
  Scalar deficit;            // lhs - rhs
  double error_bound = 0.0;  // only for float evaluations
  Verdict verdict = Verdict::kUndetermined;
  std::map<std::string, std::string> details;
};

/// Verdict from the sign of lhs - rhs; float values within `tolerance` count
/// as equality.
Verdict verdict_of(const Scalar& deficit, double tolerance = 0.0);

/// Vol((1-t)K + tL) >= ((1-t) Vol(K)^(1/n) + t Vol(L)^(1/n))^n. Irrational
/// roots are bracketed by refined rational bounds.
InequalityReport check_bm(const Body& k, const Body& l, const Scalar& t);
/// V(L, K, ..., K)^n >= Vol(L) Vol(K)^(n-1).
InequalityReport check_minkowski_first(const Zonotope& k, const Body& l);
/// V(L, K, ..., K)^2 >= V(L, L, K, ..., K) Vol(K).
InequalityReport check_minkowski_second(const Zonotope& k, const Body& l);
/// V(f, K, ..., K)^2 / Vol(K) >= ((n-1)/n) V(f, f, K, ..., K)
///                               + (1/n^2) int f^2 / h_K dS_K.
InequalityReport check_local_logbm(const Zonotope& k, const SupportExpr& f);
/// int h_K log(h_L / h_K) dS_K >= Vol(K) log(Vol(L) / Vol(K)), in floats.
InequalityReport check_log_minkowski(const Zonotope& k, const Body& l);
/// The local inequality one dimension down, with a segment [-u, u] in every
/// mixed volume and measure.
InequalityReport check_induction_step(const Zonotope& k, const SupportExpr& f, const Vec& u);

/// D(A_1, ..., A_m) for m symmetric m x m matrices, by polarization.
Scalar mixed_discriminant(std::span<const Matrix> mats);
/// D(A, B, M...)^2 >= D(A, A, M...) D(B, B, M...) for B, M_i positive
/// semidefinite.
InequalityReport check_alexandrov_mixed_discriminant(const Matrix& a, const Matrix& b, std::span<const Matrix> ms);
/// All principal minors nonnegative.
bool is_positive_semidefinite(const Matrix& m);

/// The data of one check, as used by witnesses and the random suite.
struct CheckInstance {
  std::string check;
  Zonotope k;
  Body l;
  Scalar t;
  Vec u;
};

/// Runs the named check on an instance (bm, mink1, mink2, local-logbm,
/// logmink, indstep).
InequalityReport run_check(const CheckInstance& inst);

/// Shrinks a failing instance while `fails` keeps returning true: drops
/// generators and vertex pairs, then halves integer coordinates toward zero.
/// Each restart visits the candidates in a different random order; the
/// smallest result wins.
CheckInstance minimize_witness(const CheckInstance& inst, const std::function<bool(const CheckInstance&)>& fails,
                               std::mt19937_64& rng, int restarts = 4);

}  // namespace logbm
