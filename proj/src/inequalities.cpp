#include "logbm/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

namespace logbm {

namespace {

Scalar from_size(std::size_t n) { return Scalar(static_cast<long>(n)); }

void require_dims(std::size_t a, std::size_t b) {
  if (a != b) throw PreconditionError("bodies have different dimensions");
}

// Volume, with lower-dimensional polytopes counted as 0.
Scalar volume_or_zero(const Body& b) {
  if (const auto* p = std::get_if<SymmetricPolytope>(&b)) {
    if (!p->full_dimensional()) return Scalar(0);
  }
  return body_volume(b);
}

std::vector<Slot> repeated(const Zonotope& k, std::size_t count) { return std::vector<Slot>(count, k); }

Scalar first_order(const AtomicSphericalMeasure& s, const Body& b) {
  return s.integrate([&](const Vec& w) { return support_eval(b, w); }) / from_size(s.dim());
}

// sum c f(w)^2 / h_K(w): the integral of f^2 / h_K against the measure.
Scalar square_over_hk(const AtomicSphericalMeasure& s, const SupportExpr& f, const Zonotope& k) {
  Scalar total(0);
  for (const auto& a : s.atoms()) {
    Scalar hk = support_eval(k, a.w);
    if (hk.sign() <= 0) throw PreconditionError("h_K vanishes on the support of the measure");
    Scalar fw = support_eval(f, a.w);
    total += a.c * fw * fw / hk;
  }
  return total;
}

std::vector<Slot> expr_slots(const SupportExpr& f) {
  std::vector<Slot> out;
  for (const auto& t : f.terms()) out.push_back(to_slot(*t.body));
  return out;
}

// V(f, f, rest...) by bilinear expansion over the terms of f.
Scalar second_order(const SupportExpr& f, const std::vector<Slot>& rest) {
  std::vector<Slot> terms = expr_slots(f);
  Scalar total(0);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i; j < terms.size(); ++j) {
      std::vector<Slot> slots{terms[i], terms[j]};
      slots.insert(slots.end(), rest.begin(), rest.end());
      Scalar v = f.terms()[i].coeff * f.terms()[j].coeff * mixed_volume(slots);
      total += i == j ? v : Scalar(2) * v;
    }
  }
  return total;
}

InequalityReport finish(InequalityReport r, double tolerance = 0.0) {
  r.deficit = r.lhs - r.rhs;
  r.verdict = verdict_of(r.deficit, tolerance);
  return r;
}

double float_tolerance(const Scalar& a, const Scalar& b) {
  return 1e-9 * std::max({1.0, std::abs(a.to_double()), std::abs(b.to_double())});
}

// Stack of the mixed volume and measure data shared by the local checks.
struct LocalData {
  std::size_t n;
  AtomicSphericalMeasure s;  // S_{extra, K, ..., K}
  std::vector<Slot> rest;    // extra segment (if any) and K repeated
};

LocalData local_data(const Zonotope& k, const std::optional<Zonotope>& extra) {
  const std::size_t n = k.dim();
  std::vector<Slot> measure_slots;
  if (extra) measure_slots.push_back(*extra);
  while (measure_slots.size() < n - 1) measure_slots.emplace_back(k);
  std::vector<Slot> rest;
  if (extra) rest.push_back(*extra);
  while (rest.size() < n - 2) rest.emplace_back(k);
  return {n, mixed_area_measure(measure_slots), rest};
}

Scalar first_order_expr(const AtomicSphericalMeasure& s, const SupportExpr& f) {
  return s.integrate([&](const Vec& w) { return support_eval(f, w); }) / from_size(s.dim());
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kEquality:
      return "equality";
    case Verdict::kViolated:
      return "violated";
    case Verdict::kUndetermined:
      return "undetermined";
  }
  return "undetermined";
}

Verdict verdict_of(const Scalar& deficit, double tolerance) {
  if (deficit.is_exact() && tolerance == 0.0) {
    int s = deficit.sign();
    return s > 0 ? Verdict::kHolds : s == 0 ? Verdict::kEquality : Verdict::kViolated;
  }
  double d = deficit.to_double();
  if (std::isnan(d)) return Verdict::kUndetermined;
  if (std::abs(d) <= tolerance) return Verdict::kEquality;
  return d > 0 ? Verdict::kHolds : Verdict::kViolated;
}

InequalityReport check_bm(const Body& k, const Body& l, const Scalar& t) {
  const std::size_t n = body_dim(k);
  require_dims(n, body_dim(l));
  if (t.sign() < 0 || t > Scalar(1)) throw PreconditionError("t must lie in [0, 1]");
  if (std::holds_alternative<SmoothBody>(k) || std::holds_alternative<SmoothBody>(l))
    throw UnsupportedCombination("bm: smooth bodies are not supported");

  InequalityReport r;
  r.name = "bm";
  r.n = n;
  const Scalar s = Scalar(1) - t;
  const Scalar vk = volume_or_zero(k), vl = volume_or_zero(l);

  const auto* zk = std::get_if<Zonotope>(&k);
  const auto* zl = std::get_if<Zonotope>(&l);
  if (zk && zl) {
    std::vector<Generator> gens;
    if (!s.is_zero())
      for (const auto& g : zk->generators()) gens.push_back({g.direction, s * g.weight});
    if (!t.is_zero())
      for (const auto& g : zl->generators()) gens.push_back({g.direction, t * g.weight});
    r.lhs = zonotope_volume(Zonotope(n, gens));
    r.details["lhs_method"] = "zonotope determinant formula";
  } else {
    std::vector<Vec> pts;
    for (const auto& p : body_vertices(k))
      for (const auto& q : body_vertices(l)) pts.push_back(s * p + t * q);
    r.lhs = affine_dimension(pts) == static_cast<int>(n) ? hull_volume(pts) : Scalar(0);
    r.details["lhs_method"] = "hull of vertex sums";
  }
  r.details["vol_k"] = vk.str();
  r.details["vol_l"] = vl.str();

  // Geometric-mean form, in floats.
  double gm = std::pow(vk.to_double(), s.to_double()) * std::pow(vl.to_double(), t.to_double());
  r.details["geometric_form_rhs"] = Scalar::from_double(gm).str();
  r.details["geometric_form_holds"] = r.lhs.to_double() >= gm * (1 - 1e-12) ? "true" : "false";

  if (!(r.lhs.is_exact() && vk.is_exact() && vl.is_exact() && t.is_exact())) {
    r.form = "power (float)";
    double rhs = std::pow(s.to_double() * std::pow(vk.to_double(), 1.0 / n) + t.to_double() * std::pow(vl.to_double(), 1.0 / n),
                          static_cast<double>(n));
    r.rhs = Scalar::from_double(rhs);
    r.error_bound = float_tolerance(r.lhs, r.rhs);
    const double tol = r.error_bound;
    return finish(std::move(r), tol);
  }

  const mpq_class& qk = vk.rational();
  const mpq_class& ql = vl.rational();
  const unsigned un = static_cast<unsigned>(n);
  auto rk = exact_root(qk, un);
  auto rl = exact_root(ql, un);
  std::optional<Scalar> rhs;
  if (rk && rl) {
    rhs = pow(s * Scalar(*rk) + t * Scalar(*rl), un);
  } else if (sgn(qk) > 0) {
    if (auto ratio = exact_root(mpq_class(ql / qk), un)) rhs = vk * pow(s + t * Scalar(*ratio), un);
  }
  if (!rhs && sgn(ql) > 0) {
    if (auto ratio = exact_root(mpq_class(qk / ql), un)) rhs = vl * pow(s * Scalar(*ratio) + t, un);
  }
  if (rhs) {
    r.form = "power";
    r.rhs = *rhs;
    return finish(std::move(r));
  }

  // Irrational roots: bracket the right side until the comparison is decided.
  r.form = "power (bracketed roots)";
  const mpq_class& lhs = r.lhs.rational();
  for (unsigned bits = 64; bits <= 4096; bits *= 2) {
    auto [klo, khi] = root_bounds(qk, un, bits);
    auto [llo, lhi] = root_bounds(ql, un, bits);
    Scalar lo = pow(s * Scalar(klo) + t * Scalar(llo), un);
    Scalar hi = pow(s * Scalar(khi) + t * Scalar(lhi), un);
    r.details["rhs_bracket_bits"] = std::to_string(bits);
    r.details["rhs_lower"] = lo.str();
    r.details["rhs_upper"] = hi.str();
    if (Scalar(lhs) > hi || Scalar(lhs) < lo) {
      r.rhs = Scalar::from_double(((lo + hi) / Scalar(2)).to_double());
      r.deficit = r.lhs - r.rhs;
      r.verdict = Scalar(lhs) > hi ? Verdict::kHolds : Verdict::kViolated;
      return r;
    }
  }
  r.rhs = Scalar::from_double(Scalar::parse(r.details["rhs_lower"]).to_double());
  r.deficit = r.lhs - r.rhs;
  r.verdict = Verdict::kUndetermined;
  return r;
}

InequalityReport check_minkowski_first(const Zonotope& k, const Body& l) {
  const std::size_t n = k.dim();
  require_dims(n, body_dim(l));
  if (!k.full_dimensional()) throw PreconditionError("K must be full-dimensional");
  InequalityReport r;
  r.name = "mink1";
  r.n = n;
  r.form = "power";
  AtomicSphericalMeasure s = mixed_area_measure(repeated(k, n - 1));
  Scalar v1 = first_order(s, l);
  Scalar vk = zonotope_volume(k), vl = volume_or_zero(l);
  r.lhs = pow(v1, static_cast<unsigned>(n));
  r.rhs = vl * pow(vk, static_cast<unsigned>(n - 1));
  r.details["v_l_k"] = v1.str();
  r.details["vol_k"] = vk.str();
  r.details["vol_l"] = vl.str();
  const double tol = r.lhs.is_exact() && r.rhs.is_exact() ? 0.0 : float_tolerance(r.lhs, r.rhs);
  return finish(std::move(r), tol);
}

InequalityReport check_minkowski_second(const Zonotope& k, const Body& l) {
  const std::size_t n = k.dim();
  require_dims(n, body_dim(l));
  if (!k.full_dimensional()) throw PreconditionError("K must be full-dimensional");
  InequalityReport r;
  r.name = "mink2";
  r.n = n;
  r.form = "squared";
  AtomicSphericalMeasure s = mixed_area_measure(repeated(k, n - 1));
  Scalar v1 = first_order(s, l);
  std::vector<Slot> slots{to_slot(l), to_slot(l)};
  for (std::size_t i = 2; i < n; ++i) slots.emplace_back(k);
  Scalar v2 = mixed_volume(slots);
  Scalar vk = zonotope_volume(k);
  r.lhs = v1 * v1;
  r.rhs = v2 * vk;
  r.details["v_l_k"] = v1.str();
  r.details["v_l_l_k"] = v2.str();
  r.details["vol_k"] = vk.str();
  const double tol = r.lhs.is_exact() && r.rhs.is_exact() ? 0.0 : float_tolerance(r.lhs, r.rhs);
  return finish(std::move(r), tol);
}

InequalityReport check_local_logbm(const Zonotope& k, const SupportExpr& f) {
  const std::size_t n = k.dim();
  require_dims(n, f.dim());
  if (!k.full_dimensional()) throw PreconditionError("K must be full-dimensional");
  InequalityReport r;
  r.name = "local-logbm";
  r.n = n;
  r.form = "quotient";
  LocalData d = local_data(k, std::nullopt);
  Scalar vk = d.s.integrate([&](const Vec& w) { return support_eval(k, w); }) / from_size(n);
  Scalar v1 = first_order_expr(d.s, f);
  Scalar v2 = second_order(f, d.rest);
  Scalar integral = square_over_hk(d.s, f, k);
  const Scalar nn = from_size(n);
  r.lhs = v1 * v1 / vk;
  r.rhs = (nn - Scalar(1)) / nn * v2 + integral / (nn * nn);
  r.details["vol_k"] = vk.str();
  r.details["v_f_k"] = v1.str();
  r.details["v_f_f_k"] = v2.str();
  r.details["int_f2_over_hk"] = integral.str();
  const double tol = r.lhs.is_exact() && r.rhs.is_exact() ? 0.0 : float_tolerance(r.lhs, r.rhs);
  return finish(std::move(r), tol);
}

InequalityReport check_induction_step(const Zonotope& k, const SupportExpr& f, const Vec& u) {
  const std::size_t n = k.dim();
  require_dims(n, f.dim());
  require_dims(n, u.size());
  if (n < 3) throw PreconditionError("the induction step needs n >= 3");
  if (is_zero(u)) throw PreconditionError("u must be nonzero");
  InequalityReport r;
  r.name = "indstep";
  r.n = n;
  r.form = "quotient";
  const Zonotope seg = Zonotope::segment(u);
  LocalData d = local_data(k, seg);
  Scalar a = d.s.integrate([&](const Vec& w) { return support_eval(k, w); }) / from_size(n);
  if (a.sign() <= 0) throw PreconditionError("V([-u,u], K, ..., K) vanishes");
  Scalar v1 = first_order_expr(d.s, f);
  Scalar v2 = second_order(f, d.rest);
  Scalar integral = square_over_hk(d.s, f, k);
  const Scalar nn = from_size(n);
  r.lhs = v1 * v1 / a;
  r.rhs = (nn - Scalar(2)) / (nn - Scalar(1)) * v2 + integral / (nn * (nn - Scalar(1)));
  r.details["v_u_k"] = a.str();
  r.details["v_u_f_k"] = v1.str();
  r.details["v_u_f_f_k"] = v2.str();
  r.details["int_f2_over_hk"] = integral.str();
  const double tol = r.lhs.is_exact() && r.rhs.is_exact() ? 0.0 : float_tolerance(r.lhs, r.rhs);
  return finish(std::move(r), tol);
}

InequalityReport check_log_minkowski(const Zonotope& k, const Body& l) {
  const std::size_t n = k.dim();
  require_dims(n, body_dim(l));
  if (!k.full_dimensional()) throw PreconditionError("K must be full-dimensional");
  InequalityReport r;
  r.name = "logmink";
  r.n = n;
  r.form = "float with error bound";
  constexpr double eps = std::numeric_limits<double>::epsilon();

  AtomicSphericalMeasure s = mixed_area_measure(repeated(k, n - 1));
  double lhs = 0, bound = 0, magnitude = 0;
  bool all_zero = true;
  std::size_t terms = 0;
  for (const auto& a : s.atoms()) {
    Scalar hk = support_eval(k, a.w);
    Scalar hl = support_eval(l, a.w);
    if (hl.sign() <= 0) throw PreconditionError("L is not full-dimensional (h_L vanishes at an atom)");
    Scalar ratio = hl / hk;
    double weight = (a.c * hk).to_double();
    if (ratio == Scalar(1)) continue;  // log 1 = 0 exactly
    all_zero = false;
    double lg = std::log(ratio.to_double());
    double term = weight * lg;
    lhs += term;
    // conversion of weight and ratio, log, product: a few ulps each
    bound += 4 * eps * std::abs(weight) * (std::abs(lg) + 1);
    magnitude += std::abs(term);
    ++terms;
  }
  bound += static_cast<double>(terms) * eps * magnitude;

  Scalar vk = zonotope_volume(k), vl = volume_or_zero(l);
  if (vl.sign() <= 0) throw PreconditionError("Vol(L) vanishes");
  double lgv = std::log((vl / vk).to_double());
  double rhs = vk.to_double() * lgv;
  bound += 4 * eps * vk.to_double() * (std::abs(lgv) + 1);

  r.lhs = all_zero ? Scalar(0) : Scalar::from_double(lhs);
  r.rhs = Scalar::from_double(rhs);
  r.error_bound = bound;
  r.details["vol_k"] = vk.str();
  r.details["vol_l"] = vl.str();
  r.details["lhs_exact_zero"] = all_zero ? "true" : "false";
  return finish(std::move(r), bound);
}

Scalar mixed_discriminant(std::span<const Matrix> mats) {
  const std::size_t m = mats.size();
  if (m == 0) throw PreconditionError("mixed discriminant of an empty tuple");
  for (const auto& a : mats) {
    if (a.size() != m) throw PreconditionError("mixed discriminant: need m matrices of size m x m");
    for (std::size_t i = 0; i < m; ++i) {
      if (a[i].size() != m) throw PreconditionError("mixed discriminant: matrix is not square");
      for (std::size_t j = 0; j < i; ++j)
        if (!(a[i][j] == a[j][i])) throw PreconditionError("mixed discriminant: matrix is not symmetric");
    }
  }
  Scalar total(0);
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    Matrix sum(m, Vec(m, Scalar(0)));
    std::size_t count = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask >> i & 1)) continue;
      ++count;
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) sum[r][c] += mats[i][r][c];
    }
    Scalar d = det(sum);
    total += (m - count) % 2 == 0 ? d : -d;
  }
  mpz_class fact = 1;
  for (std::size_t i = 2; i <= m; ++i) fact *= static_cast<unsigned long>(i);
  return total / Scalar(fact);
}

bool is_positive_semidefinite(const Matrix& m) {
  const std::size_t n = m.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    Matrix sub(idx.size(), Vec(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) sub[r][c] = m[idx[r]][idx[c]];
    if (det(sub).sign() < 0) return false;
  }
  return true;
}

InequalityReport check_alexandrov_mixed_discriminant(const Matrix& a, const Matrix& b, std::span<const Matrix> ms) {
  if (!is_positive_semidefinite(b)) throw PreconditionError("B is not positive semidefinite");
  for (const auto& m : ms)
    if (!is_positive_semidefinite(m)) throw PreconditionError("an M slot is not positive semidefinite");
  auto tuple = [&](const Matrix& x, const Matrix& y) {
    std::vector<Matrix> t{x, y};
    t.insert(t.end(), ms.begin(), ms.end());
    return mixed_discriminant(t);
  };
  InequalityReport r;
  r.name = "mixdisc";
  r.n = a.size() + 1;
  r.form = "squared";
  Scalar dab = tuple(a, b);
  Scalar daa = tuple(a, a), dbb = tuple(b, b);
  r.lhs = dab * dab;
  r.rhs = daa * dbb;
  r.details["d_a_b"] = dab.str();
  r.details["d_a_a"] = daa.str();
  r.details["d_b_b"] = dbb.str();
  const double tol = r.lhs.is_exact() && r.rhs.is_exact() ? 0.0 : float_tolerance(r.lhs, r.rhs);
  return finish(std::move(r), tol);
}

InequalityReport run_check(const CheckInstance& inst) {
  const std::string& c = inst.check;
  if (c == "bm") return check_bm(Body(inst.k), inst.l, inst.t);
  if (c == "mink1") return check_minkowski_first(inst.k, inst.l);
  if (c == "mink2") return check_minkowski_second(inst.k, inst.l);
  if (c == "local-logbm") return check_local_logbm(inst.k, SupportExpr::of(inst.l));
  if (c == "logmink") return check_log_minkowski(inst.k, inst.l);
  if (c == "indstep") return check_induction_step(inst.k, SupportExpr::of(inst.l), inst.u);
  throw std::invalid_argument("unknown check '" + c + "'");
}

namespace {

std::size_t instance_size(const CheckInstance& inst) {
  auto bits = [](const Vec& v) {
    std::size_t b = 0;
    for (const auto& x : v)
      if (x.is_exact()) b += mpz_sizeinbase(x.rational().get_num_mpz_t(), 2) + mpz_sizeinbase(x.rational().get_den_mpz_t(), 2);
    return b;
  };
  std::size_t size = 0;
  for (const auto& g : inst.k.generators()) size += 1000 + bits(g.direction) + bits({g.weight});
  if (const auto* z = std::get_if<Zonotope>(&inst.l))
    for (const auto& g : z->generators()) size += 1000 + bits(g.direction) + bits({g.weight});
  if (const auto* p = std::get_if<SymmetricPolytope>(&inst.l))
    for (const auto& v : p->vertex_pairs()) size += 1000 + bits(v);
  return size + bits(inst.u);
}

Scalar halve(const Scalar& x) {
  if (!x.is_integer()) return x;
  mpz_class q;
  mpz_tdiv_q_2exp(q.get_mpz_t(), x.rational().get_num_mpz_t(), 1);
  return Scalar(q);
}

std::vector<Generator> shrink_generators(const std::vector<Generator>& gens, std::size_t move) {
  // move: 0..m-1 drop, m..2m-1 unit weight, then one move per coordinate.
  const std::size_t m = gens.size();
  std::vector<Generator> out = gens;
  if (move < m) {
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(move));
  } else if (move < 2 * m) {
    out[move - m].weight = Scalar(1);
  } else {
    std::size_t dim = gens.front().direction.size();
    std::size_t idx = move - 2 * m;
    Vec& d = out[idx / dim].direction;
    d[idx % dim] = halve(d[idx % dim]);
    if (is_zero(d)) return gens;
  }
  return out;
}

std::optional<CheckInstance> apply_move(const CheckInstance& inst, std::size_t move) {
  const std::size_t n = inst.k.dim();
  const std::size_t km = inst.k.generators().size();
  const std::size_t kmoves = 2 * km + km * n;
  CheckInstance next = inst;
  if (move < kmoves) {
    auto gens = shrink_generators(inst.k.generators(), move);
    Zonotope z(n, gens);
    if (!z.full_dimensional() || z == inst.k) return std::nullopt;
    next.k = std::move(z);
    return next;
  }
  move -= kmoves;
  if (const auto* zl = std::get_if<Zonotope>(&inst.l)) {
    const std::size_t lm = zl->generators().size();
    if (move >= 2 * lm + lm * n || lm == 0) return std::nullopt;
    auto gens = shrink_generators(zl->generators(), move);
    if (gens.empty()) return std::nullopt;
    Zonotope z(n, gens);
    if (z == *zl) return std::nullopt;
    next.l = std::move(z);
    return next;
  }
  if (const auto* p = std::get_if<SymmetricPolytope>(&inst.l)) {
    std::vector<Vec> pairs = p->vertex_pairs();
    const std::size_t pm = pairs.size();
    if (move < pm) {
      pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(move));
    } else if (move < pm + pm * n) {
      std::size_t idx = move - pm;
      Vec& v = pairs[idx / n];
      Scalar h = halve(v[idx % n]);
      if (h == v[idx % n]) return std::nullopt;
      v[idx % n] = h;
      if (is_zero(v)) return std::nullopt;
    } else {
      return std::nullopt;
    }
    SymmetricPolytope q(n, pairs);
    if (!q.full_dimensional()) return std::nullopt;
    next.l = std::move(q);
    return next;
  }
  return std::nullopt;
}

std::size_t move_count(const CheckInstance& inst) {
  const std::size_t n = inst.k.dim();
  std::size_t count = inst.k.generators().size() * (2 + n);
  if (const auto* zl = std::get_if<Zonotope>(&inst.l)) count += zl->generators().size() * (2 + n);
  if (const auto* p = std::get_if<SymmetricPolytope>(&inst.l)) count += p->vertex_pairs().size() * (1 + n);
  return count;
}

}  // namespace

CheckInstance minimize_witness(const CheckInstance& inst, const std::function<bool(const CheckInstance&)>& fails,
                               std::mt19937_64& rng, int restarts) {
  CheckInstance best = inst;
  for (int round = 0; round < restarts; ++round) {
    CheckInstance cur = inst;
    bool progress = true;
    while (progress) {
      progress = false;
      std::vector<std::size_t> moves(move_count(cur));
      for (std::size_t i = 0; i < moves.size(); ++i) moves[i] = i;
      std::shuffle(moves.begin(), moves.end(), rng);
      for (std::size_t mv : moves) {
        auto cand = apply_move(cur, mv);
        if (!cand) continue;
        bool still = false;
        try {
          still = fails(*cand);
        } catch (const std::exception&) {
          still = false;
        }
        if (still) {
          cur = std::move(*cand);
          progress = true;
          break;
        }
      }
    }
    if (instance_size(cur) < instance_size(best)) best = std::move(cur);
  }
  return best;
}

}  // namespace logbm
