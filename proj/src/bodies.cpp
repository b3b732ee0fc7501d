#include "logbm/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace logbm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool contains_vec(const std::vector<Vec>& vs, const Vec& v) {
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

std::vector<Vec> dedupe(std::vector<Vec> pts) {
  std::vector<Vec> out;
  for (auto& p : pts)
    if (!contains_vec(out, p)) out.push_back(std::move(p));
  return out;
}

// s^t for rational s > 0 and rational t = p/q, when it is rational.
std::optional<mpq_class> exact_power(const mpq_class& s, const mpq_class& t) {
  const mpz_class& p = t.get_num();
  const mpz_class& q = t.get_den();
  if (abs(p) > 64 || q > 64) return std::nullopt;
  mpq_class base = sgn(p) < 0 ? mpq_class(1 / s) : s;
  mpq_class powered = 1;
  const long reps = mpz_class(abs(p)).get_si();
  for (long i = 0; i < reps; ++i) powered *= base;
  return exact_root(powered, static_cast<unsigned>(q.get_ui()));
}

}  // namespace

Zonotope::Zonotope(std::size_t dim, std::vector<Generator> generators) : dim_(dim) {
  for (auto& g : generators) {
    if (g.direction.size() != dim) throw std::invalid_argument("zonotope: generator dimension mismatch");
    if (is_zero(g.direction)) throw std::invalid_argument("zonotope: zero generator direction");
    if (g.weight.sign() <= 0) throw std::invalid_argument("zonotope: generator weight must be positive");
    Direction d = canonical_direction(g.direction);
    Scalar w = g.weight * abs(d.scale);
    auto it = std::find_if(generators_.begin(), generators_.end(),
                           [&](const Generator& e) { return e.direction == d.direction; });
    if (it != generators_.end()) {
      it->weight += w;
    } else {
      generators_.push_back({std::move(d.direction), std::move(w)});
    }
  }
}

Zonotope Zonotope::segment(const Vec& u, const Scalar& weight) { return Zonotope(u.size(), {{u, weight}}); }

Zonotope Zonotope::box(std::span<const Scalar> half_widths) {
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < half_widths.size(); ++i) gens.push_back({unit_vector(half_widths.size(), i), half_widths[i]});
  return Zonotope(half_widths.size(), std::move(gens));
}

std::size_t Zonotope::rank() const {
  Matrix rows;
  for (const auto& g : generators_) rows.push_back(g.direction);
  return logbm::rank(rows);
}

bool Zonotope::is_exact() const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [](const Generator& g) { return g.weight.is_exact() && all_exact(g.direction); });
}

Zonotope Zonotope::scaled(const Scalar& s) const {
  if (s.sign() <= 0) throw std::invalid_argument("zonotope: scale must be positive");
  std::vector<Generator> gens = generators_;
  for (auto& g : gens) g.weight *= s;
  return Zonotope(dim_, std::move(gens));
}

Zonotope operator+(const Zonotope& a, const Zonotope& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("zonotope sum: dimension mismatch");
  std::vector<Generator> gens = a.generators_;
  gens.insert(gens.end(), b.generators_.begin(), b.generators_.end());
  return Zonotope(a.dim_, std::move(gens));
}

bool Zonotope::same_body(const Zonotope& other) const {
  if (dim_ != other.dim_ || generators_.size() != other.generators_.size()) return false;
  auto sorted = [](std::vector<Generator> g) {
    std::sort(g.begin(), g.end(), [](const Generator& x, const Generator& y) { return lex_less(x.direction, y.direction); });
    return g;
  };
  auto a = sorted(generators_);
  auto b = sorted(other.generators_);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].direction != b[i].direction || a[i].weight != b[i].weight) return false;
  return true;
}

std::vector<Vec> Zonotope::sign_vertices() const {
  const std::size_t m = generators_.size();
  if (m > 20) throw std::length_error("zonotope: too many generators for sign enumeration");
  std::vector<Vec> scaled_gens;
  for (const auto& g : generators_) scaled_gens.push_back(g.weight * g.direction);
  std::vector<Vec> out;
  out.reserve(std::size_t{1} << m);
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    Vec p(dim_);
    for (std::size_t i = 0; i < m; ++i) p = (mask >> i & 1U) ? p + scaled_gens[i] : p - scaled_gens[i];
    out.push_back(std::move(p));
  }
  return out;
}

SymmetricPolytope::SymmetricPolytope(std::size_t dim, std::vector<Vec> vertex_pairs) : dim_(dim) {
  for (auto& v : vertex_pairs) {
    if (v.size() != dim) throw std::invalid_argument("polytope: vertex dimension mismatch");
    if (is_zero(v)) throw std::invalid_argument("polytope: zero vertex");
    if (contains_vec(pairs_, v) || contains_vec(pairs_, -v)) continue;
    pairs_.push_back(std::move(v));
  }
  if (pairs_.empty()) throw std::invalid_argument("polytope: no vertices");
}

SymmetricPolytope SymmetricPolytope::cross_polytope(std::size_t dim) {
  std::vector<Vec> vs;
  for (std::size_t i = 0; i < dim; ++i) vs.push_back(unit_vector(dim, i));
  return SymmetricPolytope(dim, std::move(vs));
}

std::vector<Vec> SymmetricPolytope::points() const {
  std::vector<Vec> pts;
  pts.reserve(2 * pairs_.size());
  for (const auto& v : pairs_) {
    pts.push_back(v);
    pts.push_back(-v);
  }
  return pts;
}

SymmetricPolytope SymmetricPolytope::scaled(const Scalar& s) const {
  if (s.sign() <= 0) throw std::invalid_argument("polytope: scale must be positive");
  std::vector<Vec> vs;
  for (const auto& v : pairs_) vs.push_back(s * v);
  return SymmetricPolytope(dim_, std::move(vs));
}

bool SymmetricPolytope::full_dimensional() const { return rank(pairs_) == dim_; }

SmoothBody::SmoothBody(std::size_t dim, std::vector<Matrix> matrices) : dim_(dim), matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw std::invalid_argument("smooth body: no matrices");
  for (const auto& a : matrices_) {
    if (a.size() != dim) throw std::invalid_argument("smooth body: matrix size mismatch");
    for (std::size_t i = 0; i < dim; ++i) {
      if (a[i].size() != dim) throw std::invalid_argument("smooth body: matrix is not square");
      for (std::size_t j = 0; j < i; ++j)
        if (a[i][j] != a[j][i]) throw std::invalid_argument("smooth body: matrix is not symmetric");
    }
    for (std::size_t k = 1; k <= dim; ++k) {
      Matrix lead(k, Vec(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) lead[i][j] = a[i][j];
      if (det(lead).sign() <= 0) throw std::invalid_argument("smooth body: matrix is not positive definite");
    }
  }
}

std::size_t body_dim(const Body& b) {
  return std::visit([](const auto& x) { return x.dim(); }, b);
}

const char* body_kind(const Body& b) {
  return std::visit(Overloaded{[](const Zonotope&) { return "zonotope"; },
                               [](const SymmetricPolytope&) { return "polytope"; },
                               [](const SmoothBody&) { return "smooth"; }},
                    b);
}

Body to_backend(const Body& b, Backend backend) {
  return std::visit(Overloaded{[&](const Zonotope& z) -> Body {
                                 std::vector<Generator> gens;
                                 for (const auto& g : z.generators())
                                   gens.push_back({to_backend(g.direction, backend), g.weight.to_backend(backend)});
                                 return Zonotope(z.dim(), std::move(gens));
                               },
                               [&](const SymmetricPolytope& p) -> Body {
                                 std::vector<Vec> vs;
                                 for (const auto& v : p.vertex_pairs()) vs.push_back(to_backend(v, backend));
                                 return SymmetricPolytope(p.dim(), std::move(vs));
                               },
                               [](const SmoothBody& s) -> Body { return s; }},
                    b);
}

SupportExpr SupportExpr::of(const Body& b, const Scalar& coeff) {
  SupportExpr e;
  e.add(b, coeff);
  return e;
}

SupportExpr& SupportExpr::add(const Body& b, const Scalar& coeff) {
  if (!terms_.empty() && body_dim(b) != dim()) throw std::invalid_argument("support expression: dimension mismatch");
  terms_.push_back({coeff, std::make_shared<const Body>(b)});
  return *this;
}

SupportExpr& SupportExpr::add(const SupportExpr& other, const Scalar& coeff) {
  for (const auto& t : other.terms_) {
    if (!terms_.empty() && body_dim(*t.body) != dim()) throw std::invalid_argument("support expression: dimension mismatch");
    terms_.push_back({coeff * t.coeff, t.body});
  }
  return *this;
}

std::size_t SupportExpr::dim() const { return terms_.empty() ? 0 : body_dim(*terms_.front().body); }

Scalar support_eval(const Zonotope& z, const Vec& x) {
  if (x.size() != z.dim()) throw std::invalid_argument("support_eval: dimension mismatch");
  Scalar h;
  for (const auto& g : z.generators()) h += g.weight * abs(dot(g.direction, x));
  return h;
}

Scalar support_eval(const SymmetricPolytope& p, const Vec& x) {
  if (x.size() != p.dim()) throw std::invalid_argument("support_eval: dimension mismatch");
  Scalar best = abs(dot(p.vertex_pairs().front(), x));
  for (const auto& v : p.vertex_pairs()) best = std::max(best, abs(dot(v, x)));
  return best;
}

Scalar support_eval(const SmoothBody& s, const Vec& x) {
  if (x.size() != s.dim()) throw std::invalid_argument("support_eval: dimension mismatch");
  if (!x.empty() && all_exact(x)) {
    // Smooth support functions are irrational in general.
    throw BackendError("smooth bodies are evaluated on the float backend only");
  }
  const std::vector<double> xd = to_doubles(x);
  double h = 0.0;
  for (const auto& a : s.matrices()) {
    double q = 0.0;
    for (std::size_t i = 0; i < xd.size(); ++i)
      for (std::size_t j = 0; j < xd.size(); ++j) q += xd[i] * a[i][j].to_double() * xd[j];
    h += std::sqrt(q);
  }
  return Scalar::from_double(h);
}

Scalar support_eval(const Body& b, const Vec& x) {
  return std::visit([&](const auto& body) { return support_eval(body, x); }, b);
}

Scalar support_eval(const SupportExpr& f, const Vec& x) {
  Scalar h;
  for (const auto& t : f.terms()) h += t.coeff * support_eval(*t.body, x);
  return h;
}

std::vector<Vec> contact_face(const Body& b, const Vec& x) {
  return std::visit(
      Overloaded{
          [&](const Zonotope& z) {
            Vec base(z.dim());
            std::vector<Vec> free;
            for (const auto& g : z.generators()) {
              int s = dot(g.direction, x).sign();
              if (s > 0) base = base + g.weight * g.direction;
              if (s < 0) base = base - g.weight * g.direction;
              if (s == 0) free.push_back(g.weight * g.direction);
            }
            std::vector<Vec> pts{base};
            for (const auto& f : free) {
              std::vector<Vec> next;
              for (const auto& p : pts) {
                next.push_back(p + f);
                next.push_back(p - f);
              }
              pts = std::move(next);
            }
            return dedupe(std::move(pts));
          },
          [&](const SymmetricPolytope& p) {
            std::vector<Vec> pts = p.points();
            Scalar best = support_eval(p, x);
            std::vector<Vec> out;
            for (auto& q : pts)
              if (dot(q, x) == best) out.push_back(std::move(q));
            return out;
          },
          [](const SmoothBody&) -> std::vector<Vec> {
            throw BackendError("contact faces of smooth bodies are not computed");
          }},
      b);
}

ConvexHull hull_facets(const SymmetricPolytope& p) {
  if (!p.full_dimensional()) throw DegenerateInput("polytope is lower-dimensional");
  std::vector<Vec> pts = p.points();
  return convex_hull(pts);
}

Scalar polytope_volume(const SymmetricPolytope& p) {
  if (!p.full_dimensional()) throw DegenerateInput("polytope is lower-dimensional");
  std::vector<Vec> pts = p.points();
  return hull_volume(pts);
}

std::vector<Vec> body_vertices(const Body& b) {
  return std::visit(
      Overloaded{[](const Zonotope& z) {
                   std::vector<Vec> pts = dedupe(z.sign_vertices());
                   if (!z.full_dimensional()) return pts;
                   ConvexHull h = convex_hull(pts);
                   std::vector<Vec> out;
                   for (std::size_t i : h.vertices) out.push_back(pts[i]);
                   return out;
                 },
                 [](const SymmetricPolytope& p) {
                   std::vector<Vec> pts = p.points();
                   if (!p.full_dimensional()) return pts;
                   ConvexHull h = convex_hull(pts);
                   std::vector<Vec> out;
                   for (std::size_t i : h.vertices) out.push_back(pts[i]);
                   return out;
                 },
                 [](const SmoothBody&) -> std::vector<Vec> { throw BackendError("smooth bodies have no vertices"); }},
      b);
}

GeoMeanBounds geomean_volume_bounds(const Body& k, const Body& l, const Scalar& t, std::span<const Vec> directions) {
  if (t.sign() < 0 || t > Scalar(1)) throw std::invalid_argument("geomean: t must lie in [0, 1]");
  const std::size_t n = body_dim(k);
  if (body_dim(l) != n) throw std::invalid_argument("geomean: dimension mismatch");
  const mpq_class& tq = t.rational();

  std::vector<Vec> dirs;
  for (const auto& w : directions) {
    if (is_zero(w)) continue;
    Vec p = primitive_direction(w).direction;
    if (!contains_vec(dirs, p)) dirs.push_back(p);
    Vec m = -p;
    if (!contains_vec(dirs, m)) dirs.push_back(m);
  }

  const ConvexHull k_hull = convex_hull(body_vertices(k));
  const ConvexHull l_hull = convex_hull(body_vertices(l));

  // Largest alpha <= 1 with alpha * z in scale * body(hull).
  auto exact_alpha = [](const Vec& z, const ConvexHull& hull, const mpq_class& scale) {
    mpq_class alpha = 1;
    for (const auto& f : hull.facets) {
      mpq_class v = dot(f.normal, z).rational();
      if (sgn(v) <= 0) continue;
      mpq_class lim = scale * f.offset.rational() / v;
      if (lim < alpha) alpha = lim;
    }
    return alpha;
  };
  auto float_alpha = [n](const std::vector<double>& z, const ConvexHull& hull, double scale) {
    double alpha = 1.0;
    for (const auto& f : hull.facets) {
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) v += f.normal[i].to_double() * z[i];
      if (v <= 0.0) continue;
      alpha = std::min(alpha, scale * f.offset.to_double() / v);
    }
    return alpha;
  };

  GeoMeanBounds out;
  std::vector<Vec> dual_points;
  std::vector<Vec> inner;
  // Relative safety margin for inner points computed in floating point.
  const double shrink = 1.0 - 1e-9;

  for (const auto& w : dirs) {
    const mpq_class hk = support_eval(k, w).rational();
    const mpq_class hl = support_eval(l, w).rational();
    if (sgn(hk) <= 0 || sgn(hl) <= 0) throw DegenerateInput("geomean: bodies must contain the origin in their interior");
    const mpq_class ratio = hl / hk;

    // Outer halfspace <z, w> <= g(w), g rounded up when irrational.
    const std::optional<mpq_class> ratio_t = exact_power(ratio, tq);
    mpq_class g;
    if (ratio_t) {
      g = hk * *ratio_t;
    } else {
      double gd = std::exp((1.0 - tq.get_d()) * std::log(hk.get_d()) + tq.get_d() * std::log(hl.get_d()));
      g = mpq_class(gd * (1.0 + 1e-12));
    }
    dual_points.push_back(Scalar(mpq_class(1 / g)) * w);

    // Inner points: lambda^t face_K(w) and lambda^(t-1) face_L(w) with
    // lambda = h_L(w) / h_K(w), each pulled toward the origin until it also
    // lies in the other scaled body.
    if (ratio_t) {
      const mpq_class s_k = *ratio_t;
      const mpq_class s_l = *ratio_t / ratio;
      for (const auto& v : contact_face(k, w)) {
        Vec z = Scalar(s_k) * v;
        inner.push_back(Scalar(exact_alpha(z, l_hull, s_l)) * z);
      }
      for (const auto& v : contact_face(l, w)) {
        Vec z = Scalar(s_l) * v;
        inner.push_back(Scalar(exact_alpha(z, k_hull, s_k)) * z);
      }
    } else {
      const double lambda = ratio.get_d();
      const double s_k = std::pow(lambda, tq.get_d());
      const double s_l = std::pow(lambda, tq.get_d() - 1.0);
      auto emit = [&](const Vec& v, double scale, const ConvexHull& other, double other_scale) {
        std::vector<double> z = to_doubles(v);
        for (double& c : z) c *= scale;
        const Scalar factor(mpq_class(float_alpha(z, other, other_scale) * scale * shrink));
        inner.push_back(factor * v);
      };
      for (const auto& v : contact_face(k, w)) emit(v, s_k, l_hull, s_l);
      for (const auto& v : contact_face(l, w)) emit(v, s_l, k_hull, s_k);
    }
  }

  out.halfspaces = dual_points.size();
  if (affine_dimension(dual_points) != static_cast<int>(n))
    throw DegenerateInput("geomean: sampled halfspace intersection is unbounded");
  const ConvexHull dual = convex_hull(dual_points);
  std::vector<Vec> outer_vertices;
  for (const auto& f : dual.facets) {
    if (f.offset.sign() <= 0) throw DegenerateInput("geomean: sampled halfspace intersection is unbounded");
    outer_vertices.push_back(Scalar(mpq_class(1 / f.offset.rational())) * f.normal);
  }
  out.upper = hull_volume(outer_vertices);

  inner = dedupe(std::move(inner));
  out.inner_points = inner.size();
  out.lower = affine_dimension(inner) == static_cast<int>(n) ? hull_volume(inner) : Scalar(0);
  return out;
}

std::vector<Vec> lattice_directions(std::size_t dim, int radius) {
  std::vector<Vec> out;
  std::vector<long> c(dim, -radius);
  while (true) {
    long g = 0;
    for (long x : c) g = std::gcd(g, std::labs(x));
    auto first = std::find_if(c.begin(), c.end(), [](long x) { return x != 0; });
    if (g == 1 && first != c.end() && *first > 0) {
      Vec v;
      for (long x : c) v.emplace_back(x);
      out.push_back(std::move(v));
    }
    std::size_t i = 0;
    while (i < dim && c[i] == radius) c[i++] = -radius;
    if (i == dim) break;
    ++c[i];
  }
  return out;
}

}  // namespace logbm
