#include "logbm/mixedvol.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace logbm {

namespace {

Scalar factorial(std::size_t k) {
  mpz_class f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<unsigned long>(i);
  return Scalar(f);
}

Scalar power_of_two(std::size_t k) {
  mpz_class p = 1;
  p <<= static_cast<mp_bitcnt_t>(k);
  return Scalar(p);
}

// Identical zonotope slots collapse into one group with a count.
struct Group {
  const Zonotope* z;
  std::size_t count;
};

std::vector<Group> group_slots(const std::vector<const Zonotope*>& zs) {
  std::vector<Group> groups;
  for (const Zonotope* z : zs) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return *g.z == *z; });
    if (it != groups.end()) {
      ++it->count;
    } else {
      groups.push_back({z, 1});
    }
  }
  return groups;
}

// Visits every choice of one generator per slot. Inside a group of k identical
// slots only sets of k distinct generators are visited (a repeated generator
// gives a dependent tuple), each standing for k! ordered choices; `weight`
// includes that multiplicity and the product of the generator weights.
class TupleWalker {
 public:
  explicit TupleWalker(std::vector<Group> groups) : groups_(std::move(groups)) {}

  template <class F>
  void run(F&& visit) {
    dirs_.clear();
    walk(0, 0, 0, Scalar(1), visit);
  }

 private:
  template <class F>
  void walk(std::size_t g, std::size_t taken, std::size_t start, const Scalar& weight, F& visit) {
    if (g == groups_.size()) {
      visit(std::as_const(dirs_), weight);
      return;
    }
    const Group& grp = groups_[g];
    if (taken == grp.count) {
      walk(g + 1, 0, 0, weight * factorial(grp.count), visit);
      return;
    }
    const auto& gens = grp.z->generators();
    std::size_t left = grp.count - taken;
    for (std::size_t i = start; i + left <= gens.size(); ++i) {
      dirs_.push_back(gens[i].direction);
      walk(g, taken + 1, i + 1, weight * gens[i].weight, visit);
      dirs_.pop_back();
    }
  }

  std::vector<Group> groups_;
  std::vector<Vec> dirs_;
};

bool slot_exact(const Slot& s) {
  if (const auto* z = std::get_if<Zonotope>(&s)) return z->is_exact();
  const auto& p = std::get<SymmetricPolytope>(s);
  return std::all_of(p.vertex_pairs().begin(), p.vertex_pairs().end(), [](const Vec& v) { return all_exact(v); });
}

Vec exact_vec(const Vec& v) {
  Vec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.is_exact() ? x : Scalar::exact_from_double(x.to_double()));
  return out;
}

Slot exact_slot(const Slot& s) {
  if (const auto* z = std::get_if<Zonotope>(&s)) {
    std::vector<Generator> gens;
    for (const auto& g : z->generators()) {
      gens.push_back({exact_vec(g.direction), exact_vec({g.weight}).front()});
    }
    return Zonotope(z->dim(), std::move(gens));
  }
  const auto& p = std::get<SymmetricPolytope>(s);
  std::vector<Vec> pairs;
  for (const auto& v : p.vertex_pairs()) pairs.push_back(exact_vec(v));
  return SymmetricPolytope(p.dim(), std::move(pairs));
}

std::size_t slot_dim(const Slot& s) {
  return std::visit([](const auto& b) { return b.dim(); }, s);
}

Scalar slot_support(const Slot& s, const Vec& x) {
  return std::visit([&](const auto& b) { return support_eval(b, x); }, s);
}

void check_dims(std::span<const Slot> slots, std::size_t n) {
  for (const auto& s : slots) {
    if (slot_dim(s) != n) throw std::invalid_argument("slot dimension does not match the ambient dimension");
  }
}

// Atoms of the measure of one polytope against n-2 zonotope slots. Each tuple
// of generators cuts out the 2-plane E orthogonal to it; the polygon P|E
// contributes one atom per edge.
void polytope_atoms(const SymmetricPolytope& p, const std::vector<const Zonotope*>& zs, AtomicSphericalMeasure& out) {
  const std::size_t n = p.dim();
  const std::vector<Vec> pts = p.points();
  const Scalar base = power_of_two(n - 2) / factorial(n - 1);
  TupleWalker walker(group_slots(zs));
  walker.run([&](const std::vector<Vec>& dirs, const Scalar& weight) {
    std::vector<Vec> basis = orthogonal_complement(Matrix(dirs.begin(), dirs.end()), n);
    if (basis.size() != 2) return;
    std::vector<Vec> proj;
    proj.reserve(pts.size());
    for (const auto& q : pts) proj.push_back({dot(basis[0], q), dot(basis[1], q)});
    const Scalar c = base * weight;

    auto edge_atom = [&](std::size_t a, std::size_t b) {
      std::vector<Vec> vs = dirs;
      vs.push_back(pts[a] - pts[b]);
      Vec w = generalized_cross(vs);
      if (dot(w, pts[a]).sign() < 0) w = -w;
      return w;
    };
    auto extremes = [&](const std::vector<std::size_t>& idx, const Vec& t) {
      std::size_t hi = idx.front(), lo = idx.front();
      for (std::size_t i : idx) {
        if (dot(t, proj[i]) > dot(t, proj[hi])) hi = i;
        if (dot(t, proj[i]) < dot(t, proj[lo])) lo = i;
      }
      return std::pair{hi, lo};
    };

    int adim = affine_dimension(proj);
    if (adim == 2) {
      ConvexHull h = convex_hull(proj);
      for (const auto& f : h.facets) {
        Vec t = {-f.normal[1], f.normal[0]};
        auto [a, b] = extremes(f.points, t);
        out.add(edge_atom(a, b), c);
      }
    } else if (adim == 1) {
      // A flat polygon: both sides of the segment are edges.
      std::vector<std::size_t> idx(proj.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::size_t far = 0;
      for (std::size_t i = 1; i < proj.size(); ++i)
        if (!is_zero(proj[i] - proj[0])) far = i;
      auto [a, b] = extremes(idx, proj[far] - proj[0]);
      Vec w = edge_atom(a, b);
      if (is_zero(w)) return;
      out.add(w, c);
      out.add(-w, c);
    }
  });
}

AtomicSphericalMeasure to_float(const AtomicSphericalMeasure& m) {
  AtomicSphericalMeasure out(m.dim(), m.encoding());
  for (const auto& a : m.atoms()) out.add(to_backend(a.w, Backend::kFloat), a.c.to_backend(Backend::kFloat));
  return out;
}

}  // namespace

void AtomicSphericalMeasure::add(const Vec& w, const Scalar& c) {
  if (w.size() != dim_) throw std::invalid_argument("measure: atom dimension mismatch");
  if (c.is_zero()) return;
  Direction d = primitive_direction(w);
  Scalar mass = encoding_ == MassEncoding::kScaled ? c * d.scale : c;
  auto [it, inserted] = atoms_.try_emplace(std::move(d.direction), mass);
  if (!inserted) it->second += mass;
}

std::vector<Atom> AtomicSphericalMeasure::atoms() const {
  std::vector<Atom> out;
  for (const auto& [w, c] : atoms_)
    if (!c.is_zero()) out.push_back({w, c});
  return out;
}

std::size_t AtomicSphericalMeasure::size() const {
  return static_cast<std::size_t>(std::count_if(atoms_.begin(), atoms_.end(), [](const auto& kv) { return !kv.second.is_zero(); }));
}

bool AtomicSphericalMeasure::is_even() const {
  for (const auto& [w, c] : atoms_) {
    if (c.is_zero()) continue;
    auto it = atoms_.find(-w);
    if (it == atoms_.end() || !(it->second == c)) return false;
  }
  return true;
}

Scalar AtomicSphericalMeasure::integrate(const std::function<Scalar(const Vec&)>& g) const {
  if (encoding_ != MassEncoding::kScaled) throw std::logic_error("integrate: needs a scaled-encoding measure");
  Scalar total(0);
  for (const auto& [w, c] : atoms_) total += c * g(w);
  return total;
}

Scalar AtomicSphericalMeasure::total_mass() const {
  Scalar total(0);
  if (encoding_ == MassEncoding::kDirect) {
    for (const auto& [w, c] : atoms_) total += c;
    return total;
  }
  bool exact = true;
  double approx = 0;
  for (const auto& [w, c] : atoms_) {
    Scalar len2 = norm2(w);
    if (exact && len2.is_exact() && c.is_exact()) {
      if (auto r = exact_root(len2.rational(), 2)) {
        total += c * Scalar(*r);
      } else {
        exact = false;
      }
    } else {
      exact = false;
    }
    approx += c.to_double() * std::sqrt(len2.to_double());
  }
  return exact ? total : Scalar::from_double(approx);
}

AtomicSphericalMeasure AtomicSphericalMeasure::weighted(const std::function<Scalar(const Vec&)>& g) const {
  if (encoding_ != MassEncoding::kScaled) throw std::logic_error("weighted: needs a scaled-encoding measure");
  AtomicSphericalMeasure out(dim_, MassEncoding::kDirect);
  for (const auto& [w, c] : atoms_) out.add(w, c * g(w));
  return out;
}

AtomicSphericalMeasure& AtomicSphericalMeasure::operator+=(const AtomicSphericalMeasure& o) {
  if (o.dim_ != dim_ || o.encoding_ != encoding_) throw std::invalid_argument("measure: incompatible sum");
  for (const auto& [w, c] : o.atoms_) {
    auto [it, inserted] = atoms_.try_emplace(w, c);
    if (!inserted) it->second += c;
  }
  return *this;
}

AtomicSphericalMeasure AtomicSphericalMeasure::scaled(const Scalar& s) const {
  AtomicSphericalMeasure out(dim_, encoding_);
  for (const auto& [w, c] : atoms_) out.atoms_.emplace(w, c * s);
  return out;
}

bool operator==(const AtomicSphericalMeasure& a, const AtomicSphericalMeasure& b) {
  if (a.dim_ != b.dim_ || a.encoding_ != b.encoding_) return false;
  auto x = a.atoms(), y = b.atoms();
  return std::equal(x.begin(), x.end(), y.begin(), y.end(),
                    [](const Atom& p, const Atom& q) { return p.w == q.w && p.c == q.c; });
}

AtomicSphericalMeasure mixed_area_measure(std::span<const Slot> slots) {
  const std::size_t n = slots.size() + 1;
  check_dims(slots, n);
  std::vector<const Zonotope*> zs;
  const SymmetricPolytope* poly = nullptr;
  for (const auto& s : slots) {
    if (const auto* z = std::get_if<Zonotope>(&s)) {
      zs.push_back(z);
    } else if (poly) {
      throw UnsupportedCombination("mixed area measure: at most one polytope slot is supported");
    } else {
      poly = &std::get<SymmetricPolytope>(s);
    }
  }

  if (poly) {
    bool exact = std::all_of(slots.begin(), slots.end(), slot_exact);
    if (!exact) {
      std::vector<Slot> ex;
      for (const auto& s : slots) ex.push_back(exact_slot(s));
      return to_float(mixed_area_measure(ex));
    }
    AtomicSphericalMeasure out(n);
    polytope_atoms(*poly, zs, out);
    return out;
  }

  AtomicSphericalMeasure out(n);
  const Scalar base = power_of_two(n - 1) / factorial(n - 1);
  TupleWalker walker(group_slots(zs));
  walker.run([&](const std::vector<Vec>& dirs, const Scalar& weight) {
    Vec w = generalized_cross(dirs);
    if (is_zero(w)) return;
    out.add(w, base * weight);
    out.add(-w, base * weight);
  });
  return out;
}

Scalar mixed_volume(std::span<const Slot> slots) {
  const std::size_t n = slots.size();
  if (n == 0) throw std::invalid_argument("mixed volume: no slots");
  check_dims(slots, n);
  std::vector<std::size_t> polys;
  for (std::size_t i = 0; i < n; ++i)
    if (std::holds_alternative<SymmetricPolytope>(slots[i])) polys.push_back(i);
  if (polys.size() > 2) throw UnsupportedCombination("mixed volume: at most two polytope slots are supported");

  if (polys.empty()) {
    std::vector<const Zonotope*> zs;
    for (const auto& s : slots) zs.push_back(&std::get<Zonotope>(s));
    Scalar sum(0);
    TupleWalker walker(group_slots(zs));
    walker.run([&](const std::vector<Vec>& dirs, const Scalar& weight) {
      Scalar d = det(dirs);
      if (!d.is_zero()) sum += weight * abs(d);
    });
    return power_of_two(n) / factorial(n) * sum;
  }

  std::size_t first = polys.front();
  std::vector<Slot> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (i != first) rest.push_back(slots[i]);
  AtomicSphericalMeasure s = mixed_area_measure(rest);
  const Slot& p = slots[first];
  Scalar integral = s.integrate([&](const Vec& w) { return slot_support(p, w); });
  return integral / Scalar(static_cast<long>(n));
}

Scalar zonotope_volume(const Zonotope& z) {
  std::vector<Slot> slots(z.dim(), z);
  return mixed_volume(slots);
}

Scalar body_volume(const Body& b) {
  if (const auto* z = std::get_if<Zonotope>(&b)) return zonotope_volume(*z);
  if (const auto* p = std::get_if<SymmetricPolytope>(&b)) return polytope_volume(*p);
  throw UnsupportedCombination("volume: smooth bodies are not supported by the exact engine");
}

Slot to_slot(const Body& b) {
  if (const auto* z = std::get_if<Zonotope>(&b)) return *z;
  if (const auto* p = std::get_if<SymmetricPolytope>(&b)) return *p;
  throw UnsupportedCombination("smooth bodies cannot be used as mixed volume slots");
}

AtomicSphericalMeasure cone_volume_measure(const Zonotope& k) {
  if (!k.full_dimensional()) throw std::invalid_argument("cone volume measure: body is not full-dimensional");
  const std::size_t n = k.dim();
  std::vector<Slot> slots(n - 1, k);
  const Scalar inv_n = Scalar(1) / Scalar(static_cast<long>(n));
  return mixed_area_measure(slots).weighted([&](const Vec& w) { return inv_n * support_eval(k, w); });
}

ProjectionCheck projection_identity_check(const Vec& u, std::span<const Slot> slots) {
  const std::size_t n = u.size();
  if (is_zero(u)) throw std::invalid_argument("projection check: u must be nonzero");
  if (slots.size() + 1 != n) throw std::invalid_argument("projection check: expected n-1 slots");
  check_dims(slots, n);
  std::vector<const Zonotope*> zs;
  for (const auto& s : slots) {
    const auto* z = std::get_if<Zonotope>(&s);
    if (!z) throw UnsupportedCombination("projection check: slots must be zonotopes");
    zs.push_back(z);
  }

  ProjectionCheck out;
  std::vector<Slot> full;
  full.emplace_back(Zonotope::segment(u));
  full.insert(full.end(), slots.begin(), slots.end());
  out.lhs = Scalar(static_cast<long>(n)) / Scalar(2) * mixed_volume(full);

  // |u| vol(P d_1, ..., P d_{n-1}) = sqrt(|u|^2 Gram(P d_i)).
  const Scalar u2 = norm2(u);
  bool exact = all_exact(u) && std::all_of(zs.begin(), zs.end(), [](const Zonotope* z) { return z->is_exact(); });
  Scalar sum(0);
  double fsum = 0;
  TupleWalker walker(group_slots(zs));
  walker.run([&](const std::vector<Vec>& dirs, const Scalar& weight) {
    std::vector<Vec> proj;
    for (const auto& d : dirs) proj.push_back(d - (dot(d, u) / u2) * u);
    Scalar g = u2 * gram_determinant(proj);
    if (g.sign() <= 0) return;
    if (exact) {
      auto r = exact_root(g.rational(), 2);
      if (r) {
        sum += weight * Scalar(*r);
        fsum += (weight * Scalar(*r)).to_double();
        return;
      }
      exact = false;
    }
    fsum += weight.to_double() * std::sqrt(g.to_double());
  });
  const Scalar base = power_of_two(n - 1) / factorial(n - 1);
  out.rhs = exact ? base * sum : Scalar::from_double(base.to_double() * fsum);
  if (exact && out.lhs.is_exact()) {
    out.equal = out.lhs == out.rhs;
  } else {
    double scale = std::max({1.0, std::abs(out.lhs.to_double()), std::abs(out.rhs.to_double())});
    out.equal = std::abs(out.lhs.to_double() - out.rhs.to_double()) <= 1e-12 * scale;
  }
  return out;
}

}  // namespace logbm
