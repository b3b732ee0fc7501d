#include "logbm/hull.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace logbm {

namespace {

using i128 = __int128;

mpz_class to_mpz(const mpz_class& v) { return v; }

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & ~0UL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

int sign_of(const mpz_class& v) { return sgn(v); }
int sign_of(i128 v) { return (v > 0) - (v < 0); }

mpz_class gcd_of(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

i128 gcd_of(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

template <class T>
using IPoint = std::vector<T>;

// Determinant by cofactor expansion along the first row. Division free, so it
// is safe for 128-bit entries in the dimensions where that backend is used.
template <class T>
T cofactor_det(const std::vector<IPoint<T>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return T(1);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  T total = 0;
  std::vector<IPoint<T>> minor(n - 1, IPoint<T>(n - 1));
  for (std::size_t c = 0; c < n; ++c) {
    if (sign_of(m[0][c]) == 0) continue;
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) minor[r - 1][cc++] = m[r][k];
    }
    T term = m[0][c] * cofactor_det(minor);
    if (c % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

template <class T>
IPoint<T> cross(const std::vector<IPoint<T>>& vs, std::size_t d) {
  IPoint<T> w(d);
  std::vector<IPoint<T>> minor(d - 1, IPoint<T>(d - 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t r = 0; r + 1 < d; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < d; ++c)
        if (c != i) minor[r][cc++] = vs[r][c];
    }
    T m = cofactor_det(minor);
    w[i] = ((d - 1 + i) % 2 == 0) ? m : T(-m);
  }
  return w;
}

template <class T>
T idot(const IPoint<T>& a, const IPoint<T>& b) {
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
IPoint<T> isub(const IPoint<T>& a, const IPoint<T>& b) {
  IPoint<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class T>
void make_primitive(IPoint<T>& v) {
  T g = 0;
  for (const auto& x : v) g = gcd_of(g, x);
  if (sign_of(g) == 0) return;
  for (auto& x : v) x /= g;
}

template <class T>
std::size_t int_rank(const std::vector<IPoint<T>>& rows) {
  if (rows.empty()) return 0;
  std::vector<std::vector<mpq_class>> a;
  for (const auto& r : rows) {
    std::vector<mpq_class> row;
    for (const auto& x : r) row.emplace_back(to_mpz(x));
    a.push_back(std::move(row));
  }
  const std::size_t cols = a.front().size();
  std::size_t rk = 0;
  for (std::size_t c = 0; c < cols && rk < a.size(); ++c) {
    std::size_t p = rk;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rk]);
    for (std::size_t i = rk + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[rk][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rk][j];
    }
    ++rk;
  }
  return rk;
}

template <class T>
struct FacetT {
  IPoint<T> normal;
  T offset;
  std::vector<std::size_t> members;  // indices into the point list handed to the solver
};

template <class T>
class GiftWrap {
 public:
  GiftWrap(const std::vector<IPoint<T>>& pts, std::size_t d) : pts_(pts), d_(d) {}

  std::vector<FacetT<T>> facets() {
    std::vector<std::size_t> all(pts_.size());
    std::iota(all.begin(), all.end(), 0);
    if (d_ == 1) return segment_facets(all);

    std::vector<FacetT<T>> out;
    std::map<IPoint<T>, std::size_t> seen;
    std::deque<std::size_t> queue;
    auto add = [&](FacetT<T> f) {
      if (seen.emplace(f.normal, out.size()).second) {
        queue.push_back(out.size());
        out.push_back(std::move(f));
      }
    };
    add(initial_facet());
    while (!queue.empty()) {
      const std::size_t fi = queue.front();
      queue.pop_front();
      const FacetT<T> facet = out[fi];
      for (const auto& ridge : ridges_of(facet)) add(wrap(ridge, &facet));
    }
    return out;
  }

  // Facets of `members` viewed as a full-dimensional set inside the hyperplane
  // of `facet`, reported as index sets into pts_.
  std::vector<std::vector<std::size_t>> ridges_of(const FacetT<T>& facet) const {
    std::size_t drop = 0;
    while (sign_of(facet.normal[drop]) == 0) ++drop;
    std::vector<IPoint<T>> projected;
    projected.reserve(facet.members.size());
    for (std::size_t idx : facet.members) projected.push_back(drop_coordinate(pts_[idx], drop));
    GiftWrap<T> sub(projected, d_ - 1);
    std::vector<std::vector<std::size_t>> ridges;
    for (auto& f : sub.facets()) {
      std::vector<std::size_t> ridge;
      for (std::size_t local : f.members) ridge.push_back(facet.members[local]);
      ridges.push_back(std::move(ridge));
    }
    return ridges;
  }

  static IPoint<T> drop_coordinate(const IPoint<T>& p, std::size_t k) {
    IPoint<T> q;
    q.reserve(p.size() - 1);
    for (std::size_t i = 0; i < p.size(); ++i)
      if (i != k) q.push_back(p[i]);
    return q;
  }

 private:
  std::vector<FacetT<T>> segment_facets(const std::vector<std::size_t>& idx) const {
    T lo = pts_[idx.front()][0];
    T hi = lo;
    for (std::size_t i : idx) {
      lo = std::min(lo, pts_[i][0]);
      hi = std::max(hi, pts_[i][0]);
    }
    if (lo == hi) throw DegenerateInput("convex hull: point set is lower-dimensional");
    FacetT<T> a{{T(-1)}, T(-lo), {}};
    FacetT<T> b{{T(1)}, hi, {}};
    for (std::size_t i : idx) {
      if (pts_[i][0] == lo) a.members.push_back(i);
      if (pts_[i][0] == hi) b.members.push_back(i);
    }
    return {a, b};
  }

  FacetT<T> face_of(IPoint<T> normal) const {
    make_primitive(normal);
    FacetT<T> f{std::move(normal), T(0), {}};
    bool first = true;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      T v = idot(f.normal, pts_[i]);
      if (first || v > f.offset) {
        f.offset = v;
        f.members.clear();
        first = false;
      }
      if (v == f.offset) f.members.push_back(i);
    }
    return f;
  }

  int face_dimension(const std::vector<std::size_t>& members) const {
    std::vector<IPoint<T>> diffs;
    for (std::size_t k = 1; k < members.size(); ++k) diffs.push_back(isub(pts_[members[k]], pts_[members[0]]));
    return static_cast<int>(int_rank(diffs));
  }

  // Lifts a facet of the projection forgetting the last coordinate. The lifted
  // hyperplane supports the set in a facet or in a ridge; a ridge is wrapped.
  FacetT<T> initial_facet() const {
    IPoint<T> normal(d_, T(0));
    if (d_ == 2) {
      normal[0] = 1;
    } else {
      std::vector<IPoint<T>> projected;
      projected.reserve(pts_.size());
      for (const auto& p : pts_) projected.push_back(drop_coordinate(p, d_ - 1));
      GiftWrap<T> sub(projected, d_ - 1);
      FacetT<T> g = sub.initial_facet();
      for (std::size_t i = 0; i + 1 < d_; ++i) normal[i] = g.normal[i];
    }
    FacetT<T> face = face_of(normal);
    const int dim = face_dimension(face.members);
    if (dim == static_cast<int>(d_) - 1) return face;
    if (dim != static_cast<int>(d_) - 2) throw DegenerateInput("convex hull: point set is lower-dimensional");
    return wrap(face.members, nullptr);
  }

  // Rotates a hyperplane about the ridge until it supports every point. With
  // `from` given the rotation starts at that facet and ends at its neighbour
  // across the ridge.
  FacetT<T> wrap(const std::vector<std::size_t>& ridge, const FacetT<T>* from) const {
    const IPoint<T>& r0 = pts_[ridge.front()];
    std::vector<IPoint<T>> basis;
    for (std::size_t k = 1; k < ridge.size() && basis.size() + 2 < d_; ++k) {
      basis.push_back(isub(pts_[ridge[k]], r0));
      if (int_rank(basis) < basis.size()) basis.pop_back();
    }
    if (basis.size() + 2 != d_) throw DegenerateInput("convex hull: ridge of wrong dimension");

    auto is_ridge = [&](std::size_t i) { return std::find(ridge.begin(), ridge.end(), i) != ridge.end(); };
    auto normal_through = [&](std::size_t c) {
      basis.push_back(isub(pts_[c], r0));
      IPoint<T> n = cross(basis, d_);
      basis.pop_back();
      return n;
    };

    std::size_t c = pts_.size();
    int orientation = 1;
    if (from != nullptr) {
      for (std::size_t i : from->members) {
        if (!is_ridge(i)) {
          c = i;
          break;
        }
      }
      if (c == pts_.size()) throw DegenerateInput("convex hull: facet equals its ridge");
      if (sign_of(idot(normal_through(c), from->normal)) > 0) orientation = -1;
    } else {
      for (std::size_t i = 0; i < pts_.size(); ++i) {
        if (!is_ridge(i)) {
          c = i;
          break;
        }
      }
    }
    auto oriented = [&](std::size_t i) {
      IPoint<T> n = normal_through(i);
      if (orientation < 0)
        for (auto& x : n) x = -x;
      return n;
    };

    IPoint<T> n = oriented(c);
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (sign_of(idot(n, isub(pts_[i], r0))) > 0) {
        c = i;
        n = oriented(c);
      }
    }
    FacetT<T> f = face_of(n);
    if (from == nullptr && face_dimension(f.members) != static_cast<int>(d_) - 1)
      throw DegenerateInput("convex hull: wrapping did not reach a facet");
    return f;
  }

  const std::vector<IPoint<T>>& pts_;
  std::size_t d_;
};

// Simplices (as index tuples of size d + 1) triangulating the hull of
// `members`, coning from the first member over facets that avoid it.
template <class T>
void triangulate(const std::vector<IPoint<T>>& pts, std::size_t d, const std::vector<std::size_t>& members,
                 std::vector<std::vector<std::size_t>>& out) {
  std::vector<IPoint<T>> local;
  local.reserve(members.size());
  for (std::size_t i : members) local.push_back(pts[i]);
  if (d == 1) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t k = 1; k < local.size(); ++k) {
      if (local[k][0] < local[lo][0]) lo = k;
      if (local[k][0] > local[hi][0]) hi = k;
    }
    out.push_back({members[lo], members[hi]});
    return;
  }
  GiftWrap<T> wrapper(local, d);
  const auto facets = wrapper.facets();
  const std::size_t apex = 0;
  for (const auto& f : facets) {
    if (std::find(f.members.begin(), f.members.end(), apex) != f.members.end()) continue;
    std::size_t drop = 0;
    while (sign_of(f.normal[drop]) == 0) ++drop;
    std::vector<IPoint<T>> projected;
    for (std::size_t local_idx : f.members) projected.push_back(GiftWrap<T>::drop_coordinate(local[local_idx], drop));
    std::vector<std::size_t> sub_members(f.members.size());
    std::iota(sub_members.begin(), sub_members.end(), 0);
    std::vector<std::vector<std::size_t>> sub;
    triangulate(projected, d - 1, sub_members, sub);
    for (auto& simplex : sub) {
      std::vector<std::size_t> s;
      s.reserve(d + 1);
      s.push_back(members[apex]);
      for (std::size_t k : simplex) s.push_back(members[f.members[k]]);
      out.push_back(std::move(s));
    }
  }
}

struct IntegerPoints {
  mpz_class denominator;
  std::vector<IPoint<mpz_class>> points;
  bool fits_i128 = false;
};

IntegerPoints to_integer_points(std::span<const Vec> points) {
  if (points.empty()) throw DegenerateInput("convex hull: no points");
  const std::size_t d = points.front().size();
  IntegerPoints ip;
  ip.denominator = 1;
  for (const auto& p : points) {
    if (p.size() != d) throw std::invalid_argument("convex hull: mixed dimensions");
    for (const auto& s : p) mpz_lcm(ip.denominator.get_mpz_t(), ip.denominator.get_mpz_t(), s.rational().get_den_mpz_t());
  }
  mpz_class bound = 1;
  bound <<= 20;
  ip.fits_i128 = d <= 4;
  for (const auto& p : points) {
    IPoint<mpz_class> q;
    for (const auto& s : p) {
      mpq_class v = s.rational() * ip.denominator;
      q.push_back(v.get_num());
      if (abs(q.back()) >= bound) ip.fits_i128 = false;
    }
    ip.points.push_back(std::move(q));
  }
  return ip;
}

std::vector<IPoint<i128>> narrow(const std::vector<IPoint<mpz_class>>& pts) {
  std::vector<IPoint<i128>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    IPoint<i128> q;
    for (const auto& x : p) q.push_back(static_cast<i128>(x.get_si()));
    out.push_back(std::move(q));
  }
  return out;
}

template <class T>
ConvexHull build_hull(const std::vector<IPoint<T>>& pts, const mpz_class& denominator) {
  const std::size_t d = pts.front().size();
  GiftWrap<T> wrapper(pts, d);
  auto facets = wrapper.facets();
  ConvexHull hull;
  hull.dim = d;
  for (auto& f : facets) {
    HullFacet hf;
    for (const auto& x : f.normal) hf.normal.emplace_back(to_mpz(x));
    hf.offset = Scalar(mpq_class(to_mpz(f.offset), denominator));
    hf.points = std::move(f.members);
    hull.facets.push_back(std::move(hf));
  }
  std::sort(hull.facets.begin(), hull.facets.end(),
            [](const HullFacet& a, const HullFacet& b) { return lex_less(a.normal, b.normal); });

  std::vector<std::vector<std::size_t>> incident(pts.size());
  for (std::size_t fi = 0; fi < hull.facets.size(); ++fi)
    for (std::size_t p : hull.facets[fi].points) incident[p].push_back(fi);
  std::map<IPoint<T>, bool> taken;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (incident[p].size() < d) continue;
    Matrix normals;
    for (std::size_t fi : incident[p]) normals.push_back(hull.facets[fi].normal);
    if (rank(normals) < d) continue;
    if (taken.emplace(pts[p], true).second) hull.vertices.push_back(p);
  }
  return hull;
}

template <class T>
mpz_class simplex_volume_sum(const std::vector<IPoint<T>>& pts) {
  const std::size_t d = pts.front().size();
  std::vector<std::size_t> members(pts.size());
  std::iota(members.begin(), members.end(), 0);
  std::vector<std::vector<std::size_t>> simplices;
  triangulate(pts, d, members, simplices);
  mpz_class total = 0;
  std::vector<IPoint<T>> m(d);
  for (const auto& s : simplices) {
    for (std::size_t k = 0; k < d; ++k) m[k] = isub(pts[s[k + 1]], pts[s[0]]);
    total += abs(to_mpz(cofactor_det(m)));
  }
  return total;
}

}  // namespace

int affine_dimension(std::span<const Vec> points) {
  if (points.empty()) return -1;
  Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return static_cast<int>(rank(diffs));
}

ConvexHull convex_hull(std::span<const Vec> points) {
  IntegerPoints ip = to_integer_points(points);
  if (ip.points.front().empty()) throw DegenerateInput("convex hull: zero-dimensional space");
  if (affine_dimension(points) != static_cast<int>(ip.points.front().size()))
    throw DegenerateInput("convex hull: point set is lower-dimensional");
  if (ip.fits_i128) return build_hull(narrow(ip.points), ip.denominator);
  return build_hull(ip.points, ip.denominator);
}

Scalar hull_volume(std::span<const Vec> points) {
  IntegerPoints ip = to_integer_points(points);
  const std::size_t d = ip.points.front().size();
  if (affine_dimension(points) != static_cast<int>(d))
    throw DegenerateInput("hull volume: point set is lower-dimensional");
  mpz_class sum = ip.fits_i128 ? simplex_volume_sum(narrow(ip.points)) : simplex_volume_sum(ip.points);
  mpz_class denom = 1;
  for (std::size_t k = 2; k <= d; ++k) denom *= static_cast<unsigned long>(k);
  for (std::size_t k = 0; k < d; ++k) denom *= ip.denominator;
  return Scalar(mpq_class(sum, denom));
}

}  // namespace logbm
