// Test-side helpers: seeded random instances and independent oracles.
#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "logbm/arith.hpp"
#include "logbm/bodies.hpp"
#include "logbm/hull.hpp"

namespace testing_support {

using logbm::Matrix;
using logbm::Scalar;
using logbm::Vec;

inline Scalar rnd_rational(std::mt19937_64& rng, int num_range, int den_max) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_max);
  return Scalar(mpq_class(num(rng), den(rng)));
}

inline Vec rnd_int_vec(std::mt19937_64& rng, std::size_t n, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(d(rng));
  return v;
}

inline Vec rnd_nonzero_vec(std::mt19937_64& rng, std::size_t n, int range) {
  Vec v;
  do {
    v = rnd_int_vec(rng, n, range);
  } while (logbm::is_zero(v));
  return v;
}

inline logbm::Zonotope rnd_zonotope(std::mt19937_64& rng, std::size_t n, std::size_t gens, int range,
                                    bool full = true) {
  std::uniform_int_distribution<int> w(1, 3);
  while (true) {
    std::vector<logbm::Generator> g;
    for (std::size_t i = 0; i < gens; ++i) g.push_back({rnd_nonzero_vec(rng, n, range), Scalar(mpq_class(w(rng), w(rng)))});
    logbm::Zonotope z(n, g);
    if (!full || z.full_dimensional()) return z;
  }
}

inline logbm::SymmetricPolytope rnd_polytope(std::mt19937_64& rng, std::size_t n, std::size_t pairs, int range) {
  while (true) {
    std::vector<Vec> v;
    for (std::size_t i = 0; i < pairs; ++i) v.push_back(rnd_nonzero_vec(rng, n, range));
    logbm::SymmetricPolytope p(n, v);
    if (p.full_dimensional()) return p;
  }
}

/// Determinant by Laplace expansion along the first row.
inline Scalar cofactor_det(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return Scalar(1);
  if (n == 1) return m[0][0];
  Scalar total(0);
  for (std::size_t j = 0; j < n; ++j) {
    Matrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      Vec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    Scalar term = m[0][j] * cofactor_det(minor);
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

inline Scalar gram_oracle(const std::vector<Vec>& vs) {
  Matrix g(vs.size(), Vec(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) g[i][j] = logbm::dot(vs[i], vs[j]);
  return cofactor_det(g);
}

/// Facet normals by testing every n-subset of points for a supporting
/// hyperplane. Returns primitive outward normals, sorted and unique.
inline std::vector<Vec> brute_force_facet_normals(const std::vector<Vec>& pts) {
  const std::size_t n = pts.front().size();
  std::vector<Vec> normals;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  auto next = [&]() {
    std::size_t i = n;
    while (i-- > 0) {
      if (idx[i] < pts.size() - n + i) {
        ++idx[i];
        for (std::size_t j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    std::vector<Vec> edges;
    for (std::size_t k = 1; k < n; ++k) edges.push_back(pts[idx[k]] - pts[idx[0]]);
    Vec w = logbm::generalized_cross(edges);
    if (logbm::is_zero(w)) continue;
    Scalar off = logbm::dot(w, pts[idx[0]]);
    bool above = false, below = false;
    for (const auto& p : pts) {
      int s = (logbm::dot(w, p) - off).sign();
      above |= s > 0;
      below |= s < 0;
    }
    if (above && below) continue;
    if (above) w = -w;
    Vec prim = logbm::primitive_direction(w).direction;
    if (std::find(normals.begin(), normals.end(), prim) == normals.end()) normals.push_back(prim);
  } while (next());
  std::sort(normals.begin(), normals.end(), logbm::lex_less);
  return normals;
}

/// All z = sum of one point from each set.
inline std::vector<Vec> minkowski_points(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  std::vector<Vec> out;
  for (const auto& p : a)
    for (const auto& q : b) {
      Vec s = p + q;
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
  return out;
}

/// Coefficients c_0..c_d of the polynomial through (x_i, y_i), exactly.
inline std::vector<Scalar> interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
  const std::size_t m = xs.size();
  std::vector<Scalar> coeffs(m, Scalar(0));
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Scalar> basis{Scalar(1)};
    Scalar denom(1);
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      std::vector<Scalar> next(basis.size() + 1, Scalar(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= xs[j] * basis[k];
      }
      basis = next;
      denom *= xs[i] - xs[j];
    }
    for (std::size_t k = 0; k < m; ++k) coeffs[k] += ys[i] * basis[k] / denom;
  }
  return coeffs;
}

inline Scalar binomial(std::size_t n, std::size_t k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Scalar(b);
}

/// V(L[k], K[n-k]) for every k, read off Vol(K + tL) sampled at t = 0..n
/// through exact hull volumes.
inline std::vector<Scalar> volume_polynomial_mixed_volumes(const std::vector<Vec>& k_pts,
                                                           const std::vector<Vec>& l_pts) {
  const std::size_t n = k_pts.front().size();
  std::vector<Scalar> xs, ys;
  for (std::size_t t = 0; t <= n; ++t) {
    std::vector<Vec> scaled_l;
    for (const auto& p : l_pts) scaled_l.push_back(Scalar(static_cast<long>(t)) * p);
    std::vector<Vec> sum = minkowski_points(k_pts, scaled_l);
    xs.emplace_back(static_cast<long>(t));
    ys.push_back(logbm::hull_volume(sum));
  }
  std::vector<Scalar> c = interpolate(xs, ys);
  for (std::size_t k = 0; k <= n; ++k) c[k] /= binomial(n, k);
  return c;
}

}  // namespace testing_support
