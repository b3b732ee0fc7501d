#include "logbm/arith.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <utility>

namespace logbm {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

mpq_class parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (is_digit(c)) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    std::string_view rest = text.substr(pos);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) {
      throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
    }
    pos = text.size();
  }
  if (pos != text.size()) throw std::invalid_argument("trailing characters in '" + std::string(text) + "'");
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  long shift = exponent - frac_digits;
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  mpq_class result = shift >= 0 ? mpq_class(mantissa * power) : mpq_class(mantissa, power);
  result.canonicalize();
  return result;
}

mpz_class lcm_of_denominators(const Vec& row) {
  mpz_class l = 1;
  for (const auto& s : row) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.rational().get_den_mpz_t());
  }
  return l;
}

mpz_class bareiss_det(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Scalar float_det(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j].to_double();
  double d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(a[i][k]) > std::fabs(a[p][k])) p = i;
    if (a[p][k] == 0.0) return Scalar::from_double(0.0);
    if (p != k) {
      std::swap(a[p], a[k]);
      d = -d;
    }
    d *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return Scalar::from_double(d);
}

bool matrix_exact(const Matrix& m) {
  return std::all_of(m.begin(), m.end(), [](const Vec& r) { return all_exact(r); });
}

}  // namespace

Scalar Scalar::exact_from_double(double d) {
  if (!std::isfinite(d)) throw std::domain_error("non-finite value has no exact form");
  return Scalar(mpq_class(d));
}

Scalar Scalar::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Scalar(parse_decimal(text));
  mpq_class num = parse_decimal(text.substr(0, slash));
  mpq_class den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Scalar(mpq_class(num / den));
}

const mpq_class& Scalar::rational() const {
  if (!is_exact()) throw BackendError("exact value required, got float " + str());
  return std::get<mpq_class>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<mpq_class>(value_).get_d();
  return std::get<double>(value_);
}

Scalar Scalar::to_backend(Backend b) const {
  if (b == Backend::kFloat) return from_double(to_double());
  if (is_exact()) return *this;
  return exact_from_double(std::get<double>(value_));
}

int Scalar::sign() const {
  if (is_exact()) return sgn(std::get<mpq_class>(value_));
  double d = std::get<double>(value_);
  return (d > 0) - (d < 0);
}

bool Scalar::is_integer() const {
  return is_exact() && std::get<mpq_class>(value_).get_den() == 1;
}

std::string Scalar::str() const {
  if (is_exact()) {
    const auto& q = std::get<mpq_class>(value_);
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
  return std::string(buf, ptr);
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(mpq_class(-std::get<mpq_class>(value_)));
  return from_double(-std::get<double>(value_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  } else {
    value_ = to_double() + o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
  } else {
    value_ = to_double() - o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  } else {
    value_ = to_double() * o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    if (sgn(std::get<mpq_class>(o.value_)) == 0) throw std::domain_error("division by exact zero");
    std::get<mpq_class>(value_) /= std::get<mpq_class>(o.value_);
  } else {
    value_ = to_double() / o.to_double();
  }
  return *this;
}

int Scalar::compare(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return cmp(std::get<mpq_class>(a.value_), std::get<mpq_class>(b.value_));
  double x = a.to_double();
  double y = b.to_double();
  return (x > y) - (x < y);
}

Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }

Scalar pow(const Scalar& s, unsigned k) {
  Scalar r = s.is_exact() ? Scalar(1) : Scalar::from_double(1.0);
  for (unsigned i = 0; i < k; ++i) r *= s;
  return r;
}

Vec unit_vector(std::size_t dim, std::size_t i) {
  Vec v(dim);
  v.at(i) = 1;
  return v;
}

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Vec operator*(const Scalar& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

Scalar dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  Scalar r;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

Scalar norm2(const Vec& a) { return dot(a, a); }

bool is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool all_exact(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](const Scalar& s) { return s.is_exact(); });
}

Vec to_backend(const Vec& a, Backend b) {
  Vec r;
  r.reserve(a.size());
  for (const auto& s : a) r.push_back(s.to_backend(b));
  return r;
}

std::vector<double> to_doubles(const Vec& a) {
  std::vector<double> r;
  r.reserve(a.size());
  for (const auto& s : a) r.push_back(s.to_double());
  return r;
}

Scalar det(const Matrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("det: matrix is not square");
  if (n == 0) return 1;
  if (!matrix_exact(m)) return float_det(m);
  switch (n) {
    case 1:
      return m[0][0];
    case 2:
      return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    case 3:
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    default:
      break;
  }
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = lcm_of_denominators(m[i]);
    scale *= l;
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class v = m[i][j].rational() * l;
      a[i][j] = v.get_num();
    }
  }
  return Scalar(mpq_class(bareiss_det(std::move(a)), scale));
}

std::size_t rank(const Matrix& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  if (matrix_exact(rows)) {
    std::vector<std::vector<mpq_class>> a;
    for (const auto& r : rows) {
      std::vector<mpq_class> row;
      for (const auto& s : r) row.push_back(s.rational());
      a.push_back(std::move(row));
    }
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
  std::vector<std::vector<double>> a;
  double scale = 0.0;
  for (const auto& r : rows) {
    a.push_back(to_doubles(r));
    for (double x : a.back()) scale = std::max(scale, std::fabs(x));
  }
  const double tol = 1e-12 * std::max(scale, 1.0);
  std::size_t rk = 0;
  for (std::size_t c = 0; c < cols && rk < a.size(); ++c) {
    std::size_t p = rk;
    for (std::size_t i = rk + 1; i < a.size(); ++i)
      if (std::fabs(a[i][c]) > std::fabs(a[p][c])) p = i;
    if (std::fabs(a[p][c]) <= tol) continue;
    std::swap(a[p], a[rk]);
    for (std::size_t i = rk + 1; i < a.size(); ++i) {
      double f = a[i][c] / a[rk][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rk][j];
    }
    ++rk;
  }
  return rk;
}

Vec generalized_cross(std::span<const Vec> vs) {
  const std::size_t n = vs.size() + 1;
  for (const auto& v : vs)
    if (v.size() != n) throw std::invalid_argument("generalized_cross: need n-1 vectors in R^n");
  Vec w(n);
  Matrix minor(n - 1, Vec(n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r + 1 < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == i) continue;
        minor[r][cc++] = vs[r][c];
      }
    }
    Scalar m = det(minor);
    w[i] = ((n - 1 + i) % 2 == 0) ? m : -m;
  }
  return w;
}

Scalar gram_determinant(std::span<const Vec> vs) {
  Matrix g(vs.size(), Vec(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) g[i][j] = dot(vs[i], vs[j]);
  return det(g);
}

std::vector<Vec> orthogonal_complement(const Matrix& rows, std::size_t dim) {
  // Reduced row echelon form; one basis vector per free column.
  std::vector<std::vector<mpq_class>> a;
  for (const auto& r : rows) {
    if (r.size() != dim) throw std::invalid_argument("orthogonal_complement: dimension mismatch");
    std::vector<mpq_class> row;
    for (const auto& s : r) row.push_back(s.rational());
    a.push_back(std::move(row));
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t rk = 0;
  for (std::size_t c = 0; c < dim && rk < a.size(); ++c) {
    std::size_t p = rk;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rk]);
    mpq_class inv = 1 / a[rk][c];
    for (std::size_t j = 0; j < dim; ++j) a[rk][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == rk || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t j = 0; j < dim; ++j) a[i][j] -= f * a[rk][j];
    }
    pivot_cols.push_back(c);
    ++rk;
  }
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    Vec v(dim);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = Scalar(mpq_class(-a[r][free]));
    basis.push_back(primitive_direction(v).direction);
  }
  return basis;
}

Direction primitive_direction(const Vec& v) {
  if (is_zero(v)) throw std::invalid_argument("zero vector has no direction");
  if (!all_exact(v)) {
    double n = std::sqrt(norm2(to_backend(v, Backend::kFloat)).to_double());
    Vec d;
    for (const auto& s : v) d.push_back(Scalar::from_double(s.to_double() / n));
    return {std::move(d), Scalar::from_double(n)};
  }
  mpz_class l = lcm_of_denominators(v);
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& s : v) {
    mpq_class x = s.rational() * l;
    ints.push_back(x.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
  }
  Vec d;
  d.reserve(v.size());
  for (auto& x : ints) {
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    d.emplace_back(x);
  }
  return {std::move(d), Scalar(mpq_class(g, l))};
}

Direction canonical_direction(const Vec& v) {
  Direction d = primitive_direction(v);
  auto first = std::find_if(d.direction.begin(), d.direction.end(), [](const Scalar& s) { return !s.is_zero(); });
  if (first->sign() < 0) {
    d.direction = -d.direction;
    d.scale = -d.scale;
  }
  return d;
}

bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::optional<mpq_class> exact_root(const mpq_class& q, unsigned k) {
  if (sgn(q) < 0) throw std::domain_error("exact_root of a negative number");
  mpz_class num, den;
  if (mpz_root(num.get_mpz_t(), q.get_num_mpz_t(), k) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), q.get_den_mpz_t(), k) == 0) return std::nullopt;
  return mpq_class(num, den);
}

std::pair<mpq_class, mpq_class> root_bounds(const mpq_class& q, unsigned k, unsigned bits) {
  if (sgn(q) < 0) throw std::domain_error("root_bounds of a negative number");
  mpz_class scaled = q.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(k) * bits);
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  mpz_class r;
  mpz_root(r.get_mpz_t(), scaled.get_mpz_t(), k);
  mpz_class denom = 1;
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), bits);
  mpq_class lo(r, denom);
  mpq_class hi(r + 1, denom);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

}  // namespace logbm
