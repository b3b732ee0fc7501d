// Scalar arithmetic with two interchangeable backends (exact rationals and
// binary64), plus the small dense linear algebra the geometry code needs.

#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace logbm {

enum class Backend { kExact, kFloat };

/// Raised when an operation needs the exact backend but got a float, or the
/// other way round.
class BackendError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A number that is either an exact rational p/q (q > 0, gcd(|p|, q) = 1) or a
/// double. Mixing the two in one operation yields a double.
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  template <std::integral I>
  Scalar(I v) : value_(from_integral(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& q) : value_(q) { std::get<mpq_class>(value_).canonicalize(); }  // NOLINT
  Scalar(mpq_class&& q) : value_(std::move(q)) { std::get<mpq_class>(value_).canonicalize(); }  // NOLINT
  Scalar(const mpz_class& z) : value_(mpq_class(z)) {}  // NOLINT

  static Scalar from_double(double d) {
    Scalar s;
    s.value_ = d;
    return s;
  }
  /// Exact rational with the same value as `d` (every finite double is one).
  static Scalar exact_from_double(double d);
  /// Parses "p", "p/q", or a decimal literal ("0.25", "-1e-3") exactly.
  static Scalar parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
  Backend backend() const { return is_exact() ? Backend::kExact : Backend::kFloat; }
  const mpq_class& rational() const;
  double to_double() const;
  Scalar to_backend(Backend b) const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  /// "p/q" (or "p") for exact values; shortest round-trip decimal for floats.
  std::string str() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
  friend auto operator<=>(const Scalar& a, const Scalar& b) { return compare(a, b) <=> 0; }

 private:
  template <std::integral I>
  static mpq_class from_integral(I v) {
    if constexpr (std::is_signed_v<I>) {
      return mpq_class(static_cast<long>(v));
    } else {
      return mpq_class(static_cast<unsigned long>(v));
    }
  }
  static int compare(const Scalar& a, const Scalar& b);

  std::variant<mpq_class, double> value_;
};

Scalar abs(const Scalar& s);
Scalar pow(const Scalar& s, unsigned k);

using Vec = std::vector<Scalar>;
using Matrix = std::vector<Vec>;  // row-major, rows are Vecs

Vec unit_vector(std::size_t dim, std::size_t i);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(const Scalar& s, const Vec& a);
Scalar dot(const Vec& a, const Vec& b);
Scalar norm2(const Vec& a);
bool is_zero(const Vec& a);
bool all_exact(const Vec& a);
Vec to_backend(const Vec& a, Backend b);
std::vector<double> to_doubles(const Vec& a);

/// Determinant. Exact matrices are scaled row-wise to integers and reduced by
/// Bareiss elimination (closed forms for dim <= 3); float matrices use
/// partially pivoted Gaussian elimination.
Scalar det(const Matrix& m);

/// Rank of the row set.
std::size_t rank(const Matrix& rows);

/// For n-1 vectors in R^n returns w with det(v_1, ..., v_{n-1}, x) = <w, x>.
/// Hence <w, v_i> = 0 and |w| is the (n-1)-volume of the parallelepiped they
/// span; w = 0 iff the inputs are dependent.
Vec generalized_cross(std::span<const Vec> vs);

/// Gram determinant det(<v_i, v_j>).
Scalar gram_determinant(std::span<const Vec> vs);

/// Rational basis of the orthogonal complement of span(rows) in R^dim.
std::vector<Vec> orthogonal_complement(const Matrix& rows, std::size_t dim);

/// v = scale * direction with direction a primitive integer vector and
/// scale > 0 (exact), or direction of unit length (float). Throws on v = 0.
struct Direction {
  Vec direction;
  Scalar scale;
};
Direction primitive_direction(const Vec& v);
/// As primitive_direction, but the first nonzero coordinate of the direction
/// is positive; `scale` carries the sign.
Direction canonical_direction(const Vec& v);

/// Lexicographic order on equal-length vectors.
bool lex_less(const Vec& a, const Vec& b);

/// Exact k-th root of a nonnegative rational if it is rational.
std::optional<mpq_class> exact_root(const mpq_class& q, unsigned k);

/// Rational bounds lo <= q^(1/k) <= hi with hi - lo <= 2^-bits.
std::pair<mpq_class, mpq_class> root_bounds(const mpq_class& q, unsigned k, unsigned bits);

}  // namespace logbm
