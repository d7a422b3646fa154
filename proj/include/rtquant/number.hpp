#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace rtq {

/// Exact fraction in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. Every arithmetic result is
/// canonicalized, so equality and ordering are exact.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t value) : q_(static_cast<long>(value)) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpz_class &num, const mpz_class &den = 1);

  /// Parses "a/b" or "a" with arbitrary-length decimal digits.
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  std::string num_str() const { return q_.get_num().get_str(); }
  std::string den_str() const { return q_.get_den().get_str(); }
  /// "num/den", or just "num" when the denominator is 1.
  std::string str() const;

  double to_double() const { return q_.get_d(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational &operator+=(const Rational &o) { q_ += o.q_; return *this; }
  Rational &operator-=(const Rational &o) { q_ -= o.q_; return *this; }
  Rational &operator*=(const Rational &o) { q_ *= o.q_; return *this; }
  Rational &operator/=(const Rational &o);

  friend Rational operator+(Rational a, const Rational &b) { return a += b; }
  friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

  friend bool operator==(const Rational &a, const Rational &b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
    return cmp(a.q_, b.q_) <=> 0;
  }

  /// base^exp for exp >= 0.
  static Rational pow(const Rational &base, unsigned exp);

  const mpq_class &raw() const { return q_; }

private:
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  mpq_class q_{0};
};

/// Shorthand constructor; throws std::domain_error on a zero denominator.
Rational rat(std::int64_t num, std::int64_t den = 1);

/// Round-half-even rendering with exactly `places` digits after the point,
/// e.g. to_decimal(117/1408, 7) == "0.0830966".
std::string to_decimal(const Rational &r, int places = 10);

/// Round-half-even rendering to `digits` significant digits in positional
/// notation, e.g. to_significant(3537/563200, 6) == "0.00628018".
std::string to_significant(const Rational &r, int digits = 10);

std::ostream &operator<<(std::ostream &os, const Rational &r);

/// Planar point (x, c·√3) with both x and c rational.
struct QPoint {
  Rational x;
  Rational ySqrt3;

  double x_double() const { return x.to_double(); }
  /// Vertical coordinate as a double, i.e. ySqrt3·√3.
  double y_double() const;

  friend bool operator==(const QPoint &, const QPoint &) = default;
};

/// Exact squared Euclidean distance: (Δx)² + 3(Δc)².
Rational sq_dist(const QPoint &p, const QPoint &q);

QPoint operator+(const QPoint &a, const QPoint &b);
QPoint operator*(const Rational &k, const QPoint &p);

std::ostream &operator<<(std::ostream &os, const QPoint &p);

}  // namespace rtq
