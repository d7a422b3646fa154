#include "rtquant/number.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace rtq {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q_.canonicalize();
}

Rational::Rational(const mpz_class &num, const mpz_class &den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  auto parse_int = [](std::string_view s) {
    mpz_class z;
    if (s.empty() || z.set_str(std::string(s), 10) != 0)
      throw std::invalid_argument("Rational: malformed integer '" + std::string(s) + "'");
    return z;
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return num_str();
  return num_str() + "/" + den_str();
}

Rational &Rational::operator/=(const Rational &o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::pow(const Rational &base, unsigned exp) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.q_.get_num_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), base.q_.get_den_mpz_t(), exp);
  return Rational(num, den);
}

Rational rat(std::int64_t num, std::int64_t den) { return Rational(num, den); }

namespace {

mpz_class pow10(long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

// Integer nearest to num/den, ties to even. num, den > 0.
mpz_class round_half_even(const mpz_class &num, const mpz_class &den) {
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  const int c = cmp(2 * r, den);
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  return q;
}

// Renders scaled / 10^point in positional notation, scaled >= 0.
std::string place_point(const mpz_class &scaled, long point) {
  std::string body = scaled.get_str();
  if (point <= 0) return body + std::string(static_cast<std::size_t>(-point), '0');
  const auto p = static_cast<std::size_t>(point);
  if (p >= body.size()) return "0." + std::string(p - body.size(), '0') + body;
  return body.substr(0, body.size() - p) + "." + body.substr(body.size() - p);
}

}  // namespace

std::string to_decimal(const Rational &r, int places) {
  if (places < 1) throw std::invalid_argument("to_decimal: places must be >= 1");
  const mpz_class scaled = round_half_even(abs(r.numerator()) * pow10(places), r.denominator());
  const std::string out = place_point(scaled, places);
  return (r.sign() < 0 && scaled != 0) ? "-" + out : out;
}

std::string to_significant(const Rational &r, int digits) {
  if (digits < 1) throw std::invalid_argument("to_significant: digits must be >= 1");
  if (r.is_zero()) return to_decimal(r, digits);

  const mpz_class num = abs(r.numerator());
  const mpz_class den = r.denominator();

  // Decimal exponent e with 10^e <= |r| < 10^(e+1).
  long e = static_cast<long>(std::floor(std::log10(std::abs(r.to_double()))));
  auto below = [&](long k) {  // |r| < 10^k
    return k >= 0 ? cmp(num, den * pow10(k)) < 0 : cmp(num * pow10(-k), den) < 0;
  };
  while (below(e)) --e;
  while (!below(e + 1)) ++e;

  long point = digits - 1 - e;  // value = scaled / 10^point
  mpz_class scaled = point >= 0 ? round_half_even(num * pow10(point), den)
                                : round_half_even(num, den * pow10(-point));
  if (scaled == pow10(digits)) {
    scaled /= 10;
    --point;
  }
  const std::string out = place_point(scaled, point);
  return r.sign() < 0 ? "-" + out : out;
}

std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

double QPoint::y_double() const { return ySqrt3.to_double() * std::sqrt(3.0); }

Rational sq_dist(const QPoint &p, const QPoint &q) {
  const Rational dx = p.x - q.x;
  const Rational dc = p.ySqrt3 - q.ySqrt3;
  return dx * dx + Rational(3) * dc * dc;
}

QPoint operator+(const QPoint &a, const QPoint &b) { return {a.x + b.x, a.ySqrt3 + b.ySqrt3}; }

QPoint operator*(const Rational &k, const QPoint &p) { return {k * p.x, k * p.ySqrt3}; }

std::ostream &operator<<(std::ostream &os, const QPoint &p) {
  return os << "(" << p.x << ", " << p.ySqrt3 << "*sqrt3)";
}

}  // namespace rtq
