#ifndef LATMOD_QSQRT2_HPP
#define LATMOD_QSQRT2_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace latmod {

using Rational = boost::multiprecision::cpp_rational;

/// An element a + b*sqrt(2) of the quadratic field Q(sqrt 2). The order is
/// decided exactly by sign analysis and one squaring; no floating point.
struct QSqrt2 {
  Rational a;
  Rational b;

  QSqrt2() = default;
  QSqrt2(Rational ra) : a(std::move(ra)) {}
  QSqrt2(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

  bool is_rational() const { return b == 0; }

  QSqrt2 operator+(const QSqrt2& o) const { return {a + o.a, b + o.b}; }
  QSqrt2 operator-(const QSqrt2& o) const { return {a - o.a, b - o.b}; }
  QSqrt2 operator-() const { return {-a, -b}; }
  QSqrt2 operator*(const QSqrt2& o) const {
    return {a * o.a + 2 * b * o.b, a * o.b + b * o.a};
  }
  QSqrt2 scaled(const Rational& r) const { return {a * r, b * r}; }

  bool operator==(const QSqrt2&) const = default;
};

/// -1, 0 or +1.
int sign(const QSqrt2& v);

inline bool operator<(const QSqrt2& x, const QSqrt2& y) { return sign(x - y) < 0; }
inline bool operator>(const QSqrt2& x, const QSqrt2& y) { return sign(x - y) > 0; }
inline bool operator<=(const QSqrt2& x, const QSqrt2& y) { return sign(x - y) <= 0; }
inline bool operator>=(const QSqrt2& x, const QSqrt2& y) { return sign(x - y) >= 0; }

QSqrt2 sqrt2();

/// Endpoint of an interval over Q: either infinite or a Q(sqrt 2) value.
struct Endpoint {
  enum Kind { NegInf = -1, Finite = 0, PosInf = 1 };

  Kind kind = Finite;
  QSqrt2 value;

  static Endpoint neg_inf() { return Endpoint{NegInf, {}}; }
  static Endpoint pos_inf() { return Endpoint{PosInf, {}}; }
  static Endpoint finite(QSqrt2 v) { return Endpoint{Finite, std::move(v)}; }

  bool is_finite() const { return kind == Finite; }
  bool is_rational() const { return kind == Finite && value.is_rational(); }

  bool operator==(const Endpoint&) const = default;
};

int compare(const Endpoint& x, const Endpoint& y);
inline bool operator<(const Endpoint& x, const Endpoint& y) { return compare(x, y) < 0; }
inline bool operator<=(const Endpoint& x, const Endpoint& y) { return compare(x, y) <= 0; }

/// A rational strictly between the bounds (infinite bounds allowed; lo < hi
/// required for finite pairs). Deterministic.
Rational rational_between(const Endpoint& lo, const Endpoint& hi);

/// An irrational Q(sqrt 2) value strictly between the bounds: the average of
/// the finite bounds, perturbed by sqrt(2)/2^k with the smallest k keeping it
/// inside when the average is rational. Deterministic.
QSqrt2 irrational_between(const Endpoint& lo, const Endpoint& hi);

std::string to_string(const QSqrt2& v);
std::string to_string(const Endpoint& e);

}  // namespace latmod

#endif
