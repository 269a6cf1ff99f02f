#include "latmod/qsqrt2.hpp"

#include "latmod/lattice.hpp"

namespace latmod {

int sign(const QSqrt2& v) {
  int sa = v.a.sign(), sb = v.b.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare |a| with |b|*sqrt(2) by squaring. Equality is
  // impossible since sqrt(2) is irrational and b != 0.
  Rational diff = v.a * v.a - 2 * v.b * v.b;
  return sa > 0 ? diff.sign() : -diff.sign();
}

QSqrt2 sqrt2() { return QSqrt2{Rational(0), Rational(1)}; }

int compare(const Endpoint& x, const Endpoint& y) {
  if (x.kind != y.kind) return x.kind < y.kind ? -1 : 1;
  if (x.kind != Endpoint::Finite) return 0;
  return sign(x.value - y.value);
}

namespace {

// Continued-fraction convergents p/q of sqrt(2); consecutive ones bracket it
// and the error drops below any positive rational.
struct Convergent {
  Rational p = 1, q = 1;

  Rational value() const { return p / q; }
  bool below() const { return p * p < 2 * q * q; }
  void advance() {
    Rational np = p + 2 * q, nq = p + q;
    p = np;
    q = nq;
  }
};

// Some rational strictly below / above a finite value. The convergent error
// |p/q - sqrt2| is below 1/q^2, so once 2|b| < q^2 the approximation of
// a + b*sqrt2 is within 1/2.
Rational rational_lt(const QSqrt2& v) {
  if (v.is_rational()) return v.a - 1;
  Convergent c;
  while (4 * v.b * v.b >= c.q * c.q * c.q * c.q) c.advance();
  return v.a + v.b * c.value() - 1;
}

Rational rational_gt(const QSqrt2& v) { return -rational_lt(-v); }

}  // namespace

Rational rational_between(const Endpoint& lo, const Endpoint& hi) {
  if (!(lo < hi)) throw Error(Errc::PreconditionViolated, "empty rational search interval");
  if (lo.kind == Endpoint::NegInf && hi.kind == Endpoint::PosInf) return 0;
  if (lo.kind == Endpoint::NegInf) return rational_lt(hi.value);
  if (hi.kind == Endpoint::PosInf) return rational_gt(lo.value);

  QSqrt2 mid = (lo.value + hi.value).scaled(Rational(1, 2));
  if (mid.is_rational()) return mid.a;

  // Approximate mid = a + b*sqrt2 by a + b*(p/q); the candidates converge to
  // the midpoint, and each try is checked exactly.
  Convergent c;
  while (true) {
    QSqrt2 cand{mid.a + mid.b * c.value(), 0};
    if (lo.value < cand && cand < hi.value) return cand.a;
    c.advance();
  }
}

QSqrt2 irrational_between(const Endpoint& lo, const Endpoint& hi) {
  if (!(lo < hi)) throw Error(Errc::PreconditionViolated, "empty irrational search interval");
  if (lo.kind == Endpoint::NegInf && hi.kind == Endpoint::PosInf) return sqrt2();
  if (lo.kind == Endpoint::NegInf) {
    QSqrt2 t = hi.value - sqrt2();
    return t.is_rational() ? hi.value - sqrt2().scaled(Rational(1, 2)) : t;
  }
  if (hi.kind == Endpoint::PosInf) {
    QSqrt2 t = lo.value + sqrt2();
    return t.is_rational() ? lo.value + sqrt2().scaled(Rational(1, 2)) : t;
  }

  QSqrt2 mid = (lo.value + hi.value).scaled(Rational(1, 2));
  if (!mid.is_rational()) return mid;
  Rational eps(1, 2);
  while (true) {
    QSqrt2 cand = mid + sqrt2().scaled(eps);
    if (cand < hi.value) return cand;  // cand > mid > lo always
    eps /= 2;
  }
}

std::string to_string(const QSqrt2& v) {
  auto rat = [](const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
  };
  if (v.b == 0) return rat(v.a);
  if (v.a == 0) return rat(v.b) + "r2";
  return rat(v.a) + "+" + rat(v.b) + "r2";
}

std::string to_string(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::NegInf: return "-inf";
    case Endpoint::PosInf: return "inf";
    default: return to_string(e.value);
  }
}

}  // namespace latmod
