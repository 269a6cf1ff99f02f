#include "latmod/interval.hpp"

#include <algorithm>
#include <cctype>

#include "latmod/lattice.hpp"

namespace latmod {

QInterval make_interval(Endpoint lo, Endpoint hi) {
  if (!(lo < hi))
    throw Error(Errc::PreconditionViolated, "interval endpoints out of order: " + to_string(lo) +
                                                ", " + to_string(hi));
  if (lo.kind == Endpoint::PosInf || hi.kind == Endpoint::NegInf)
    throw Error(Errc::PreconditionViolated, "interval endpoints out of order");
  return QInterval{std::move(lo), std::move(hi)};
}

bool IntervalUnion::is_top() const {
  return parts.size() == 1 && parts[0].lo.kind == Endpoint::NegInf &&
         parts[0].hi.kind == Endpoint::PosInf;
}

IntervalUnion iu_bottom() { return IntervalUnion{}; }

IntervalUnion iu_top() {
  return IntervalUnion{{QInterval{Endpoint::neg_inf(), Endpoint::pos_inf()}}};
}

IntervalUnion normalize(std::vector<QInterval> raw) {
  for (const QInterval& i : raw)
    if (!(i.lo < i.hi)) throw Error(Errc::PreconditionViolated, "degenerate interval");
  std::sort(raw.begin(), raw.end(), [](const QInterval& x, const QInterval& y) {
    int c = compare(x.lo, y.lo);
    return c != 0 ? c < 0 : compare(x.hi, y.hi) < 0;
  });

  IntervalUnion out;
  for (QInterval& next : raw) {
    if (out.parts.empty()) {
      out.parts.push_back(std::move(next));
      continue;
    }
    QInterval& cur = out.parts.back();
    int c = compare(next.lo, cur.hi);
    // Overlap always merges; a shared endpoint merges only when it is not a
    // rational hole.
    bool mergeable = c < 0 || (c == 0 && !cur.hi.is_rational());
    if (mergeable) {
      if (compare(cur.hi, next.hi) < 0) cur.hi = next.hi;
    } else {
      out.parts.push_back(std::move(next));
    }
  }
  return out;
}

IntervalUnion iu_meet(const IntervalUnion& u, const IntervalUnion& v) {
  std::vector<QInterval> pieces;
  for (const QInterval& a : u.parts)
    for (const QInterval& b : v.parts) {
      Endpoint lo = compare(a.lo, b.lo) < 0 ? b.lo : a.lo;
      Endpoint hi = compare(a.hi, b.hi) < 0 ? a.hi : b.hi;
      if (lo < hi) pieces.push_back(QInterval{lo, hi});
    }
  return normalize(std::move(pieces));
}

IntervalUnion iu_join(const IntervalUnion& u, const IntervalUnion& v) {
  std::vector<QInterval> pieces = u.parts;
  pieces.insert(pieces.end(), v.parts.begin(), v.parts.end());
  return normalize(std::move(pieces));
}

bool iu_leq(const IntervalUnion& u, const IntervalUnion& v) { return iu_meet(u, v) == u; }

bool contains(const IntervalUnion& u, const Rational& q) {
  Endpoint e = Endpoint::finite(QSqrt2{q});
  for (const QInterval& i : u.parts)
    if (i.lo < e && e < i.hi) return true;
  return false;
}

bool is_complemented(const IntervalUnion& u) {
  for (const QInterval& i : u.parts)
    if (i.lo.is_rational() || i.hi.is_rational()) return false;
  return true;
}

std::optional<IntervalUnion> complement(const IntervalUnion& u) {
  if (!is_complemented(u)) return std::nullopt;
  IntervalUnion c;
  Endpoint cursor = Endpoint::neg_inf();
  for (const QInterval& i : u.parts) {
    if (cursor < i.lo) c.parts.push_back(QInterval{cursor, i.lo});
    cursor = i.hi;
  }
  if (cursor < Endpoint::pos_inf()) c.parts.push_back(QInterval{cursor, Endpoint::pos_inf()});

  if (!iu_meet(u, c).is_bottom() || !iu_join(u, c).is_top())
    throw Error(Errc::InternalInvariant, "complement identities failed");
  return c;
}

IntervalUnion fill_rational_holes(const IntervalUnion& u) {
  std::vector<QInterval> pieces;
  for (const QInterval& i : u.parts) {
    if (!pieces.empty() && pieces.back().hi == i.lo) {
      pieces.back().hi = i.hi;  // canonical adjacency is always a rational hole
    } else {
      pieces.push_back(i);
    }
  }
  return normalize(std::move(pieces));
}

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c))
      throw Error(Errc::ParseError,
                  "expected '" + std::string(1, c) + "' at offset " + std::to_string(pos));
  }

  bool eat_word(const char* w) {
    skip_ws();
    size_t len = std::string(w).size();
    if (s.compare(pos, len, w) == 0) {
      pos += len;
      return true;
    }
    return false;
  }

  boost::multiprecision::cpp_int integer() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits)
      throw Error(Errc::ParseError, "expected integer at offset " + std::to_string(start));
    return boost::multiprecision::cpp_int(s.substr(start, pos - start));
  }

  Rational rational() {
    boost::multiprecision::cpp_int num = integer();
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      boost::multiprecision::cpp_int den = integer();
      if (den <= 0) throw Error(Errc::ParseError, "denominator must be positive");
      return Rational(num, den);
    }
    return Rational(num);
  }

  Endpoint endpoint() {
    skip_ws();
    if (eat_word("-inf")) return Endpoint::neg_inf();
    if (eat_word("inf")) return Endpoint::pos_inf();
    Rational first = rational();
    if (pos + 1 < s.size() && s[pos] == 'r' && s[pos + 1] == '2') {
      pos += 2;
      return Endpoint::finite(QSqrt2{Rational(0), first});
    }
    if (pos < s.size() && s[pos] == '+') {
      ++pos;
      Rational second = rational();
      if (!(pos + 1 < s.size() && s[pos] == 'r' && s[pos + 1] == '2'))
        throw Error(Errc::ParseError, "expected 'r2' at offset " + std::to_string(pos));
      pos += 2;
      return Endpoint::finite(QSqrt2{first, second});
    }
    return Endpoint::finite(QSqrt2{first});
  }

  QInterval interval() {
    expect('(');
    Endpoint lo = endpoint();
    expect(',');
    Endpoint hi = endpoint();
    expect(')');
    if (!(lo < hi)) throw Error(Errc::ParseError, "interval endpoints out of order");
    if (lo.kind == Endpoint::PosInf || hi.kind == Endpoint::NegInf)
      throw Error(Errc::ParseError, "interval endpoints out of order");
    return QInterval{lo, hi};
  }

  IntervalUnion run() {
    std::vector<QInterval> pieces;
    skip_ws();
    if (eat_word("bot") || eat_word("empty")) {
      skip_ws();
      if (pos != s.size()) throw Error(Errc::ParseError, "trailing input");
      return iu_bottom();
    }
    pieces.push_back(interval());
    while (true) {
      skip_ws();
      if (pos < s.size() && (s[pos] == 'u' || s[pos] == 'U')) {
        ++pos;
        pieces.push_back(interval());
      } else {
        break;
      }
    }
    skip_ws();
    if (pos != s.size()) throw Error(Errc::ParseError, "trailing input at offset " + std::to_string(pos));
    return normalize(std::move(pieces));
  }
};

}  // namespace

IntervalUnion parse_union(const std::string& text) {
  Parser p{text};
  return p.run();
}

std::string to_string(const QInterval& i) {
  return "(" + to_string(i.lo) + "," + to_string(i.hi) + ")";
}

std::string to_string(const IntervalUnion& u) {
  if (u.parts.empty()) return "bot";
  std::string out;
  for (size_t k = 0; k < u.parts.size(); ++k) {
    if (k) out += " u ";
    out += to_string(u.parts[k]);
  }
  return out;
}

}  // namespace latmod
