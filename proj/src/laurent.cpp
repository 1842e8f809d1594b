#include <sstream>

#include "khcube/chain.hpp"
#include "khcube/errors.hpp"

namespace khcube {

LaurentPoly::LaurentPoly(const Integer& constant) { add_term(0, constant); }

LaurentPoly LaurentPoly::monomial(const Integer& coefficient, int exponent) {
  LaurentPoly p;
  p.add_term(exponent, coefficient);
  return p;
}

void LaurentPoly::add_term(int e, const Integer& v) {
  if (v == 0) return;
  auto it = c_.find(e);
  if (it == c_.end()) {
    c_.emplace(e, v);
    return;
  }
  it->second += v;
  if (it->second == 0) c_.erase(it);
}

Integer LaurentPoly::coefficient(int exponent) const {
  auto it = c_.find(exponent);
  return it == c_.end() ? Integer(0) : it->second;
}

int LaurentPoly::min_degree() const {
  if (c_.empty()) throw Error(ErrorCode::InvalidArgument, "degree of the zero polynomial");
  return c_.begin()->first;
}

int LaurentPoly::max_degree() const {
  if (c_.empty()) throw Error(ErrorCode::InvalidArgument, "degree of the zero polynomial");
  return c_.rbegin()->first;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& [e, v] : o.c_) r.add_term(e, v);
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [e, v] : c_) r.c_.emplace(e, -v);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (const auto& [e1, v1] : c_)
    for (const auto& [e2, v2] : o.c_) r.add_term(e1 + e2, v1 * v2);
  return r;
}

LaurentPoly LaurentPoly::divide_exact(const LaurentPoly& o) const {
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero polynomial");
  if (is_zero()) return {};
  const int shift_out = min_degree() - o.min_degree();
  LaurentPoly rem = shift(-min_degree());
  const LaurentPoly den = o.shift(-o.min_degree());
  const int dd = den.max_degree();
  const Integer& lead = den.c_.rbegin()->second;
  LaurentPoly quot;
  while (!rem.is_zero()) {
    const int rd = rem.max_degree();
    const Integer rl = rem.c_.rbegin()->second;
    if (rd < dd || rl % lead != 0) throw Error(ErrorCode::InternalInvariant, "inexact polynomial division");
    LaurentPoly step = monomial(rl / lead, rd - dd);
    quot = quot + step;
    rem = rem - step * den;
  }
  return quot.shift(shift_out);
}

LaurentPoly LaurentPoly::shift(int k) const {
  LaurentPoly r;
  for (const auto& [e, v] : c_) r.c_.emplace(e + k, v);
  return r;
}

LaurentPoly LaurentPoly::invert_variable() const {
  LaurentPoly r;
  for (const auto& [e, v] : c_) r.c_.emplace(-e, v);
  return r;
}

Integer LaurentPoly::eval_at_one() const {
  Integer s = 0;
  for (const auto& [e, v] : c_) s += v;
  return s;
}

std::pair<Integer, Integer> LaurentPoly::eval(const Integer& t) const {
  if (c_.empty()) return {0, 1};
  const int lo = std::min(0, min_degree());
  Integer num = 0;
  for (const auto& [e, v] : c_) num += v * boost::multiprecision::pow(t, e - lo);
  Integer den = boost::multiprecision::pow(t, -lo);
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "negative powers of zero");
  Integer g = boost::multiprecision::gcd(num, den);
  if (g != 0) {
    num /= g;
    den /= g;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {num, den};
}

Integer LaurentPoly::abs_coeff_sum() const {
  Integer s = 0;
  for (const auto& [e, v] : c_) s += abs(v);
  return s;
}

std::string LaurentPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const int e = it->first;
    Integer v = it->second;
    if (v < 0) {
      os << (first ? "-" : "-");
      v = -v;
    } else if (!first) {
      os << "+";
    }
    if (e == 0 || v != 1) os << v;
    if (e != 0) {
      os << "T";
      if (e != 1) os << "^" << e;
    }
    first = false;
  }
  return os.str();
}

}  // namespace khcube
