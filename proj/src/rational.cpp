#include "glc/rational.hpp"

#include <ostream>

#include "glc/error.hpp"

namespace glc {

Rat::Rat(long n, long d) {
  if (d == 0) fail(Errc::DivisionByZeroScale, "rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rat Rat::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      mpq_class v(text);
      v.canonicalize();
      return Rat(v);
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (num.empty() || den.empty()) throw std::invalid_argument(text);
    mpq_class v(num + "/" + den);
    if (v.get_den() == 0)
      fail(Errc::DivisionByZeroScale, "zero denominator in '" + text + "'");
    v.canonicalize();
    return Rat(v);
  } catch (const std::invalid_argument&) {
    fail(Errc::SyntaxError, "bad rational literal '" + text + "'");
  }
}

Rat Rat::operator/(const Rat& o) const {
  if (o.is_zero()) fail(Errc::DivisionByZeroScale, "division by zero");
  return Rat(mpq_class(v_ / o.v_));
}

Rat Rat::inverse() const {
  if (is_zero()) fail(Errc::DivisionByZeroScale, "inverse of zero");
  return Rat(mpq_class(1 / v_));
}

Rat Rat::pow(int k) const {
  Rat base = k < 0 ? inverse() : *this;
  int n = k < 0 ? -k : k;
  Rat acc(1);
  for (int i = 0; i < n; ++i) acc *= base;
  return acc;
}

std::string Rat::str() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rat& r) {
  return os << r.str();
}

VecQ operator+(const VecQ& a, const VecQ& b) {
  VecQ out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

VecQ operator-(const VecQ& a, const VecQ& b) {
  VecQ out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

VecQ operator*(const Rat& s, const VecQ& v) {
  VecQ out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

bool operator==(const VecQ& a, const VecQ& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace glc
