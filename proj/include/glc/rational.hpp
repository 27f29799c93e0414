#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace glc {

// Exact rational number, always kept canonical (lowest terms, sign on the
// numerator). Thin value wrapper around GMP's mpq_class; every constructor
// and operation re-canonicalizes so equality is structural.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors int literals
  Rat(long n, long d);
  explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  static Rat parse(const std::string& text);  // "p" or "p/q", optional sign

  Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
  Rat operator/(const Rat& o) const;
  Rat operator-() const { return Rat(mpq_class(-v_)); }

  Rat& operator+=(const Rat& o) { v_ += o.v_; v_.canonicalize(); return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; v_.canonicalize(); return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; v_.canonicalize(); return *this; }

  bool operator==(const Rat& o) const { return v_ == o.v_; }
  bool operator!=(const Rat& o) const { return v_ != o.v_; }
  bool operator<(const Rat& o) const { return v_ < o.v_; }
  bool operator<=(const Rat& o) const { return v_ <= o.v_; }
  bool operator>(const Rat& o) const { return v_ > o.v_; }
  bool operator>=(const Rat& o) const { return v_ >= o.v_; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool positive() const { return v_ > 0; }

  Rat inverse() const;          // throws on zero
  Rat pow(int k) const;         // integer power, k may be negative

  std::string str() const;      // "p" or "p/q"

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

using VecQ = std::vector<Rat>;

VecQ operator+(const VecQ& a, const VecQ& b);
VecQ operator-(const VecQ& a, const VecQ& b);
VecQ operator*(const Rat& s, const VecQ& v);
bool operator==(const VecQ& a, const VecQ& b);

}  // namespace glc
