#pragma once

#include <map>
#include <string>

#include "glc/rational.hpp"

namespace glc {

// Element of the scale group: a positive rational times a finitely supported
// product of formal symbols with integer exponents. The group is abelian;
// elements are kept normalized (no zero exponents, rational in lowest terms),
// so operator== is structural equality.
//
// Literal syntax: `p/q[*sym^k]...`, e.g. "1", "3/4", "1*a^1", "2*a^-1*b^2".
class GroupElem {
 public:
  GroupElem() : rational_(1) {}
  explicit GroupElem(const Rat& r);
  static GroupElem identity() { return GroupElem(); }
  static GroupElem symbol(const std::string& name, int exp = 1);
  static GroupElem parse(const std::string& text);

  GroupElem operator*(const GroupElem& o) const;
  GroupElem inverse() const;
  GroupElem pow(int k) const;

  bool operator==(const GroupElem& o) const {
    return rational_ == o.rational_ && exps_ == o.exps_;
  }
  bool operator!=(const GroupElem& o) const { return !(*this == o); }
  bool operator<(const GroupElem& o) const;  // arbitrary total order, for maps

  bool is_identity() const { return rational_.is_one() && exps_.empty(); }
  bool pure_rational() const { return exps_.empty(); }
  const Rat& rational() const { return rational_; }
  const std::map<std::string, int>& exponents() const { return exps_; }

  // Numeric value under an assignment of symbols to positive rationals.
  // Throws SymbolUnassigned when a symbol is missing from the assignment.
  Rat value(const std::map<std::string, Rat>& assignment) const;

  std::string str() const;

 private:
  Rat rational_;  // always > 0
  std::map<std::string, int> exps_;
  void normalize();
};

}  // namespace glc
