#include "glc/group.hpp"

#include <sstream>

#include "glc/error.hpp"

namespace glc {

GroupElem::GroupElem(const Rat& r) : rational_(r) {
  if (!r.positive())
    fail(Errc::BadArgument, "scale rational must be positive, got " + r.str());
}

GroupElem GroupElem::symbol(const std::string& name, int exp) {
  if (name.empty()) fail(Errc::BadArgument, "empty symbol name");
  GroupElem g;
  if (exp != 0) g.exps_[name] = exp;
  return g;
}

void GroupElem::normalize() {
  for (auto it = exps_.begin(); it != exps_.end();) {
    if (it->second == 0)
      it = exps_.erase(it);
    else
      ++it;
  }
}

GroupElem GroupElem::operator*(const GroupElem& o) const {
  GroupElem out;
  out.rational_ = rational_ * o.rational_;
  out.exps_ = exps_;
  for (const auto& [s, k] : o.exps_) out.exps_[s] += k;
  out.normalize();
  return out;
}

GroupElem GroupElem::inverse() const {
  GroupElem out;
  out.rational_ = rational_.inverse();
  for (const auto& [s, k] : exps_) out.exps_[s] = -k;
  return out;
}

GroupElem GroupElem::pow(int k) const {
  GroupElem out;
  out.rational_ = rational_.pow(k);
  for (const auto& [s, e] : exps_) out.exps_[s] = e * k;
  out.normalize();
  return out;
}

bool GroupElem::operator<(const GroupElem& o) const {
  if (exps_ != o.exps_) return exps_ < o.exps_;
  return rational_ < o.rational_;
}

Rat GroupElem::value(const std::map<std::string, Rat>& assignment) const {
  Rat out = rational_;
  for (const auto& [s, k] : exps_) {
    auto it = assignment.find(s);
    if (it == assignment.end())
      fail(Errc::SymbolUnassigned, "no value for symbol '" + s + "'");
    if (it->second.is_zero())
      fail(Errc::DivisionByZeroScale, "symbol '" + s + "' assigned zero");
    out *= it->second.pow(k);
  }
  return out;
}

std::string GroupElem::str() const {
  std::ostringstream os;
  os << rational_.str();
  for (const auto& [s, k] : exps_) os << "*" << s << "^" << k;
  return os.str();
}

GroupElem GroupElem::parse(const std::string& text) {
  if (text.empty()) fail(Errc::SyntaxError, "empty scale literal");
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == '*') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  GroupElem out(Rat::parse(parts[0]));
  for (size_t i = 1; i < parts.size(); ++i) {
    const std::string& p = parts[i];
    if (p.empty()) fail(Errc::SyntaxError, "empty factor in '" + text + "'");
    auto caret = p.find('^');
    std::string sym = caret == std::string::npos ? p : p.substr(0, caret);
    int exp = 1;
    if (caret != std::string::npos) {
      try {
        exp = std::stoi(p.substr(caret + 1));
      } catch (const std::exception&) {
        fail(Errc::SyntaxError, "bad exponent in '" + p + "'");
      }
    }
    if (sym.empty() || isdigit(static_cast<unsigned char>(sym[0])))
      fail(Errc::SyntaxError, "bad symbol name in '" + p + "'");
    out = out * GroupElem::symbol(sym, exp);
  }
  return out;
}

}  // namespace glc
