#ifndef CONMAP_LOG_LINEAR_HPP
#define CONMAP_LOG_LINEAR_HPP

#include <cmath>
#include <map>

#include "rational.hpp"

namespace conmap {

// Finitely supported formal Q-linear combination of { log p : p prime }.
// Zero coefficients are never stored.
class LogLinearValue {
public:
  LogLinearValue() = default;

  const std::map<Int, Rat>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  Rat coefficient(const Int& p) const {
    auto it = c_.find(p);
    return it == c_.end() ? Rat(0) : it->second;
  }

  void add_term(const Int& p, const Rat& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = c_.emplace(p, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) c_.erase(it);
    }
  }

  friend LogLinearValue operator+(const LogLinearValue& a, const LogLinearValue& b) {
    LogLinearValue r = a;
    for (const auto& [p, v] : b.c_) r.add_term(p, v);
    return r;
  }

  friend LogLinearValue operator-(const LogLinearValue& a, const LogLinearValue& b) {
    LogLinearValue r = a;
    for (const auto& [p, v] : b.c_) r.add_term(p, -v);
    return r;
  }

  friend LogLinearValue operator*(const Rat& s, const LogLinearValue& a) {
    LogLinearValue r;
    if (s == 0) return r;
    for (const auto& [p, v] : a.c_) r.c_.emplace(p, s * v);
    return r;
  }

  friend bool operator==(const LogLinearValue& a, const LogLinearValue& b) {
    return a.c_ == b.c_;
  }

  double to_double() const {
    double acc = 0;
    for (const auto& [p, v] : c_) acc += v.get_d() * std::log(p.get_d());
    return acc;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (const auto& [p, v] : c_) {
      if (!out.empty()) out += " + ";
      out += format_rat(v) + "*log(" + p.get_str() + ")";
    }
    return out;
  }

private:
  std::map<Int, Rat> c_;
};

} // namespace conmap

#endif
