#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "digitlab/natural.hpp"

namespace digitlab {

// Sparse polynomial in z with integer coefficients and integer (possibly
// negative) exponents. Canonical form: no stored zero coefficients, so
// operator== is termwise equality.
class LaurentPoly {
 public:
  using Exp = long long;
  using TermMap = std::map<Exp, Integer>;

  LaurentPoly() = default;

  static LaurentPoly constant(Integer c) { return monomial(std::move(c), 0); }

  static LaurentPoly monomial(Integer c, Exp k) {
    LaurentPoly p;
    if (c != 0) p.terms_.emplace(k, std::move(c));
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  Integer coeff(Exp k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add_term(Exp k, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r;
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, -c);
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
    return r;
  }

  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  // z d/dz: maps c z^k to k c z^k.
  LaurentPoly z_derivative() const {
    LaurentPoly r;
    for (const auto& [k, c] : terms_) r.add_term(k, c * k);
    return r;
  }

  // z -> z^a (exponent map k -> a k). a = 0 would conflate every term, so it
  // is rejected; use eval_at_one for that reading.
  LaurentPoly substitute_z_power(Exp a) const {
    if (a == 0) throw std::invalid_argument("LaurentPoly: z -> z^0 is not a substitution");
    LaurentPoly r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(a * k, c);
    return r;
  }

  Integer eval_at_one() const {
    Integer s = 0;
    for (const auto& [k, c] : terms_) s += c;
    return s;
  }

  // Drops terms with exponent above cap (both sides of a comparison must be
  // capped identically for the comparison to stay meaningful).
  LaurentPoly drop_above(Exp cap) const {
    LaurentPoly r;
    for (const auto& [k, c] : terms_) {
      if (k > cap) break;
      r.terms_.emplace(k, c);
    }
    return r;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  // Deterministic rendering by ascending exponent, e.g. "z^-1 + 3 + 2*z^5".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      Integer mag = c < 0 ? Integer(-c) : c;
      if (first) {
        if (c < 0) out << "-";
        first = false;
      } else {
        out << (c < 0 ? " - " : " + ");
      }
      const bool unit = (mag == 1) && (k != 0);
      if (!unit) out << mag.str();
      if (k != 0) {
        if (!unit) out << "*";
        out << "z";
        if (k != 1) out << "^" << k;
      }
    }
    return out.str();
  }

 private:
  TermMap terms_;
};

}  // namespace digitlab
