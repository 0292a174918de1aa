#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "digitlab/laurent_poly.hpp"

namespace digitlab {

// Formal power series in q truncated at a fixed order N: coefficients for
// q^0..q^N are stored (LaurentPoly in z), everything above is discarded.
// Binary operations require equal orders; mixing orders is a usage error.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t order) : order_(order), coeffs_(order + 1) {}

  static TruncatedSeries one(std::size_t order) {
    return constant(order, LaurentPoly::constant(1));
  }

  static TruncatedSeries constant(std::size_t order, LaurentPoly c) {
    TruncatedSeries s(order);
    s.coeffs_[0] = std::move(c);
    return s;
  }

  // c * z^{z_exp} * q^{q_exp}; the zero series when q_exp exceeds the order.
  static TruncatedSeries monomial(std::size_t order, std::size_t q_exp, LaurentPoly c) {
    TruncatedSeries s(order);
    if (q_exp <= order) s.coeffs_[q_exp] = std::move(c);
    return s;
  }

  std::size_t order() const { return order_; }

  const LaurentPoly& operator[](std::size_t n) const { return coeffs_.at(n); }
  LaurentPoly& at(std::size_t n) { return coeffs_.at(n); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    require_same_order(o, "+");
    for (std::size_t n = 0; n <= order_; ++n) coeffs_[n] += o.coeffs_[n];
    return *this;
  }

  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    require_same_order(o, "-");
    for (std::size_t n = 0; n <= order_; ++n) coeffs_[n] -= o.coeffs_[n];
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.require_same_order(b, "*");
    TruncatedSeries r(a.order_);
    for (std::size_t i = 0; i <= a.order_; ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j <= a.order_; ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return r;
  }

  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

  // Scale every coefficient by a fixed z-polynomial.
  friend TruncatedSeries operator*(const TruncatedSeries& a, const LaurentPoly& p) {
    TruncatedSeries r(a.order_);
    for (std::size_t n = 0; n <= a.order_; ++n)
      if (!a.coeffs_[n].is_zero()) r.coeffs_[n] = a.coeffs_[n] * p;
    return r;
  }

  friend TruncatedSeries operator*(const LaurentPoly& p, const TruncatedSeries& a) { return a * p; }

  // Multiply by q^k (shift coefficients up; overflow past the order is lost).
  TruncatedSeries shift_q(std::size_t k) const {
    TruncatedSeries r(order_);
    for (std::size_t n = 0; n + k <= order_; ++n) r.coeffs_[n + k] = coeffs_[n];
    return r;
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  void require_same_order(const TruncatedSeries& o, const char* op) const {
    if (order_ != o.order_)
      throw std::invalid_argument(std::string("TruncatedSeries: operator") + op +
                                  " on mismatched truncation orders");
  }

  std::size_t order_;
  std::vector<LaurentPoly> coeffs_;
};

// Expansion of 1 / (1 - z^{z_exp} q^{q_exp}) to the given order:
// sum_m z^{m z_exp} q^{m q_exp}. q_exp must be positive so the expansion is
// a well-defined power series.
inline TruncatedSeries geometric(long long z_exp, long long q_exp, std::size_t order) {
  if (q_exp < 1) throw std::invalid_argument("geometric: q exponent must be positive");
  TruncatedSeries r(order);
  long long m = 0;
  for (unsigned long long n = 0; n <= order; n += static_cast<unsigned long long>(q_exp), ++m)
    r.at(static_cast<std::size_t>(n)) = LaurentPoly::monomial(1, z_exp * m);
  return r;
}

// Multiplicative inverse of a series whose constant coefficient is +1 or -1
// (the only z-free units that stay units at every truncation order).
inline TruncatedSeries reciprocal(const TruncatedSeries& a) {
  const LaurentPoly& a0 = a[0];
  const bool unit = a0 == LaurentPoly::constant(1) || a0 == LaurentPoly::constant(-1);
  if (!unit)
    throw std::invalid_argument("reciprocal: constant coefficient must be +1 or -1");
  TruncatedSeries r(a.order());
  r.at(0) = a0;  // a0 is its own inverse
  for (std::size_t n = 1; n <= a.order(); ++n) {
    LaurentPoly acc;
    for (std::size_t k = 1; k <= n; ++k) {
      if (a[k].is_zero()) continue;
      acc += a[k] * r[n - k];
    }
    if (!acc.is_zero()) r.at(n) = -(a0 * acc);
  }
  return r;
}

// z d/dz applied coefficientwise.
inline TruncatedSeries z_derivative(const TruncatedSeries& a) {
  TruncatedSeries r(a.order());
  for (std::size_t n = 0; n <= a.order(); ++n) r.at(n) = a[n].z_derivative();
  return r;
}

// Collapse z to 1: every coefficient becomes the constant sum of its terms.
inline TruncatedSeries eval_z_at_one(const TruncatedSeries& a) {
  TruncatedSeries r(a.order());
  for (std::size_t n = 0; n <= a.order(); ++n)
    r.at(n) = LaurentPoly::constant(a[n].eval_at_one());
  return r;
}

// Image of one variable under a monomial substitution: v -> z^{z_exp} q^{q_exp}.
struct MonomialImage {
  long long z_exp;
  long long q_exp;
};

// Simultaneous substitution z -> z_image, q -> q_image. The image of q must
// have positive q-degree and the image of z nonnegative q-degree, so every
// output coefficient up to the order is fully determined by the stored
// coefficients (q-exponents never decrease).
inline TruncatedSeries substitute_monomial(const TruncatedSeries& a, MonomialImage z_image,
                                           MonomialImage q_image) {
  if (q_image.q_exp < 1)
    throw std::invalid_argument("substitute_monomial: image of q needs positive q-degree");
  if (z_image.q_exp < 0)
    throw std::invalid_argument("substitute_monomial: image of z needs nonnegative q-degree");
  TruncatedSeries r(a.order());
  const long long order = static_cast<long long>(a.order());
  for (std::size_t n = 0; n <= a.order(); ++n) {
    for (const auto& [k, c] : a[n].terms()) {
      const long long qe = k * z_image.q_exp + static_cast<long long>(n) * q_image.q_exp;
      if (qe < 0 || qe > order) continue;
      r.at(static_cast<std::size_t>(qe))
          .add_term(k * z_image.z_exp + static_cast<long long>(n) * q_image.z_exp, c);
    }
  }
  return r;
}

// q -> q^m for m >= 1 (coefficient of q^n moves to q^{mn}).
inline TruncatedSeries substitute_q_power(const TruncatedSeries& a, long long m) {
  if (m < 1) throw std::invalid_argument("substitute_q_power: exponent must be positive");
  return substitute_monomial(a, MonomialImage{1, 0}, MonomialImage{0, m});
}

}  // namespace digitlab
