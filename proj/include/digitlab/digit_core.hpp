#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "digitlab/natural.hpp"

namespace digitlab {

// Radix for positional arithmetic. Values below 2 are rejected.
class Base {
 public:
  explicit Base(Natural value) : value_(std::move(value)) {
    if (value_ < 2) throw std::domain_error("Base: radix must be at least 2");
  }
  const Natural& value() const noexcept { return value_; }
  friend bool operator==(const Base&, const Base&) = default;

 private:
  Natural value_;
};

// Little-endian digit expansion: digits[i] is the coefficient of base^i.
// Canonical form: no trailing high zero; zero is the empty sequence.
struct DigitVec {
  Base base;
  std::vector<Natural> digits;
};

inline DigitVec to_digits(Natural n, const Base& base) {
  if (n < 0) throw std::domain_error("to_digits: input must be nonnegative");
  DigitVec out{base, {}};
  Natural q, r;
  while (n != 0) {
    boost::multiprecision::divide_qr(n, base.value(), q, r);
    out.digits.push_back(r);
    n = q;
  }
  return out;
}

inline Natural digit_sum(Natural n, const Base& base) {
  if (n < 0) throw std::domain_error("digit_sum: input must be nonnegative");
  Natural sum = 0, q, r;
  while (n != 0) {
    boost::multiprecision::divide_qr(n, base.value(), q, r);
    sum += r;
    n = q;
  }
  return sum;
}

// Column-by-column record of a multi-summand schoolbook addition.
//
// Column j holds the digit-j values of every summand plus the carry from
// column j-1; the carry out of column j is the floor quotient by the base.
// The carry out of the top column is brought down whole (it may reach or
// exceed the base when there are many summands), so column_carries stops at
// the highest digit position among the summands.
struct AdditionTrace {
  Base base;
  std::vector<Natural> summands;
  std::vector<Natural> column_carries;  // carries out of columns 0..t; empty iff all summands are 0
  Natural terminal_carry;               // carry out of the top column (0 when all summands are 0)
  Natural carry_sum;                    // sum of column_carries
  Natural correction;                   // terminal_carry - digit_sum(terminal_carry) + (base-1)*carry_sum
  Natural total;                        // sum of the summands
};

namespace detail {

// Carry recursion over per-column digit totals, shared by the materialized
// and the repeated-summand entry points (identical column totals give an
// identical trace, so correction_repeat can scale one digit row by the
// repeat count instead of materializing the copies).
inline AdditionTrace trace_from_columns(const Base& base, std::vector<Natural> summands,
                                        const std::vector<Natural>& column_totals,
                                        Natural total) {
  AdditionTrace t{base, std::move(summands), {}, 0, 0, 0, std::move(total)};
  t.column_carries.reserve(column_totals.size());
  Natural carry = 0;
  for (const Natural& col : column_totals) {
    carry = (col + carry) / base.value();
    t.column_carries.push_back(carry);
    t.carry_sum += carry;
  }
  if (!t.column_carries.empty()) t.terminal_carry = t.column_carries.back();
  t.correction =
      t.terminal_carry - digit_sum(t.terminal_carry, base) + (base.value() - 1) * t.carry_sum;
  return t;
}

}  // namespace detail

inline AdditionTrace add_with_trace(std::span<const Natural> summands, const Base& base) {
  if (summands.empty()) throw std::invalid_argument("add_with_trace: need at least one summand");
  std::vector<DigitVec> rows;
  rows.reserve(summands.size());
  std::size_t width = 0;
  Natural total = 0;
  for (const Natural& a : summands) {
    total += a;
    rows.push_back(to_digits(a, base));
    width = std::max(width, rows.back().digits.size());
  }
  std::vector<Natural> columns(width, Natural(0));
  for (const DigitVec& row : rows)
    for (std::size_t j = 0; j < row.digits.size(); ++j) columns[j] += row.digits[j];
  return detail::trace_from_columns(base, std::vector<Natural>(summands.begin(), summands.end()),
                                    columns, std::move(total));
}

inline AdditionTrace add_with_trace(const std::vector<Natural>& summands, const Base& base) {
  return add_with_trace(std::span<const Natural>(summands.data(), summands.size()), base);
}

inline Natural carry_sum(std::span<const Natural> summands, const Base& base) {
  return add_with_trace(summands, base).carry_sum;
}

inline Natural carry_sum(const std::vector<Natural>& summands, const Base& base) {
  return add_with_trace(summands, base).carry_sum;
}

inline Natural correction(std::span<const Natural> summands, const Base& base) {
  return add_with_trace(summands, base).correction;
}

inline Natural correction(const std::vector<Natural>& summands, const Base& base) {
  return add_with_trace(summands, base).correction;
}

// Correction term for b identical copies of a. Column totals are the digits
// of a scaled by b, so the cost is independent of b; agrees with
// correction(<b copies of a>) by construction. b = 0 gives 0.
inline Natural correction_repeat(const Natural& a, const Natural& b, const Base& base) {
  if (a < 0 || b < 0) throw std::domain_error("correction_repeat: inputs must be nonnegative");
  if (b == 0) return 0;
  DigitVec d = to_digits(a, base);
  std::vector<Natural> columns;
  columns.reserve(d.digits.size());
  for (const Natural& digit : d.digits) columns.push_back(digit * b);
  return detail::trace_from_columns(base, {}, columns, a * b).correction;
}

// Closed form for correction({n-1, 1}): (base-1) times the exponent of the
// largest power of the base dividing n.
inline Natural correction_nm1(const Natural& n, const Base& base) {
  if (n < 1) throw std::invalid_argument("correction_nm1: n must be positive");
  Natural m = n, count = 0, q, r;
  for (;;) {
    boost::multiprecision::divide_qr(m, base.value(), q, r);
    if (r != 0) break;
    ++count;
    m = q;
  }
  return (base.value() - 1) * count;
}

// Evaluates both sides of the k-step digit sum recursion
//   digit_sum(n) = digit_sum(n mod k') + digit_sum(k)*floor(n/k)
//                  - sum_{i=1..floor(n/k)} correction({n-ik, k})
// independently and reports whether they agree. Cost grows like n/k.
inline bool digit_sum_recursion_check(const Natural& n, const Natural& k, const Base& base) {
  if (k < 1 || k > n) throw std::invalid_argument("digit_sum_recursion_check: need 1 <= k <= n");
  const Natural m = n / k;
  Natural rhs = digit_sum(n - k * m, base) + digit_sum(k, base) * m;
  std::vector<Natural> pair{0, k};
  for (Natural i = 1; i <= m; ++i) {
    pair[0] = n - i * k;
    rhs -= add_with_trace(pair, base).correction;
  }
  return digit_sum(n, base) == rhs;
}

// Sum of digit_sum over every positive divisor of n, by trial division.
inline Natural divisor_digit_sum(const Natural& n, const Base& base) {
  if (n < 1) throw std::invalid_argument("divisor_digit_sum: n must be positive");
  Natural sum = 0;
  for (Natural d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    sum += digit_sum(d, base);
    const Natural e = n / d;
    if (e != d) sum += digit_sum(e, base);
  }
  return sum;
}

}  // namespace digitlab
