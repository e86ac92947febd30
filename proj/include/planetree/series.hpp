#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace planetree {

// Truncated formal power series over exact rationals.
// A series of order N stores coefficients for z^0..z^N (length N+1).
// The order is part of the value: binary ops require equal orders and
// operations that lose precision (divz) shrink the order explicitly.
class Series {
 public:
  explicit Series(std::int64_t order) : order_(order), c_(order + 1) {}

  static Series zero(std::int64_t order) { return Series(order); }
  static Series one(std::int64_t order);
  static Series z(std::int64_t order);
  // order = values.size() - 1; test convenience
  static Series from_ints(const std::vector<long>& values);

  std::int64_t order() const { return order_; }
  const mpq_class& operator[](std::int64_t k) const { return c_[k]; }
  mpq_class& coeff(std::int64_t k) { return c_[k]; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  // index of first nonzero coefficient; order+1 when the series is zero
  std::int64_t valuation() const;
  bool is_integral() const;
  bool operator==(const Series& o) const { return order_ == o.order_ && c_ == o.c_; }

  Series truncated(std::int64_t new_order) const;  // new_order <= order
  Series extended(std::int64_t new_order) const;   // zero-pad; new_order >= order

  std::string to_json() const;  // {"order":N,"coeffs":["...",...]}
  static Series from_json(const std::string& text);

 private:
  std::int64_t order_;
  std::vector<mpq_class> c_;
};

// exact integers print as decimal, true rationals as "p/q"
std::string coeff_to_string(const mpq_class& q);

// strict ring ops: argument orders must match
Series series_add(const Series& a, const Series& b);
Series series_sub(const Series& a, const Series& b);
Series series_neg(const Series& a);
Series series_scale(const mpq_class& k, const Series& a);

// Cauchy product truncated at the common order.
// series_mul parallelizes over output coefficients when built with OpenMP;
// series_mul_serial is the reference kernel. Both produce identical values.
Series series_mul(const Series& a, const Series& b);
Series series_mul_serial(const Series& a, const Series& b);

// 1/(1-f); requires valuation(f) >= 1
Series series_inv1m(const Series& f);
// z * f'(z); coefficient n of result = n * f_n
Series series_zderiv(const Series& f);
// f / z^k; requires valuation(f) >= k; order of result = order(f) - k
Series series_divz(const Series& f, std::int64_t k);
// multiply by z^k at unchanged order (top coefficients fall off)
Series series_mulz(const Series& f, std::int64_t k = 1);
// sqrt with the branch of positive constant term; constant term must be a
// rational square
Series series_sqrt(const Series& f);
// 1/f for nonzero constant term (closed-form denominators)
Series series_inv_unit(const Series& f);

}  // namespace planetree
