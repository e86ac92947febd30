#include "planetree/series.hpp"

#include <json.hpp>

#include <stdexcept>

namespace planetree {

namespace {

void require_same_order(const Series& a, const Series& b, const char* op) {
  if (a.order() != b.order()) {
    throw std::invalid_argument(std::string(op) + ": order mismatch (" +
                                std::to_string(a.order()) + " vs " +
                                std::to_string(b.order()) + ")");
  }
}

}  // namespace

Series Series::one(std::int64_t order) {
  Series s(order);
  s.c_[0] = 1;
  return s;
}

Series Series::z(std::int64_t order) {
  Series s(order);
  if (order >= 1) s.c_[1] = 1;
  return s;
}

Series Series::from_ints(const std::vector<long>& values) {
  Series s(static_cast<std::int64_t>(values.size()) - 1);
  for (std::size_t i = 0; i < values.size(); ++i) s.c_[i] = values[i];
  return s;
}

std::int64_t Series::valuation() const {
  for (std::int64_t k = 0; k <= order_; ++k)
    if (c_[k] != 0) return k;
  return order_ + 1;
}

bool Series::is_integral() const {
  for (const auto& q : c_)
    if (q.get_den() != 1) return false;
  return true;
}

Series Series::truncated(std::int64_t new_order) const {
  if (new_order > order_)
    throw std::invalid_argument("truncated: new order exceeds current order");
  Series s(new_order);
  for (std::int64_t k = 0; k <= new_order; ++k) s.c_[k] = c_[k];
  return s;
}

Series Series::extended(std::int64_t new_order) const {
  if (new_order < order_)
    throw std::invalid_argument("extended: new order below current order");
  Series s(new_order);
  for (std::int64_t k = 0; k <= order_; ++k) s.c_[k] = c_[k];
  return s;
}

std::string coeff_to_string(const mpq_class& q) { return q.get_str(); }

std::string Series::to_json() const {
  nlohmann::ordered_json j;
  j["order"] = order_;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& q : c_) arr.push_back(coeff_to_string(q));
  j["coeffs"] = std::move(arr);
  return j.dump();
}

Series Series::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::int64_t order = j.at("order").get<std::int64_t>();
  const auto& arr = j.at("coeffs");
  if (static_cast<std::int64_t>(arr.size()) != order + 1)
    throw std::invalid_argument("series json: coeffs length != order + 1");
  Series s(order);
  for (std::int64_t k = 0; k <= order; ++k) {
    mpq_class q(arr[k].get<std::string>());
    q.canonicalize();
    s.c_[k] = q;
  }
  return s;
}

Series series_add(const Series& a, const Series& b) {
  require_same_order(a, b, "series_add");
  Series out(a.order());
  for (std::int64_t k = 0; k <= a.order(); ++k) out.coeff(k) = a[k] + b[k];
  return out;
}

Series series_sub(const Series& a, const Series& b) {
  require_same_order(a, b, "series_sub");
  Series out(a.order());
  for (std::int64_t k = 0; k <= a.order(); ++k) out.coeff(k) = a[k] - b[k];
  return out;
}

Series series_neg(const Series& a) {
  Series out(a.order());
  for (std::int64_t k = 0; k <= a.order(); ++k) out.coeff(k) = -a[k];
  return out;
}

Series series_scale(const mpq_class& k, const Series& a) {
  Series out(a.order());
  for (std::int64_t i = 0; i <= a.order(); ++i) out.coeff(i) = k * a[i];
  return out;
}

namespace {

// out[k] = sum_{i} a[i] * b[k-i]; integer kernel on the raw mpz numerators
void mul_coeff_int(const Series& a, const Series& b, std::int64_t k,
                   mpq_class& out) {
  mpz_class acc;
  for (std::int64_t i = 0; i <= k; ++i) {
    mpz_addmul(acc.get_mpz_t(), mpq_numref(a[i].get_mpq_t()),
               mpq_numref(b[k - i].get_mpq_t()));
  }
  out = mpq_class(std::move(acc));
}

void mul_coeff_rat(const Series& a, const Series& b, std::int64_t k,
                   mpq_class& out) {
  mpq_class acc, term;
  for (std::int64_t i = 0; i <= k; ++i) {
    term = a[i] * b[k - i];
    acc += term;
  }
  out = std::move(acc);
}

}  // namespace

Series series_mul(const Series& a, const Series& b) {
  require_same_order(a, b, "series_mul");
  const std::int64_t n = a.order();
  Series out(n);
  if (a.is_integral() && b.is_integral()) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t k = 0; k <= n; ++k) mul_coeff_int(a, b, k, out.coeff(k));
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t k = 0; k <= n; ++k) mul_coeff_rat(a, b, k, out.coeff(k));
  }
  return out;
}

Series series_mul_serial(const Series& a, const Series& b) {
  require_same_order(a, b, "series_mul_serial");
  const std::int64_t n = a.order();
  Series out(n);
  if (a.is_integral() && b.is_integral()) {
    for (std::int64_t k = 0; k <= n; ++k) mul_coeff_int(a, b, k, out.coeff(k));
  } else {
    for (std::int64_t k = 0; k <= n; ++k) mul_coeff_rat(a, b, k, out.coeff(k));
  }
  return out;
}

Series series_inv1m(const Series& f) {
  if (f.order() >= 0 && f[0] != 0)
    throw std::domain_error("series_inv1m: valuation must be >= 1");
  const std::int64_t n = f.order();
  Series g(n);
  g.coeff(0) = 1;
  if (f.is_integral()) {
    // g_k = sum_{j=1..k} f_j g_{k-j}, all integral
    for (std::int64_t k = 1; k <= n; ++k) {
      mpz_class acc;
      for (std::int64_t j = 1; j <= k; ++j) {
        mpz_addmul(acc.get_mpz_t(), mpq_numref(f[j].get_mpq_t()),
                   mpq_numref(g[k - j].get_mpq_t()));
      }
      g.coeff(k) = mpq_class(std::move(acc));
    }
  } else {
    for (std::int64_t k = 1; k <= n; ++k) {
      mpq_class acc;
      for (std::int64_t j = 1; j <= k; ++j) acc += f[j] * g[k - j];
      g.coeff(k) = std::move(acc);
    }
  }
  return g;
}

Series series_zderiv(const Series& f) {
  Series out(f.order());
  for (std::int64_t k = 1; k <= f.order(); ++k) out.coeff(k) = k * f[k];
  return out;
}

Series series_divz(const Series& f, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("series_divz: k must be positive");
  if (f.order() < k)
    throw std::invalid_argument("series_divz: order smaller than shift");
  if (f.valuation() < k)
    throw std::domain_error("series_divz: inexact division (valuation " +
                            std::to_string(f.valuation()) + " < " +
                            std::to_string(k) + ")");
  Series out(f.order() - k);
  for (std::int64_t i = 0; i <= out.order(); ++i) out.coeff(i) = f[i + k];
  return out;
}

Series series_mulz(const Series& f, std::int64_t k) {
  Series out(f.order());
  for (std::int64_t i = k; i <= f.order(); ++i) out.coeff(i) = f[i - k];
  return out;
}

Series series_sqrt(const Series& f) {
  const std::int64_t n = f.order();
  mpq_class c0 = f[0];
  if (sgn(c0) < 0) throw std::domain_error("series_sqrt: negative constant term");
  mpz_class num = c0.get_num(), den = c0.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t()))
    throw std::domain_error("series_sqrt: constant term is not a rational square");
  mpz_class rnum, rden;
  mpz_sqrt(rnum.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rden.get_mpz_t(), den.get_mpz_t());
  Series g(n);
  mpq_class root(rnum, rden);
  root.canonicalize();
  g.coeff(0) = root;
  if (g[0] == 0) {
    if (f.valuation() <= n)
      throw std::domain_error("series_sqrt: zero constant term with nonzero tail");
    return g;
  }
  mpq_class two_g0 = 2 * g[0];
  for (std::int64_t k = 1; k <= n; ++k) {
    mpq_class acc;
    for (std::int64_t j = 1; j < k; ++j) acc += g[j] * g[k - j];
    g.coeff(k) = (f[k] - acc) / two_g0;
  }
  return g;
}

Series series_inv_unit(const Series& f) {
  if (f[0] == 0)
    throw std::domain_error("series_inv_unit: zero constant term");
  const std::int64_t n = f.order();
  Series g(n);
  g.coeff(0) = mpq_class(1) / f[0];
  for (std::int64_t k = 1; k <= n; ++k) {
    mpq_class acc;
    for (std::int64_t j = 1; j <= k; ++j) acc += f[j] * g[k - j];
    g.coeff(k) = -acc / f[0];
  }
  return g;
}

}  // namespace planetree
