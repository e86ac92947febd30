#include "planetree/systems.hpp"

#include <array>
#include <functional>
#include <mutex>
#include <stdexcept>

namespace planetree {

namespace {

struct Meta {
  std::string name;
  std::vector<std::string> unknowns;
  std::vector<std::string> tags;
  std::string total_tag;
  std::vector<SystemId> deps;
};

const std::array<Meta, 15>& meta_table() {
  static const std::array<Meta, 15> table = {{
      {"T", {"T"}, {"1"}, "1", {}},
      {"S", {"S1", "S2"}, {"sigma1", "sigma2"}, "sigma", {}},
      {"Z", {"Z1", "Z2"}, {"z1", "z2"}, "z", {}},
      {"R", {"R1", "R2"}, {"rho1", "rho2"}, "rho", {SystemId::T}},
      {"D", {"D"}, {"d"}, "d", {SystemId::T}},
      {"W", {"W"}, {"w"}, "w", {SystemId::T, SystemId::D}},
      {"SZ",
       {"SZ11", "SZ12", "SZ21", "SZ22"},
       {"sigma1*z1", "sigma1*z2", "sigma2*z1", "sigma2*z2"},
       "sigma*z",
       {}},
      {"SR",
       {"SR11", "SR12", "SR21", "SR22"},
       {"sigma1*rho1", "sigma1*rho2", "sigma2*rho1", "sigma2*rho2"},
       "sigma*rho",
       {SystemId::S}},
      {"ZR",
       {"ZR11", "ZR12", "ZR21", "ZR22"},
       {"z1*rho1", "z1*rho2", "z2*rho1", "z2*rho2"},
       "z*rho",
       {SystemId::Z}},
      {"SS",
       {"SS11", "SS12", "SS22"},
       {"sigma1^2", "sigma1*sigma2", "sigma2^2"},
       "sigma^2",
       {}},
      {"ZZ",
       {"ZZ11", "ZZ12", "ZZ22"},
       {"z1^2", "z1*z2", "z2^2"},
       "z^2",
       {}},
      {"RR",
       {"RR11", "RR12", "RR22"},
       {"rho1^2", "rho1*rho2", "rho2^2"},
       "rho^2",
       {SystemId::R, SystemId::T}},
      {"DSWS",
       {"DS1", "DS2", "WS1", "WS2"},
       {"d*sigma1", "d*sigma2", "w*sigma1", "w*sigma2"},
       "w*sigma",
       {SystemId::S}},
      {"DZWZ",
       {"DZ1", "DZ2", "WZ1", "WZ2"},
       {"d*z1", "d*z2", "w*z1", "w*z2"},
       "w*z",
       {SystemId::Z}},
      {"DRWR",
       {"DR1", "DR2", "WR1", "WR2"},
       {"d*rho1", "d*rho2", "w*rho1", "w*rho2"},
       "w*rho",
       {SystemId::R, SystemId::T, SystemId::D, SystemId::W}},
  }};
  return table;
}

const Meta& meta_of(SystemId id) { return meta_table()[static_cast<int>(id)]; }

template <typename... R>
Series sum(const Series& a, const R&... rest) {
  Series out = a;
  ((out = series_add(out, rest)), ...);
  return out;
}

Series sc(long k, const Series& f) { return series_scale(mpq_class(k), f); }

Series resized(const Series& f, std::int64_t m) {
  if (f.order() == m) return f;
  return f.order() > m ? f.truncated(m) : f.extended(m);
}

// f / z^k zero-padded back to f's order. The padded top coefficients sit
// inside the internal guard band and never reach the requested order: every
// right-hand side raises the valuation of iterate perturbations, so garbage
// above z^N can only move up, never down into the exact window.
Series dvz(const Series& f, std::int64_t k) {
  return series_divz(f, k).extended(f.order());
}

using Env = std::map<std::string, Series>;
using Step = std::function<std::vector<Series>(const std::vector<Series>&)>;

// One fixed-point iteration step per system, with dependency-only
// subexpressions hoisted out of the loop. Unknown order matches
// meta_of(id).unknowns.
Step make_step(SystemId id, const Env& dep, std::int64_t M) {
  switch (id) {
    case SystemId::T:
      return [](const std::vector<Series>& u) {
        return std::vector<Series>{series_mulz(series_inv1m(u[0]))};
      };

    case SystemId::S:
      return [](const std::vector<Series>& u) {
        const Series &S1 = u[0], &S2 = u[1];
        return std::vector<Series>{
            series_mulz(series_inv1m(S2)),
            series_mulz(series_inv1m(series_add(S1, S2)))};
      };

    case SystemId::Z:
      return [](const std::vector<Series>& u) {
        const Series &Z1 = u[0], &Z2 = u[1];
        Series I = series_inv1m(series_add(Z1, Z2));
        return std::vector<Series>{
            series_mulz(series_mul(Z2, series_mul(I, I))), series_mulz(I)};
      };

    case SystemId::R: {
      Series T = dep.at("T");
      Series IT = series_inv1m(T);
      Series IT2 = series_mul(IT, IT);
      return [T, IT2](const std::vector<Series>& u) {
        const Series &R1 = u[0], &R2 = u[1];
        return std::vector<Series>{
            series_mulz(series_inv1m(series_add(R1, T))),
            series_mulz(series_mul(series_add(R1, R2), IT2))};
      };
    }

    case SystemId::D: {
      Series T = dep.at("T");
      Series IT = series_inv1m(T);
      Series IT2 = series_mul(IT, IT);
      Series base = series_sub(series_zderiv(T), T);
      return [IT2, base](const std::vector<Series>& u) {
        return std::vector<Series>{
            series_add(series_mulz(series_mul(u[0], IT2)), base)};
      };
    }

    case SystemId::W: {
      Series T = dep.at("T");
      Series D = dep.at("D");
      Series IT = series_inv1m(T);
      Series IT2 = series_mul(IT, IT);
      Series IT3 = series_mul(IT2, IT);
      Series tD = series_zderiv(T);
      Series cross = sc(2, series_mulz(series_mul(
                            series_mul(tD, series_add(D, tD)), IT3)));
      return [D, IT2, cross](const std::vector<Series>& u) {
        return std::vector<Series>{
            sum(D, series_mulz(series_mul(u[0], IT2)), cross)};
      };
    }

    case SystemId::SZ:
      return [](const std::vector<Series>& u) {
        const Series &s11 = u[0], &s12 = u[1], &s21 = u[2], &s22 = u[3];
        Series A = series_inv1m(series_add(s21, s22));
        Series A2 = series_mul(A, A);
        Series B = series_inv1m(sum(s11, s12, s21, s22));
        Series B2 = series_mul(B, B);
        return std::vector<Series>{
            series_mulz(series_mul(s22, A2)), series_mulz(A),
            series_mulz(series_mul(series_add(s12, s22), B2)),
            series_mulz(B)};
      };

    case SystemId::SR: {
      Series S1 = dep.at("S1");
      Series S2 = dep.at("S2");
      Series S1sq = series_mul(S1, S1);
      Series S2sq = series_mul(S2, S2);
      Series Ssum = series_add(S1, S2);
      return [S2, S1sq, S2sq, Ssum](const std::vector<Series>& u) {
        const Series &r11 = u[0], &r12 = u[1], &r21 = u[2], &r22 = u[3];
        return std::vector<Series>{
            series_mulz(series_inv1m(series_add(r21, S2))),
            dvz(series_mul(S1sq, series_add(r21, r22)), 1),
            series_mulz(series_inv1m(sum(r11, r21, Ssum))),
            dvz(series_mul(S2sq, sum(r11, r12, r21, r22)), 1)};
      };
    }

    case SystemId::ZR: {
      Series Z1 = dep.at("Z1");
      Series Z2 = dep.at("Z2");
      Series Z2sq = series_mul(Z2, Z2);
      Series Zsum = series_add(Z1, Z2);
      Series Z1Z2x2 = sc(2, series_mul(Z1, Z2));
      return [Z2, Z2sq, Zsum, Z1Z2x2](const std::vector<Series>& u) {
        const Series &r11 = u[0], &r12 = u[1], &r21 = u[2], &r22 = u[3];
        Series I = series_inv1m(sum(r11, r21, Zsum));
        Series I2 = series_mul(I, I);
        Series tot = sum(r11, r12, r21, r22);
        return std::vector<Series>{
            series_mulz(series_mul(series_add(r21, Z2), I2)),
            dvz(series_add(series_mul(Z2sq, series_add(r21, r22)),
                           series_mul(Z1Z2x2, tot)),
                1),
            series_mulz(I), dvz(series_mul(Z2sq, tot), 1)};
      };
    }

    case SystemId::SS:
      return [](const std::vector<Series>& u) {
        const Series &s11 = u[0], &s12 = u[1], &s22 = u[2];
        return std::vector<Series>{
            series_mulz(series_inv1m(s22)),
            series_mulz(series_inv1m(series_add(s12, s22))),
            series_mulz(series_inv1m(sum(s11, sc(2, s12), s22)))};
      };

    case SystemId::ZZ:
      return [](const std::vector<Series>& u) {
        const Series &z11 = u[0], &z12 = u[1], &z22 = u[2];
        Series I = series_inv1m(sum(z11, sc(2, z12), z22));
        Series I2 = series_mul(I, I);
        Series I3 = series_mul(I2, I);
        Series p = series_add(z12, z22);
        return std::vector<Series>{
            series_add(series_mulz(series_mul(z22, I2)),
                       sc(2, series_mulz(series_mul(series_mul(p, p), I3)))),
            series_mulz(series_mul(p, I2)), series_mulz(I)};
      };

    case SystemId::RR: {
      Series T = dep.at("T");
      Series R1 = dep.at("R1");
      Series R2 = dep.at("R2");
      Series R1sq = series_mul(R1, R1);
      Series Tsq = series_mul(T, T);
      Series Rsum = series_add(R1, R2);
      Series twoR1T = series_add(sc(2, R1), T);
      Series c22 = sc(2, dvz(series_mul(series_mul(R2, R2),
                                        series_sub(Series::one(T.order()), T)),
                             1));
      return [R1sq, Tsq, Rsum, twoR1T, c22](const std::vector<Series>& u) {
        const Series &r11 = u[0], &r12 = u[1], &r22 = u[2];
        Series tot = sum(r11, sc(2, r12), r22);
        return std::vector<Series>{
            series_mulz(series_inv1m(series_add(r11, twoR1T))),
            dvz(series_mul(R1sq, sum(r11, r12, Rsum)), 1),
            series_add(dvz(series_mul(Tsq, tot), 1), c22)};
      };
    }

    case SystemId::DSWS: {
      Series S1 = dep.at("S1");
      Series S2 = dep.at("S2");
      Series s1d = series_zderiv(S1);
      Series s2d = series_zderiv(S2);
      Series S2sq = series_mul(S2, S2);
      Series sd = series_add(s1d, s2d);
      Series b1 = series_sub(s1d, S1);
      Series b2 = series_sub(s2d, S2);
      Series pair12 = sc(2, series_mul(series_mul(S1, S2), s2d));
      Series S2cu_sd = series_mul(series_mul(S2sq, S2), sd);
      return [S2, S2sq, s2d, sd, b1, b2, pair12,
              S2cu_sd](const std::vector<Series>& u) {
        const Series &d1 = u[0], &d2 = u[1], &w1 = u[2], &w2 = u[3];
        Series dsum = series_add(d1, d2);
        return std::vector<Series>{
            series_add(series_mul(d2, S2), b1),
            series_add(dvz(series_mul(S2sq, dsum), 1), b2),
            sum(d1, series_mul(S2, w2),
                dvz(series_mul(pair12, series_add(d2, s2d)), 1)),
            sum(d2, dvz(series_mul(S2sq, series_add(w1, w2)), 1),
                sc(2, dvz(series_mul(S2cu_sd, series_add(dsum, sd)), 2)))};
      };
    }

    case SystemId::DZWZ: {
      Series Z1 = dep.at("Z1");
      Series Z2 = dep.at("Z2");
      Series z1d = series_zderiv(Z1);
      Series z2d = series_zderiv(Z2);
      Series Z2sq = series_mul(Z2, Z2);
      Series Z2cu = series_mul(Z2sq, Z2);
      Series zsd = series_add(z1d, z2d);
      Series Z1Z2 = series_mul(Z1, Z2);
      Series Z1Z2sq = series_mul(Z1, Z2sq);
      Series b1 = series_sub(z1d, Z1);
      Series b2 = series_sub(z2d, Z2);
      return [Z1, Z2sq, Z2cu, zsd, Z1Z2, Z1Z2sq, b1, b2,
              z2d](const std::vector<Series>& u) {
        const Series &d1 = u[0], &d2 = u[1], &w1 = u[2], &w2 = u[3];
        Series dsum = series_add(d1, d2);
        Series wsum = series_add(w1, w2);
        Series dfull = series_add(dsum, zsd);
        Series zsd_df = series_mul(zsd, dfull);
        Series inner = series_add(series_mul(series_add(d2, z2d), zsd),
                                  series_mul(z2d, dfull));
        return std::vector<Series>{
            sum(sc(2, dvz(series_mul(Z1Z2, dsum), 1)),
                dvz(series_mul(Z2sq, d2), 1), b1),
            series_add(dvz(series_mul(Z2sq, dsum), 1), b2),
            sum(d1, sc(2, dvz(series_mul(Z1Z2, wsum), 1)),
                dvz(series_mul(Z2sq, w2), 1),
                sc(2, dvz(series_mul(Z1, inner), 1)),
                sc(6, dvz(series_mul(Z1Z2sq, zsd_df), 2))),
            sum(d2, dvz(series_mul(Z2sq, wsum), 1),
                sc(2, dvz(series_mul(Z2cu, zsd_df), 2)))};
      };
    }

    case SystemId::DRWR: {
      Series R1 = dep.at("R1");
      Series R2 = dep.at("R2");
      Series T = dep.at("T");
      Series D = dep.at("D");
      Series W = dep.at("W");
      Series r1d = series_zderiv(R1);
      Series r2d = series_zderiv(R2);
      Series td = series_zderiv(T);
      Series R1sq = series_mul(R1, R1);
      Series Tsq = series_mul(T, T);
      Series Tcu = series_mul(Tsq, T);
      Series T4 = series_mul(Tcu, T);
      Series Rsum = series_add(R1, R2);
      Series rd = series_add(r1d, r2d);
      Series Dtd = series_add(D, td);
      Series b1 = series_sub(r1d, R1);
      Series b2 = series_sub(r2d, R2);
      Series R1cu_r1td = series_mul(series_mul(R1sq, R1),
                                    series_add(r1d, td));
      Series D_r1td = sum(D, r1d, td);
      Series d2_c = dvz(sc(2, series_mul(series_mul(D, T), R2)), 1);
      Series Tcu_td = series_mul(Tcu, td);
      Series w2_c = sum(
          sc(2, dvz(series_mul(Tcu, series_mul(W, Rsum)), 2)),
          sc(2, dvz(series_mul(Tcu, series_mul(rd, Dtd)), 2)),
          sc(6, dvz(series_mul(T4, series_mul(td, series_mul(Dtd, Rsum))), 3)));
      return [D, W, R1sq, Tsq, rd, b1, b2, R1cu_r1td, D_r1td, d2_c, Tcu_td,
              w2_c](const std::vector<Series>& u) {
        const Series &d1 = u[0], &d2 = u[1], &w1 = u[2], &w2 = u[3];
        return std::vector<Series>{
            series_add(dvz(series_mul(R1sq, series_add(d1, D)), 1), b1),
            sum(d2_c, dvz(series_mul(Tsq, series_add(d1, d2)), 1), b2),
            sum(d1, dvz(series_mul(R1sq, series_add(w1, W)), 1),
                sc(2, dvz(series_mul(R1cu_r1td, series_add(d1, D_r1td)), 2))),
            sum(d2, dvz(series_mul(Tsq, series_add(w1, w2)), 1),
                sc(2, dvz(series_mul(Tcu_td, series_add(series_add(d1, d2),
                                                        rd)),
                          2)),
                w2_c)};
      };
    }
  }
  throw std::logic_error("make_step: unhandled system");
}

Series total_of(SystemId id,
                const std::vector<std::pair<std::string, Series>>& u) {
  switch (id) {
    case SystemId::T:
    case SystemId::D:
    case SystemId::W:
      return u[0].second;
    case SystemId::S:
    case SystemId::Z:
    case SystemId::R:
      return series_add(u[0].second, u[1].second);
    case SystemId::SZ:
    case SystemId::SR:
    case SystemId::ZR:
      return sum(u[0].second, u[1].second, u[2].second, u[3].second);
    case SystemId::SS:
    case SystemId::ZZ:
    case SystemId::RR:
      return sum(u[0].second, sc(2, u[1].second), u[2].second);
    case SystemId::DSWS:
    case SystemId::DZWZ:
    case SystemId::DRWR:
      return series_add(u[2].second, u[3].second);
  }
  throw std::logic_error("total_of: unhandled system");
}

SystemSolution slice(const SystemSolution& s, std::int64_t order) {
  if (s.order == order) return s;
  SystemSolution out{s.id, order, {}, s.total.truncated(order)};
  out.unknowns.reserve(s.unknowns.size());
  for (const auto& [nm, ser] : s.unknowns) {
    out.unknowns.emplace_back(nm, ser.truncated(order));
  }
  return out;
}

SystemSolution solve_fresh(SystemId id, std::int64_t order) {
  const Meta& meta = meta_of(id);
  // guard band: the deepest z-shift in any right-hand side is 3, so four
  // extra coefficients keep every divz exact at the requested order
  const std::int64_t M = order + 4;
  Env dep;
  for (SystemId d : meta.deps) {
    SystemSolution ds = solve(d, M);
    for (auto& [nm, ser] : ds.unknowns) dep.emplace(nm, std::move(ser));
  }
  Step step = make_step(id, dep, M);

  const std::size_t nu = meta.unknowns.size();
  std::vector<Series> cur(nu, Series::zero(M));
  // after k iterations all coefficients through z^k are exact; order+1
  // iterations converge, one more must change nothing below z^{order+1}
  for (std::int64_t it = 0; it < order + 2; ++it) {
    std::vector<Series> next = step(cur);
    for (Series& s : next) s = resized(s, M);
    if (it == order + 1) {
      for (std::size_t i = 0; i < nu; ++i) {
        if (!(next[i].truncated(order) == cur[i].truncated(order))) {
          throw std::logic_error(
              "fixed-point iteration did not stabilize: system " + meta.name +
              " unknown " + meta.unknowns[i]);
        }
      }
    }
    cur = std::move(next);
  }

  SystemSolution out{id, order, {}, Series::zero(order)};
  out.unknowns.reserve(nu);
  for (std::size_t i = 0; i < nu; ++i) {
    Series s = cur[i].truncated(order);
    for (std::int64_t k = 0; k <= order; ++k) {
      if (mpz_cmp_ui(s[k].get_den().get_mpz_t(), 1) != 0) {
        throw std::logic_error("transcription error: system " + meta.name +
                               " unknown " + meta.unknowns[i] +
                               " has a non-integer coefficient at z^" +
                               std::to_string(k));
      }
      if (sgn(s[k]) < 0) {
        throw std::logic_error("transcription error: system " + meta.name +
                               " unknown " + meta.unknowns[i] +
                               " has a negative coefficient at z^" +
                               std::to_string(k));
      }
    }
    out.unknowns.emplace_back(meta.unknowns[i], std::move(s));
  }
  out.total = total_of(id, out.unknowns);
  return out;
}

std::mutex g_memo_mu;
std::map<SystemId, SystemSolution>& memo() {
  static std::map<SystemId, SystemSolution> m;
  return m;
}

}  // namespace

const std::vector<SystemId>& all_systems() {
  static const std::vector<SystemId> ids = [] {
    std::vector<SystemId> v;
    for (int i = 0; i < 15; ++i) v.push_back(static_cast<SystemId>(i));
    return v;
  }();
  return ids;
}

const std::string& system_name(SystemId id) { return meta_of(id).name; }

SystemId system_from_name(const std::string& name) {
  for (SystemId id : all_systems()) {
    if (meta_of(id).name == name) return id;
  }
  throw std::invalid_argument("unknown system: " + name);
}

const std::vector<std::string>& unknown_names(SystemId id) {
  return meta_of(id).unknowns;
}

const std::string& unknown_tag(SystemId id, const std::string& unknown) {
  const Meta& m = meta_of(id);
  for (std::size_t i = 0; i < m.unknowns.size(); ++i) {
    if (m.unknowns[i] == unknown) return m.tags[i];
  }
  throw std::invalid_argument("system " + m.name + " has no unknown named " +
                              unknown);
}

const std::string& total_tag(SystemId id) { return meta_of(id).total_tag; }

const Series& SystemSolution::unknown(const std::string& name) const {
  for (const auto& [nm, s] : unknowns) {
    if (nm == name) return s;
  }
  throw std::out_of_range("system " + system_name(id) +
                          " has no unknown named " + name);
}

SystemSolution solve(SystemId id, std::int64_t order) {
  if (order < 1) throw std::invalid_argument("solve: order must be >= 1");
  {
    std::lock_guard<std::mutex> lock(g_memo_mu);
    auto it = memo().find(id);
    if (it != memo().end() && it->second.order >= order) {
      return slice(it->second, order);
    }
  }
  // computed outside the lock; a concurrent duplicate solve is idempotent
  SystemSolution fresh = solve_fresh(id, order);
  std::lock_guard<std::mutex> lock(g_memo_mu);
  auto [it, inserted] = memo().try_emplace(id, fresh);
  if (!inserted && it->second.order < order) it->second = fresh;
  return fresh;
}

Series evaluate_bivariate(const BivariatePoly& poly, const Series& s) {
  const std::int64_t n = s.order();
  std::int64_t maxdeg = 0;
  for (const BivariateTerm& t : poly.terms) {
    maxdeg = std::max(maxdeg, t.spow);
  }
  std::vector<Series> cz(maxdeg + 1, Series::zero(n));
  for (const BivariateTerm& t : poly.terms) {
    if (t.zpow <= n) cz[t.spow].coeff(t.zpow) += t.coeff;
  }
  Series acc = cz[maxdeg];
  for (std::int64_t d = maxdeg - 1; d >= 0; --d) {
    acc = series_add(series_mul(acc, s), cz[d]);
  }
  return acc;
}

bool verify_annihilator(const Series& s, const BivariatePoly& poly) {
  Series v = evaluate_bivariate(poly, s);
  return v.valuation() > v.order();
}

const std::vector<BivariatePoly>& annihilator_catalog() {
  static const std::vector<BivariatePoly> cat = {
      // S2^3 - 2 S2^2 + S2 - z
      {"S2", {{0, 3, 1}, {0, 2, -2}, {0, 1, 1}, {1, 0, -1}}},
      // Z2^4 + z Z2^2 - z Z2 + z^2
      {"Z2", {{0, 4, 1}, {1, 2, 1}, {1, 1, -1}, {2, 0, 1}}},
      // s^10 + 2z s^8 - 3z s^7 + z^2 s^6 - 4z^2 s^5 + 3z^2 s^4
      //   - z^3 s^3 + 2z^3 s^2 - z^3 s + z^4
      {"SZ22",
       {{0, 10, 1},
        {1, 8, 2},
        {1, 7, -3},
        {2, 6, 1},
        {2, 5, -4},
        {2, 4, 3},
        {3, 3, -1},
        {3, 2, 2},
        {3, 1, -1},
        {4, 0, 1}}},
      // z s^9 - 6z^2 s^7 - 4z^3 s^6 + 7z^3 s^5 - 2z^4 s^4
      //   - (z^5 + 3z^4) s^3 + z^5 s^2 + z^5 s - z^6
      {"SR11",
       {{1, 9, 1},
        {2, 7, -6},
        {3, 6, -4},
        {3, 5, 7},
        {4, 4, -2},
        {5, 3, -1},
        {4, 3, -3},
        {5, 2, 1},
        {5, 1, 1},
        {6, 0, -1}}},
      // s^6 - 6s^5 + (4z+14)s^4 + (8z^2-20z-16)s^3 + (4z^3-30z^2+36z+9)s^2
      //   - (12z^3-36z^2+28z+2)s - (z^4-8z^3+14z^2-8z)
      {"SS_total",
       {{0, 6, 1},  {0, 5, -6}, {1, 4, 4},   {0, 4, 14}, {2, 3, 8},
        {1, 3, -20}, {0, 3, -16}, {3, 2, 4},  {2, 2, -30}, {1, 2, 36},
        {0, 2, 9},  {3, 1, -12}, {2, 1, 36}, {1, 1, -28}, {0, 1, -2},
        {4, 0, -1}, {3, 0, 8},  {2, 0, -14}, {1, 0, 8}}},
      // s^8 - 7s^7 - (z-21)s^6 + (4z-35)s^5 + (2z^2-5z+35)s^4 - (7z^2+21)s^3
      //   - (z^3-9z^2-5z-7)s^2 + (2z^3-5z^2-4z-1)s + (z^4-z^3+z^2+z)
      {"ZZ_total",
       {{0, 8, 1},  {0, 7, -7}, {1, 6, -1}, {0, 6, 21}, {1, 5, 4},
        {0, 5, -35}, {2, 4, 2}, {1, 4, -5}, {0, 4, 35}, {2, 3, -7},
        {0, 3, -21}, {3, 2, -1}, {2, 2, 9}, {1, 2, 5},  {0, 2, 7},
        {3, 1, 2},  {2, 1, -5}, {1, 1, -4}, {0, 1, -1}, {4, 0, 1},
        {3, 0, -1}, {2, 0, 1},  {1, 0, 1}}},
  };
  return cat;
}

const BivariatePoly& annihilator(const std::string& name) {
  for (const BivariatePoly& p : annihilator_catalog()) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("unknown annihilator: " + name);
}

std::map<std::string, Series> closed_forms(std::int64_t order) {
  if (order < 2) {
    throw std::invalid_argument("closed_forms: order must be >= 2");
  }
  const Series one = Series::one(order);
  const Series z = Series::z(order);

  Series q1 = series_sqrt(series_sub(one, sc(4, z)));
  Series q2 = sc(2, series_sqrt(series_scale(
                       mpq_class(1, 2), sum(one, sc(-10, z), q1))));
  Series t = series_scale(mpq_class(1, 2), series_sub(one, q1));
  Series r1 = series_scale(mpq_class(1, 4), sum(one, q1, series_neg(q2)));
  Series r2 = series_mul(
      r1, series_mul(series_sub(one, q1), series_inv_unit(sc(2, q1))));
  Series q1sq = series_mul(q1, q1);
  Series d = sc(2, series_mulz(
                     series_inv_unit(series_mul(q1sq, series_add(one, q1))),
                     2));
  Series w = series_mulz(series_inv_unit(series_mul(q1sq, q1sq)), 2);

  const std::pair<const char*, const Series*> rooted[] = {
      {"T", &t}, {"R1", &r1}, {"R2", &r2}, {"D", &d}, {"W", &w}};
  for (const auto& [nm, s] : rooted) {
    if ((*s)[0] != 0) {
      throw std::domain_error(std::string("closed form ") + nm +
                              ": branch violation, nonzero constant term");
    }
  }

  return {{"q1", q1}, {"q2", q2}, {"T", t}, {"R1", r1},
          {"R2", r2}, {"D", d},   {"W", w}};
}

}  // namespace planetree
