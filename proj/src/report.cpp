#include "planetree/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "planetree/asymptotics.hpp"
#include "planetree/moments.hpp"
#include "planetree/sample.hpp"
#include "planetree/systems.hpp"
#include "planetree/tree.hpp"

namespace planetree {

namespace {

// bad selector values are diagnosed before any computation starts
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string jesc(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += c;
    }
  }
  return out;
}

std::string jstr(const std::string& s) { return '"' + jesc(s) + '"'; }

// raw JSON number token; NaN/inf have no JSON spelling
std::string json_float(double v) {
  return std::isfinite(v) ? format_float(v) : "null";
}

std::string csv_float(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_float(v);
}

void write_artifact(const RunConfig& cfg, const std::string& text) {
  if (cfg.path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(cfg.path, std::ios::binary);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw std::runtime_error("cannot write " + cfg.path);
}

std::vector<std::string> parse_stats(const std::string& list) {
  std::vector<std::string> stats = split(list, ',');
  const IndexBundle probe = compute_indices(parse_tree("()"));
  for (const std::string& tag : stats) {
    try {
      monomial_value(probe, tag);
    } catch (const std::exception& e) {
      throw usage_error(e.what());
    }
  }
  return stats;
}

std::pair<IndexName, IndexName> parse_pair(const std::string& pair) {
  std::vector<std::string> parts = split(pair, ':');
  if (parts.size() != 2) {
    throw usage_error("--pair wants x:y, e.g. sigma:z");
  }
  try {
    return {index_from_name(parts[0]), index_from_name(parts[1])};
  } catch (const std::exception& e) {
    throw usage_error(e.what());
  }
}

// ---------------------------------------------------------------- indices

int cmd_indices(const RunConfig& cfg) {
  Tree t;
  try {
    t = parse_tree(cfg.tree);
  } catch (const std::exception& e) {
    throw usage_error(e.what());
  }
  const IndexBundle b = compute_indices(t);
  std::string out;
  if (cfg.format == "json") {
    out = "{\n";
    out += "  \"sigma\": " + b.sigma().get_str() + ",\n";
    out += "  \"z\": " + b.z().get_str() + ",\n";
    out += "  \"rho\": " + b.rho().get_str() + ",\n";
    out += "  \"d\": " + b.d.get_str() + ",\n";
    out += "  \"w\": " + b.w.get_str() + "\n";
    out += "}\n";
  } else {
    out = "sigma,z,rho,d,w\n";
    out += b.sigma().get_str() + "," + b.z().get_str() + "," +
           b.rho().get_str() + "," + b.d.get_str() + "," + b.w.get_str() +
           "\n";
  }
  write_artifact(cfg, out);
  return 0;
}

// -------------------------------------------------------------- enumerate

int cmd_enumerate(const RunConfig& cfg) {
  const std::vector<std::string> stats = parse_stats(cfg.stats);
  std::string out;
  if (cfg.format == "json") {
    out = "{\n  \"rows\": [\n";
    for (std::int64_t n = 1; n <= cfg.n; ++n) {
      const AggregateRow row = aggregate(n, stats);
      out += "    {\"n\": " + std::to_string(n) +
             ", \"count\": " + row.count.get_str() + ", \"sums\": {";
      for (std::size_t i = 0; i < row.sums.size(); ++i) {
        if (i) out += ", ";
        out += jstr(row.sums[i].first) + ": " + row.sums[i].second.get_str();
      }
      out += "}}";
      out += n == cfg.n ? "\n" : ",\n";
    }
    out += "  ]\n}\n";
  } else {
    out = "n,count";
    for (const std::string& s : stats) out += "," + s;
    out += "\n";
    for (std::int64_t n = 1; n <= cfg.n; ++n) {
      const AggregateRow row = aggregate(n, stats);
      out += std::to_string(n) + "," + row.count.get_str();
      for (const auto& [tag, sum] : row.sums) out += "," + sum.get_str();
      out += "\n";
    }
  }
  write_artifact(cfg, out);
  return 0;
}

// ----------------------------------------------------------------- sample

int cmd_sample(const RunConfig& cfg) {
  const std::vector<std::string> stats = parse_stats(cfg.stats);
  const SampleConfig sc{cfg.n, cfg.m, cfg.seed};
  const auto moments = empirical_moments(sc, stats);
  const std::string meta = std::to_string(cfg.n) + "," +
                           std::to_string(cfg.m) + "," +
                           std::to_string(cfg.seed);
  std::string out;
  if (cfg.format == "json") {
    out = "{\n";
    out += "  \"n\": " + std::to_string(cfg.n) + ",\n";
    out += "  \"count\": " + std::to_string(cfg.m) + ",\n";
    out += "  \"seed\": " + std::to_string(cfg.seed) + ",\n";
    out += "  \"stats\": [\n";
    for (std::size_t i = 0; i < moments.size(); ++i) {
      const auto& [tag, est] = moments[i];
      out += "    {\"stat\": " + jstr(tag) +
             ", \"mean\": " + jstr(coeff_to_string(est.mean)) +
             ", \"mean_float\": " + json_float(est.mean.get_d()) +
             ", \"variance\": " + jstr(coeff_to_string(est.variance)) +
             ", \"variance_float\": " + json_float(est.variance.get_d()) +
             "}";
      out += i + 1 == moments.size() ? "\n" : ",\n";
    }
    out += "  ]\n}\n";
  } else {
    out = "n,count,seed,stat,mean,mean_float,variance,variance_float\n";
    for (const auto& [tag, est] : moments) {
      out += meta + "," + tag + "," + coeff_to_string(est.mean) + "," +
             csv_float(est.mean.get_d()) + "," +
             coeff_to_string(est.variance) + "," +
             csv_float(est.variance.get_d()) + "\n";
    }
  }
  write_artifact(cfg, out);
  return 0;
}

// ----------------------------------------------------------------- series

int cmd_series(const RunConfig& cfg) {
  SystemId id;
  try {
    id = system_from_name(cfg.system);
  } catch (const std::exception& e) {
    throw usage_error(e.what());
  }
  const SystemSolution sol = solve(id, cfg.order);
  std::string out;
  if (cfg.format == "json") {
    out = "{\n";
    out += "  \"system\": " + jstr(system_name(id)) + ",\n";
    out += "  \"order\": " + std::to_string(cfg.order) + ",\n";
    out += "  \"unknowns\": {\n";
    for (std::size_t i = 0; i < sol.unknowns.size(); ++i) {
      out += "    " + jstr(sol.unknowns[i].first) + ": " +
             sol.unknowns[i].second.to_json();
      out += i + 1 == sol.unknowns.size() ? "\n" : ",\n";
    }
    out += "  },\n";
    out += "  \"total\": " + sol.total.to_json() + "\n";
    out += "}\n";
  } else {
    out = "n";
    for (const auto& [name, s] : sol.unknowns) out += "," + name;
    out += ",total\n";
    for (std::int64_t k = 0; k <= cfg.order; ++k) {
      out += std::to_string(k);
      for (const auto& [name, s] : sol.unknowns)
        out += "," + coeff_to_string(s[k]);
      out += "," + coeff_to_string(sol.total[k]) + "\n";
    }
  }
  write_artifact(cfg, out);
  return 0;
}

// ---------------------------------------------------------------- moments

// exact-column rendering of r: rationals only; a Decimal correlation has no
// exact value and lives solely in r_float
std::string r_exact_cell(const CorrelationValue& r) {
  switch (r.kind) {
    case CorrelationValue::Kind::Exact: return coeff_to_string(r.exact);
    case CorrelationValue::Kind::Decimal: return "";
    case CorrelationValue::Kind::Undefined: return "undefined";
    case CorrelationValue::Kind::Unavailable: return "unavailable";
  }
  return "";
}

int cmd_moments(const RunConfig& cfg) {
  const auto [x, y] = parse_pair(cfg.pair);
  std::vector<MomentRow> table;
  try {
    table = correlation_table(x, y, cfg.order, cfg.enum_cap);
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  auto opt_exact = [](const std::optional<mpq_class>& v) {
    return v ? coeff_to_string(*v) : std::string();
  };
  auto opt_float = [](const std::optional<mpq_class>& v) {
    return v ? v->get_d() : std::nan("");
  };
  std::string out;
  if (cfg.format == "json") {
    out = "{\n";
    out += "  \"pair\": " + jstr(cfg.pair) + ",\n";
    out += "  \"max_n\": " + std::to_string(cfg.order) + ",\n";
    out += "  \"rows\": [\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
      const MomentRow& row = table[i];
      auto opt_jexact = [&](const std::optional<mpq_class>& v) {
        return v ? jstr(coeff_to_string(*v)) : std::string("null");
      };
      std::string rcell = r_exact_cell(row.r);
      out += "    {\"n\": " + std::to_string(row.n);
      out += ", \"E(X)\": " + jstr(coeff_to_string(row.e_x));
      out += ", \"E(Y)\": " + jstr(coeff_to_string(row.e_y));
      out += ", \"E(XY)\": " + jstr(coeff_to_string(row.e_xy));
      out += ", \"Var(X)\": " + opt_jexact(row.var_x);
      out += ", \"Var(Y)\": " + opt_jexact(row.var_y);
      out += ", \"Cov\": " + jstr(coeff_to_string(row.cov));
      out += ", \"r\": " + (rcell.empty() ? "null" : jstr(rcell));
      out += ", \"E(X)_float\": " + json_float(row.e_x.get_d());
      out += ", \"E(Y)_float\": " + json_float(row.e_y.get_d());
      out += ", \"E(XY)_float\": " + json_float(row.e_xy.get_d());
      out += ", \"Var(X)_float\": " + json_float(opt_float(row.var_x));
      out += ", \"Var(Y)_float\": " + json_float(opt_float(row.var_y));
      out += ", \"Cov_float\": " + json_float(row.cov.get_d());
      out += ", \"r_float\": " + json_float(row.r.as_double());
      out += "}";
      out += i + 1 == table.size() ? "\n" : ",\n";
    }
    out += "  ]\n}\n";
  } else {
    out =
        "n,E(X),E(Y),E(XY),Var(X),Var(Y),Cov,r,"
        "E(X)_float,E(Y)_float,E(XY)_float,Var(X)_float,Var(Y)_float,"
        "Cov_float,r_float\n";
    for (const MomentRow& row : table) {
      out += std::to_string(row.n);
      out += "," + coeff_to_string(row.e_x);
      out += "," + coeff_to_string(row.e_y);
      out += "," + coeff_to_string(row.e_xy);
      out += "," + opt_exact(row.var_x);
      out += "," + opt_exact(row.var_y);
      out += "," + coeff_to_string(row.cov);
      out += "," + r_exact_cell(row.r);
      out += "," + csv_float(row.e_x.get_d());
      out += "," + csv_float(row.e_y.get_d());
      out += "," + csv_float(row.e_xy.get_d());
      out += "," + csv_float(opt_float(row.var_x));
      out += "," + csv_float(opt_float(row.var_y));
      out += "," + csv_float(row.cov.get_d());
      out += "," + csv_float(row.r.as_double()) + "\n";
    }
  }
  write_artifact(cfg, out);
  return 0;
}

// ------------------------------------------------------------ asymptotics

struct Table1Row {
  std::string pair;
  double ref_amplitude, composed_amplitude;
  double ref_base, composed_base;
  double rel_error;
};

std::vector<Table1Row> table1_rows() {
  const Catalog& cat = reference_catalog();
  std::vector<Table1Row> rows;
  for (const CorrelationAsymptotic& c : compose_correlations(cat)) {
    const CorrelationAsymptotic& ref = cat.correlation(c.x, c.y);
    const double ea =
        std::fabs(c.amplitude - ref.amplitude) / std::fabs(ref.amplitude);
    const double eb = std::fabs(c.base - ref.base) / ref.base;
    rows.push_back({index_name(c.x) + ":" + index_name(c.y), ref.amplitude,
                    c.amplitude, ref.base, c.base, std::max(ea, eb)});
  }
  return rows;
}

std::pair<std::int64_t, std::int64_t> fit_window(const RunConfig& cfg) {
  if (cfg.window.empty()) return {cfg.order / 2, cfg.order};
  std::vector<std::string> parts = split(cfg.window, ':');
  std::int64_t lo = 0, hi = 0;
  try {
    if (parts.size() != 2) throw std::invalid_argument("window");
    lo = std::stoll(parts[0]);
    hi = std::stoll(parts[1]);
  } catch (const std::exception&) {
    throw usage_error("--window wants LO:HI, e.g. 150:300");
  }
  if (lo < 1 || hi <= lo + 1 || hi > cfg.order) {
    throw usage_error("--window needs 1 <= LO < HI-1 and HI <= order");
  }
  return {lo, hi};
}

int cmd_asymptotics(const RunConfig& cfg) {
  const Catalog& cat = reference_catalog();
  const bool all = cfg.check == "all";
  const auto [w_lo, w_hi] = fit_window(cfg);
  std::string csv;
  std::string json = "{\n  \"order\": " + std::to_string(cfg.order);

  if (all || cfg.check == "growth") {
    const SystemId ids[] = {SystemId::SZ, SystemId::SR, SystemId::ZR,
                            SystemId::SS, SystemId::ZZ, SystemId::RR};
    csv +=
        "system,estimate_float,reference_float,rel_error_float,"
        "error_band_float,inside_interval\n";
    json += ",\n  \"growth\": [\n";
    for (std::size_t i = 0; i < 6; ++i) {
      const SystemId id = ids[i];
      const Series total = solve(id, cfg.order).total;
      const auto [est, band] = estimate_growth(total, w_lo, w_hi);
      const SingularityRecord& rec = cat.singularity(id);
      const double ref = 1.0 / rec.z0;
      const double rel = std::fabs(est - ref) / ref;
      bool inside = true;
      if (rec.radius_interval) {
        inside = 1.0 / est >= rec.radius_interval->first &&
                 1.0 / est <= rec.radius_interval->second;
      }
      csv += system_name(id) + "," + csv_float(est) + "," + csv_float(ref) +
             "," + csv_float(rel) + "," + csv_float(band) + "," +
             (inside ? "true" : "false") + "\n";
      json += "    {\"system\": " + jstr(system_name(id)) +
              ", \"estimate\": " + json_float(est) +
              ", \"reference\": " + json_float(ref) +
              ", \"rel_error\": " + json_float(rel) +
              ", \"error_band\": " + json_float(band) +
              ", \"inside_interval\": " + (inside ? "true" : "false") + "}";
      json += i + 1 == 6 ? "\n" : ",\n";
    }
    json += "  ]";
  }

  if (all || cfg.check == "roots") {
    if (!csv.empty()) csv += "\n";
    csv += "system,root_float,reference_float,abs_error_float\n";
    json += ",\n  \"roots\": [\n";
    std::string body;
    for (const SingularityRecord& rec : cat.singularities) {
      if (rec.poly.empty() || !rec.bracket) continue;
      const double root =
          find_root(rec.poly, rec.bracket->first, rec.bracket->second);
      const double err = std::fabs(root - rec.z0);
      csv += system_name(rec.system) + "," + csv_float(root) + "," +
             csv_float(rec.z0) + "," + csv_float(err) + "\n";
      if (!body.empty()) body += ",\n";
      body += "    {\"system\": " + jstr(system_name(rec.system)) +
              ", \"root\": " + json_float(root) +
              ", \"reference\": " + json_float(rec.z0) +
              ", \"abs_error\": " + json_float(err) + "}";
    }
    json += body + "\n  ]";
  }

  if (all || cfg.check == "correlations") {
    if (!csv.empty()) csv += "\n";
    csv +=
        "pair,ref_amplitude_float,composed_amplitude_float,ref_base_float,"
        "composed_base_float,rel_error_float\n";
    json += ",\n  \"correlations\": [\n";
    const std::vector<Table1Row> rows = table1_rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Table1Row& r = rows[i];
      csv += r.pair + "," + csv_float(r.ref_amplitude) + "," +
             csv_float(r.composed_amplitude) + "," + csv_float(r.ref_base) +
             "," + csv_float(r.composed_base) + "," + csv_float(r.rel_error) +
             "\n";
      json += "    {\"pair\": " + jstr(r.pair) +
              ", \"ref_amplitude\": " + json_float(r.ref_amplitude) +
              ", \"composed_amplitude\": " + json_float(r.composed_amplitude) +
              ", \"ref_base\": " + json_float(r.ref_base) +
              ", \"composed_base\": " + json_float(r.composed_base) +
              ", \"rel_error\": " + json_float(r.rel_error) + "}";
      json += i + 1 == rows.size() ? "\n" : ",\n";
    }
    json += "  ]";
  }

  json += "\n}\n";
  write_artifact(cfg, cfg.format == "json" ? json : csv);
  return 0;
}

// ----------------------------------------------------------------- report

const std::vector<std::string>& report_quantities() {
  static const std::vector<std::string> q = {
      "E(sigma)",       "E(z)",        "E(rho)",         "E(sigma*z)",
      "E(sigma*rho)",   "E(z*rho)",    "Var(sigma)",     "Var(z)",
      "Var(rho)",       "E(wiener)",   "E(wiener*sigma)", "E(wiener*z)",
      "E(wiener*rho)"};
  return q;
}

int cmd_report(const RunConfig& cfg) {
  const std::vector<Table1Row> t1 = table1_rows();
  std::string out;
  const bool json = cfg.format == "json";
  if (json) {
    out = "{\n  \"order\": " + std::to_string(cfg.order) +
          ",\n  \"table1\": [\n";
    for (std::size_t i = 0; i < t1.size(); ++i) {
      const Table1Row& r = t1[i];
      out += "    {\"pair\": " + jstr(r.pair) +
             ", \"ref_amplitude\": " + json_float(r.ref_amplitude) +
             ", \"composed_amplitude\": " + json_float(r.composed_amplitude) +
             ", \"ref_base\": " + json_float(r.ref_base) +
             ", \"composed_base\": " + json_float(r.composed_base) +
             ", \"rel_error\": " + json_float(r.rel_error) + "}";
      out += i + 1 == t1.size() ? "\n" : ",\n";
    }
    out += "  ],\n  \"convergence\": {\n";
  } else {
    out =
        "pair,ref_amplitude_float,composed_amplitude_float,ref_base_float,"
        "composed_base_float,rel_error_float\n";
    for (const Table1Row& r : t1) {
      out += r.pair + "," + csv_float(r.ref_amplitude) + "," +
             csv_float(r.composed_amplitude) + "," + csv_float(r.ref_base) +
             "," + csv_float(r.composed_base) + "," + csv_float(r.rel_error) +
             "\n";
    }
    out += "\nquantity,n,exact_float,asymptotic_float,ratio_float\n";
  }
  const auto& quantities = report_quantities();
  for (std::size_t qi = 0; qi < quantities.size(); ++qi) {
    const std::string& q = quantities[qi];
    const std::vector<ConvergenceRow> rows = convergence_report(q, cfg.order);
    if (json) {
      out += "    " + jstr(q) + ": [\n";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const ConvergenceRow& r = rows[i];
        out += "      {\"n\": " + std::to_string(r.n) +
               ", \"exact\": " + json_float(r.exact_value) +
               ", \"asymptotic\": " + json_float(r.asymptotic_value) +
               ", \"ratio\": " + json_float(r.ratio) + "}";
        out += i + 1 == rows.size() ? "\n" : ",\n";
      }
      out += qi + 1 == quantities.size() ? "    ]\n" : "    ],\n";
    } else {
      for (const ConvergenceRow& r : rows) {
        out += q + "," + std::to_string(r.n) + "," + csv_float(r.exact_value) +
               "," + csv_float(r.asymptotic_value) + "," + csv_float(r.ratio) +
               "\n";
      }
    }
  }
  if (json) out += "  }\n}\n";
  write_artifact(cfg, out);
  return 0;
}

// ----------------------------------------------------------------- verify

struct CheckFailure {
  std::string detail;
};

void check(bool ok, const std::string& detail) {
  if (!ok) throw CheckFailure{detail};
}

int cmd_verify(const RunConfig& cfg) {
  const std::int64_t order = cfg.order;
  std::string current;
  auto pass = [&](const std::string& name, const std::string& note = "") {
    std::string line = "ok: " + name;
    if (!note.empty()) line += " (" + note + ")";
    std::puts(line.c_str());
    std::fflush(stdout);
  };
  try {
    // 1. every unknown of every system against the enumerator
    const std::int64_t n_max = std::min<std::int64_t>(10, order);
    std::vector<std::string> tags;
    std::set<std::string> seen;
    for (SystemId id : all_systems()) {
      for (const std::string& u : unknown_names(id)) {
        if (seen.insert(unknown_tag(id, u)).second)
          tags.push_back(unknown_tag(id, u));
      }
      if (seen.insert(total_tag(id)).second) tags.push_back(total_tag(id));
    }
    std::vector<std::map<std::string, mpz_class>> sums(n_max + 1);
    for (std::int64_t n = 1; n <= n_max; ++n) {
      for (auto& [tag, sum] : aggregate(n, tags).sums)
        sums[n].emplace(tag, std::move(sum));
    }
    for (SystemId id : all_systems()) {
      current = "oracle equivalence " + system_name(id);
      const SystemSolution sol = solve(id, n_max);
      for (const auto& [name, series] : sol.unknowns) {
        const std::string& tag = unknown_tag(id, name);
        for (std::int64_t n = 1; n <= n_max; ++n) {
          check(series[n] == sums[n].at(tag),
                "unknown " + name + " detaches from the enumerator at z^" +
                    std::to_string(n));
        }
      }
      for (std::int64_t n = 1; n <= n_max; ++n) {
        check(sol.total[n] == sums[n].at(total_tag(id)),
              "total detaches from the enumerator at z^" + std::to_string(n));
      }
      pass(current);
    }

    // 2. annihilating polynomials, mod z^{order+1}
    const std::pair<const char*, Series> annihilated[] = {
        {"S2", solve(SystemId::S, order).unknown("S2")},
        {"Z2", solve(SystemId::Z, order).unknown("Z2")},
        {"SZ22", solve(SystemId::SZ, order).unknown("SZ22")},
        {"SR11", solve(SystemId::SR, order).unknown("SR11")},
        {"SS_total", solve(SystemId::SS, order).total},
        {"ZZ_total", solve(SystemId::ZZ, order).total},
    };
    for (const auto& [name, series] : annihilated) {
      current = std::string("annihilator ") + name;
      check(verify_annihilator(series, annihilator(name)),
            "P(z, s) is nonzero mod z^" + std::to_string(order + 1));
      pass(current);
    }

    // 3. closed forms against the fixed points
    const auto cf = closed_forms(order);
    const std::pair<const char*, Series> forms[] = {
        {"T", solve(SystemId::T, order).total},
        {"R1", solve(SystemId::R, order).unknown("R1")},
        {"R2", solve(SystemId::R, order).unknown("R2")},
        {"D", solve(SystemId::D, order).total},
        {"W", solve(SystemId::W, order).total},
    };
    for (const auto& [name, series] : forms) {
      current = std::string("closed form ") + name;
      check(cf.at(name) == series, "differs from the fixed-point series");
      pass(current);
    }

    // 4. simplification identities
    const SystemSolution s = solve(SystemId::S, order);
    const SystemSolution z = solve(SystemId::Z, order);
    const SystemSolution sz = solve(SystemId::SZ, order);
    const Series inv2 = series_inv1m(s.unknown("S2"));
    current = "identity S1 = z/(1-S2)";
    check(s.unknown("S1") == series_mulz(inv2), "identity fails");
    pass(current);
    current = "identity z/(1-S2)^2 = S2";
    check(s.unknown("S2") == series_mulz(series_mul(inv2, inv2)),
          "identity fails");
    pass(current);
    current = "identity Z1 = Z2^3/z";
    const Series z2 = z.unknown("Z2");
    check(series_divz(series_mul(series_mul(z2, z2), z2), 1) ==
              z.unknown("Z1").truncated(order - 1),
          "identity fails");
    pass(current);
    current = "identity SZ = 1 - z/SZ22";
    check(series_sub(Series::one(order - 1),
                     series_inv_unit(series_divz(sz.unknown("SZ22"), 1))) ==
              sz.total.truncated(order - 1),
          "identity fails");
    pass(current);

    // 5. sampler uniformity at the 99.9% level
    for (std::int64_t n : {4, 5}) {
      current = "chi-square uniformity n=" + std::to_string(n);
      const std::int64_t m = 200 * tree_count(n).get_si();
      const ChiSquare cs = chi_square_uniformity(n, m, cfg.seed);
      check(cs.survival > 0.001,
            "survival " + format_float(cs.survival) + " at the 99.9% level" +
                " (statistic " + format_float(cs.statistic) + ", dof " +
                std::to_string(cs.dof) + ")");
      pass(current, "survival " + format_float(cs.survival));
    }
  } catch (const CheckFailure& f) {
    std::string line = "fail: " + current + ": " + f.detail;
    std::puts(line.c_str());
    std::fflush(stdout);
    return 1;
  }
  return 0;
}

}  // namespace

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int run(const RunConfig& cfg) {
  if (cfg.command == "indices") return cmd_indices(cfg);
  if (cfg.command == "enumerate") return cmd_enumerate(cfg);
  if (cfg.command == "sample") return cmd_sample(cfg);
  if (cfg.command == "series") return cmd_series(cfg);
  if (cfg.command == "moments") return cmd_moments(cfg);
  if (cfg.command == "asymptotics") return cmd_asymptotics(cfg);
  if (cfg.command == "report") return cmd_report(cfg);
  if (cfg.command == "verify") return cmd_verify(cfg);
  throw usage_error("unknown command " + cfg.command);
}

int run(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"exact and asymptotic statistics of random plane trees"};
  app.require_subcommand(1);

  auto add_output = [&cfg](CLI::App* sub) {
    CLI::Option* out = sub->add_option("--out", cfg.format, "csv or json")
                           ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--path", cfg.path, "write to a file instead of stdout");
    return out;
  };

  CLI::App* ind =
      app.add_subcommand("indices", "index vector of one tree (default json)");
  ind->add_option("--tree", cfg.tree, "balanced-parentheses word")->required();
  CLI::Option* ind_out = add_output(ind);

  CLI::App* enm = app.add_subcommand(
      "enumerate", "exact index sums over every tree of sizes 1..n");
  enm->add_option("--n", cfg.n, "largest size")
      ->required()
      ->check(CLI::Range(std::int64_t{1}, kDefaultEnumerationCap));
  enm->add_option("--stats", cfg.stats,
                  "comma-separated monomials (default sigma,z,rho,d,w)");
  add_output(enm);

  CLI::App* smp = app.add_subcommand(
      "sample", "Monte Carlo index moments over uniform random trees");
  smp->add_option("--n", cfg.n, "tree size")
      ->required()
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{10000000}));
  smp->add_option("--count", cfg.m, "sample count (default 1000)")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1000000000}));
  smp->add_option("--seed", cfg.seed, "RNG seed (default 0)");
  smp->add_option("--stats", cfg.stats,
                  "comma-separated monomials (default sigma,z,rho,d,w)");
  add_output(smp);

  CLI::App* ser =
      app.add_subcommand("series", "solve one generating-function system");
  ser->add_option("--system", cfg.system,
                  "one of T S Z R D W SZ SR ZR SS ZZ RR DSWS DZWZ DRWR")
      ->required();
  ser->add_option("--order", cfg.order, "truncation order (default 200)")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{100000}));
  add_output(ser);

  CLI::App* mom = app.add_subcommand(
      "moments", "exact moment and correlation table for an index pair");
  mom->add_option("--pair", cfg.pair, "x:y with x,y in sigma z rho wiener")
      ->required();
  mom->add_option("--max-n", cfg.order, "largest n (default 200)")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{100000}));
  mom->add_option("--enum-cap", cfg.enum_cap,
                  "enumeration cap for Wiener variances (default 16)")
      ->check(CLI::Range(std::int64_t{1}, kDefaultEnumerationCap));
  add_output(mom);

  CLI::App* asy = app.add_subcommand(
      "asymptotics", "growth, root and correlation-composition checks");
  asy->add_option("--check", cfg.check, "all|growth|roots|correlations")
      ->check(CLI::IsMember({"all", "growth", "roots", "correlations"}));
  asy->add_option("--order", cfg.order,
                  "series order for growth fits (default 200)")
      ->check(CLI::Range(std::int64_t{4}, std::int64_t{100000}));
  asy->add_option("--window", cfg.window,
                  "LO:HI growth-fit window (default upper half)");
  add_output(asy);

  CLI::App* rep = app.add_subcommand(
      "report", "reference-comparison tables: correlations plus convergence");
  rep->add_option("--order", cfg.order, "table depth (default 200)")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{100000}));
  add_output(rep);

  CLI::App* ver = app.add_subcommand(
      "verify", "run the invariant suite; nonzero exit on the first failure");
  CLI::Option* ver_order =
      ver->add_option("--order", cfg.order,
                      "series order for the algebraic checks (default 40)")
          ->check(CLI::Range(std::int64_t{2}, std::int64_t{100000}));
  ver->add_option("--seed", cfg.seed, "chi-square seed (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  if (sub == ind && ind_out->count() == 0) cfg.format = "json";
  if (sub == ver && ver_order->count() == 0) cfg.order = 40;

  try {
    return run(cfg);
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace planetree
