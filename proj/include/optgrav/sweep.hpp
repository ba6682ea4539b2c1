// Declarative parameter sweeps over the closed-form and simulated
// sensitivity engines: grid construction, per-point evaluation (optionally
// in parallel), crossover root finding, CSV emission, and the plain-text
// spec-file format used by the command line tool.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "optgrav/closed_form.hpp"
#include "optgrav/geometry.hpp"
#include "optgrav/interferometer.hpp"

namespace optgrav {

// ---------------------------------------------------------------------------
// schemes and evaluation points

enum class SchemeKind { Sql, MzSqueezed, Su11Single, Su11Joint, EffectiveSql };

struct Scheme {
  SchemeKind kind = SchemeKind::Sql;
  bool simulated = false;  // evaluate through the Gaussian engine instead
};

inline const char* scheme_kind_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::Sql: return "sql";
    case SchemeKind::MzSqueezed: return "mz_squeezed";
    case SchemeKind::Su11Single: return "su11_single";
    case SchemeKind::Su11Joint: return "su11_joint";
    case SchemeKind::EffectiveSql: return "effective_sql";
  }
  return "?";
}

inline std::string scheme_name(const Scheme& s) {
  return s.simulated ? std::string("simulated:") + scheme_kind_name(s.kind)
                     : scheme_kind_name(s.kind);
}

inline Scheme parse_scheme(std::string name) {
  Scheme s;
  constexpr const char* kPrefix = "simulated:";
  if (name.rfind(kPrefix, 0) == 0) {
    s.simulated = true;
    name = name.substr(std::string(kPrefix).size());
  }
  if (name == "sql") s.kind = SchemeKind::Sql;
  else if (name == "mz_squeezed") s.kind = SchemeKind::MzSqueezed;
  else if (name == "su11_single") s.kind = SchemeKind::Su11Single;
  else if (name == "su11_joint") s.kind = SchemeKind::Su11Joint;
  else if (name == "effective_sql") s.kind = SchemeKind::EffectiveSql;
  else throw std::invalid_argument("unknown scheme: " + name);
  return s;
}

// Scheme parameters shared by closed forms and simulations. Defaults match
// the reference parameter studies (lossless, unit squeeze parameters).
struct SchemeParams {
  double n_sig = 1e18;
  double T = 1.0;   // MZ splitting; closed forms use it as-is, the
                    // simulation caps it below 1 (see kMaxSimT)
  double r = 1.0;   // MZ input squeeze
  double r1 = 1.0;  // SU(1,1) first gain parameter
  double r2 = 1.0;  // SU(1,1) second gain parameter
  double t1 = 1.0;
  double t2 = 1.0;
};

// At T = 1 no photons enter the signal arm and the simulation loses its
// signal; closed forms take the analytic limit instead. The simulated
// schemes therefore evaluate at min(T, kMaxSimT).
inline constexpr double kMaxSimT = 1.0 - 1e-6;

// A full evaluation point: scheme parameters plus geometry.
struct EvalPoint {
  SchemeParams p;
  GeometryConfig g;
};

inline void set_param(EvalPoint& pt, const std::string& name, double value) {
  if (name == "n_sig") pt.p.n_sig = value;
  else if (name == "T") pt.p.T = value;
  else if (name == "r") pt.p.r = value;
  else if (name == "r1") pt.p.r1 = value;
  else if (name == "r2") pt.p.r2 = value;
  else if (name == "t1") pt.p.t1 = value;
  else if (name == "t2") pt.p.t2 = value;
  else if (name == "H") pt.g.H = value;
  else if (name == "L") pt.g.L = value;
  else if (name == "omega") pt.g.omega = value;
  else throw std::invalid_argument("unknown parameter: " + name);
}

// One sensitivity evaluation, dispatched on scheme and engine.
inline SensitivityResult evaluate_scheme(const Scheme& s, const EvalPoint& pt) {
  const SchemeParams& p = pt.p;
  if (!s.simulated) {
    switch (s.kind) {
      case SchemeKind::Sql: return sql(p.n_sig, pt.g);
      case SchemeKind::MzSqueezed:
        return mz_squeezed_lossy(p.T, p.n_sig, p.r, p.t1, p.t2, pt.g);
      case SchemeKind::Su11Single:
        return su11_single(p.n_sig, p.r1, p.r2, p.t1, p.t2, pt.g);
      case SchemeKind::Su11Joint:
        return su11_joint(p.n_sig, p.r1, p.r2, p.t1, p.t2, pt.g);
      case SchemeKind::EffectiveSql:
        return effective_sql(p.n_sig, p.t1, p.t2, pt.g);
    }
    throw std::logic_error("unreachable");
  }

  InterferometerConfig cfg;
  switch (s.kind) {
    case SchemeKind::Sql:
      cfg.topology = Topology::MZ;
      cfg.T = kMaxSimT;
      cfg.input_squeeze = 0.0;
      cfg.t1 = 1.0;
      cfg.t2 = 1.0;
      break;
    case SchemeKind::EffectiveSql:
      cfg.topology = Topology::MZ;
      cfg.T = kMaxSimT;
      cfg.input_squeeze = 0.0;
      cfg.t1 = p.t1;
      cfg.t2 = p.t2;
      break;
    case SchemeKind::MzSqueezed:
      cfg.topology = Topology::MZ;
      cfg.T = std::min(p.T, kMaxSimT);
      cfg.input_squeeze = p.r;
      cfg.t1 = p.t1;
      cfg.t2 = p.t2;
      break;
    case SchemeKind::Su11Single:
    case SchemeKind::Su11Joint:
      cfg.topology = Topology::SU11;
      cfg.r1 = p.r1;
      cfg.r2 = p.r2;
      cfg.t1 = p.t1;
      cfg.t2 = p.t2;
      cfg.detection = s.kind == SchemeKind::Su11Joint ? Detection::Joint
                                                      : Detection::SingleB;
      break;
  }
  cfg.input_photons = input_photons_for_signal(cfg, p.n_sig);
  return simulate_sensitivity(cfg, pt.g);
}

// ---------------------------------------------------------------------------
// sweeps

enum class GridSpacing { Linear, Log };

struct GridSpec {
  std::string parameter;
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  GridSpacing spacing = GridSpacing::Linear;
};

// One output column: a scheme evaluated with optional parameter overrides
// on top of the sweep's fixed point.
struct Series {
  std::string label;
  Scheme scheme;
  std::vector<std::pair<std::string, double>> overrides;
};

struct SweepSpec {
  GridSpec grid;
  EvalPoint fixed;
  std::vector<Series> series;

  void validate() const {
    if (series.empty()) throw std::invalid_argument("sweep: no schemes requested");
    if (grid.parameter.empty()) throw std::invalid_argument("sweep: no swept parameter");
    if (grid.count < 2) throw std::invalid_argument("sweep: grid count must be >= 2");
    if (!(grid.min < grid.max))
      throw std::invalid_argument("sweep: grid requires min < max");
    if (grid.spacing == GridSpacing::Log && !(grid.min > 0.0))
      throw std::invalid_argument("sweep: log grid requires min > 0");
    // Reject a swept value that a series override would silently pin.
    for (const auto& s : series)
      for (const auto& [name, value] : s.overrides)
        if (name == grid.parameter)
          throw std::invalid_argument("sweep: swept parameter '" + name +
                                      "' is also fixed in series '" + s.label + "'");
  }
};

struct SweepRow {
  double swept = 0.0;
  std::vector<double> values;  // one per series, sweep-spec order
  double n_sig = 0.0;
};

struct SweepTable {
  std::string swept_name;
  std::vector<std::string> labels;   // per series
  std::vector<std::string> methods;  // per series: closed_form | simulated
  std::vector<SweepRow> rows;
};

inline std::vector<double> make_grid(const GridSpec& g) {
  std::vector<double> xs(g.count);
  if (g.spacing == GridSpacing::Linear) {
    const double step = (g.max - g.min) / (g.count - 1);
    for (int i = 0; i < g.count; ++i) xs[i] = g.min + step * i;
  } else {
    const double la = std::log(g.min), lb = std::log(g.max);
    const double step = (lb - la) / (g.count - 1);
    for (int i = 0; i < g.count; ++i) xs[i] = std::exp(la + step * i);
  }
  xs.back() = g.max;  // pin the endpoint against rounding
  return xs;
}

namespace detail {

// Runs fn(i) for i in [0, n) across a few worker threads. Results must be
// written to pre-sized storage indexed by i, so the output is independent
// of the execution order.
inline void parallel_for_index(int n, const std::function<void(int)>& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(std::min<unsigned>(hw, n));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr error;
  std::mutex error_mu;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

// Evaluates every series at every grid point. Rows come back ordered by the
// swept value regardless of how the evaluation was scheduled.
inline SweepTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> grid = make_grid(spec.grid);

  SweepTable table;
  table.swept_name = spec.grid.parameter;
  for (const auto& s : spec.series) {
    table.labels.push_back(s.label.empty() ? scheme_name(s.scheme) : s.label);
    table.methods.push_back(s.scheme.simulated ? "simulated" : "closed_form");
  }
  table.rows.resize(grid.size());

  detail::parallel_for_index(
      static_cast<int>(grid.size()), [&](int i) {
        SweepRow row;
        row.swept = grid[i];
        EvalPoint base = spec.fixed;
        set_param(base, spec.grid.parameter, grid[i]);
        row.n_sig = base.p.n_sig;
        row.values.reserve(spec.series.size());
        for (const auto& s : spec.series) {
          EvalPoint pt = base;
          for (const auto& [name, value] : s.overrides) set_param(pt, name, value);
          row.values.push_back(evaluate_scheme(s.scheme, pt).value);
        }
        table.rows[i] = std::move(row);
      });
  return table;
}

// ---------------------------------------------------------------------------
// crossover search

struct CrossoverResult {
  double swept = 0.0;            // root of value_a - value_b
  std::string better_below;     // scheme winning for swept < root
  std::string better_above;     // scheme winning for swept > root
};

// Locates the parameter value where two schemes exchange rank. The bracket
// is pre-scanned on a uniform grid for a sign change of the sensitivity
// difference, then bisected to 1e-6 in the swept parameter.
inline CrossoverResult find_crossover(const Scheme& scheme_a,
                                      const Scheme& scheme_b,
                                      const std::string& swept,
                                      const EvalPoint& fixed, double lo,
                                      double hi) {
  if (!(lo < hi)) throw std::invalid_argument("crossover: requires lo < hi");
  const auto diff = [&](double x) {
    EvalPoint pt = fixed;
    set_param(pt, swept, x);
    return evaluate_scheme(scheme_a, pt).value -
           evaluate_scheme(scheme_b, pt).value;
  };

  constexpr int kScan = 1000;
  double a = lo, b = hi;
  double fa = diff(a);
  bool bracketed = false;
  for (int i = 1; i <= kScan; ++i) {
    const double x = lo + (hi - lo) * i / kScan;
    const double fx = diff(x);
    if (fa == 0.0 || fa * fx < 0.0) {
      b = x;
      bracketed = true;
      break;
    }
    a = x;
    fa = fx;
  }
  if (!bracketed) {
    std::ostringstream msg;
    msg << "crossover: no sign change in [" << lo << ", " << hi
        << "]; difference at endpoints: " << diff(lo) << ", " << diff(hi);
    throw std::runtime_error(msg.str());
  }

  while (b - a > 1e-6) {
    const double m = 0.5 * (a + b);
    const double fm = diff(m);
    if (fa * fm <= 0.0) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
  }

  CrossoverResult out;
  out.swept = 0.5 * (a + b);
  const double below = diff(std::max(lo, out.swept - 1e-3));
  const double above = diff(std::min(hi, out.swept + 1e-3));
  out.better_below = below < 0.0 ? scheme_name(scheme_a) : scheme_name(scheme_b);
  out.better_above = above < 0.0 ? scheme_name(scheme_a) : scheme_name(scheme_b);
  return out;
}

// ---------------------------------------------------------------------------
// CSV emission

// Scientific notation with 13 significant digits; independent of locale.
inline std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

inline void emit_csv(const SweepTable& table, std::ostream& os) {
  if (table.rows.empty()) throw std::invalid_argument("csv: no rows to emit");
  os << table.swept_name;
  for (const auto& label : table.labels) os << ',' << label;
  os << ",n_sig,methods\n";
  std::string methods;
  for (size_t i = 0; i < table.methods.size(); ++i) {
    if (i) methods += ';';
    methods += table.methods[i];
  }
  for (const auto& row : table.rows) {
    os << format_sci(row.swept);
    for (double v : row.values) os << ',' << format_sci(v);
    os << ',' << format_sci(row.n_sig) << ',' << methods << '\n';
  }
}

inline void emit_csv(const SweepTable& table, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
  emit_csv(table, os);
  os.flush();
  if (!os) throw std::runtime_error("csv: write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// sweep spec files
//
// Plain-text format: `key = value` lines grouped under [sweep], [fixed] and
// [geometry] sections; '#' and ';' start comments. [fixed] keys are the
// scheme parameters of set_param, [geometry] accepts H, L, omega, c and
// either g (surface gravity) or r_s/R2.

namespace detail {

struct IniEntry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<IniEntry> parse_ini(std::istream& is,
                                       const std::string& origin) {
  std::vector<IniEntry> entries;
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                    ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
    IniEntry e;
    e.section = section;
    e.key = trim(line.substr(0, eq));
    e.value = trim(line.substr(eq + 1));
    e.line = lineno;
    if (e.key.empty() || e.value.empty())
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": empty key or value");
    entries.push_back(std::move(e));
  }
  return entries;
}

inline double parse_number(const IniEntry& e, const std::string& origin) {
  try {
    size_t used = 0;
    const double v = std::stod(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(origin + ":" + std::to_string(e.line) +
                                ": field '" + e.key + "': not a number: '" +
                                e.value + "'");
  }
}

inline std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!cur.empty()) out.push_back(std::exchange(cur, {}));
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace detail

inline SweepSpec parse_sweep_spec(std::istream& is,
                                  const std::string& origin = "<spec>") {
  SweepSpec spec;
  std::optional<double> surface_g;
  bool have_rs = false;
  bool have_count = false;

  for (const auto& e : detail::parse_ini(is, origin)) {
    const std::string where = origin + ":" + std::to_string(e.line);
    if (e.section == "sweep") {
      if (e.key == "parameter") spec.grid.parameter = e.value;
      else if (e.key == "min") spec.grid.min = detail::parse_number(e, origin);
      else if (e.key == "max") spec.grid.max = detail::parse_number(e, origin);
      else if (e.key == "count") {
        spec.grid.count = static_cast<int>(detail::parse_number(e, origin));
        have_count = true;
      } else if (e.key == "spacing") {
        if (e.value == "linear") spec.grid.spacing = GridSpacing::Linear;
        else if (e.value == "log") spec.grid.spacing = GridSpacing::Log;
        else throw std::invalid_argument(where + ": spacing must be linear or log");
      } else if (e.key == "schemes") {
        for (const auto& name : detail::split_names(e.value)) {
          Series s;
          try {
            s.scheme = parse_scheme(name);
          } catch (const std::invalid_argument& ex) {
            throw std::invalid_argument(where + ": " + ex.what());
          }
          s.label = name;
          spec.series.push_back(std::move(s));
        }
      } else {
        throw std::invalid_argument(where + ": unknown [sweep] field '" + e.key + "'");
      }
    } else if (e.section == "fixed") {
      try {
        set_param(spec.fixed, e.key, detail::parse_number(e, origin));
      } catch (const std::invalid_argument& ex) {
        throw std::invalid_argument(where + ": " + ex.what());
      }
    } else if (e.section == "geometry") {
      const double v = detail::parse_number(e, origin);
      if (e.key == "H") spec.fixed.g.H = v;
      else if (e.key == "L") spec.fixed.g.L = v;
      else if (e.key == "omega") spec.fixed.g.omega = v;
      else if (e.key == "c") spec.fixed.g.c = v;
      else if (e.key == "R2") spec.fixed.g.R2 = v;
      else if (e.key == "r_s") { spec.fixed.g.r_s = v; have_rs = true; }
      else if (e.key == "g") surface_g = v;
      else throw std::invalid_argument(where + ": unknown [geometry] field '" + e.key + "'");
    } else {
      throw std::invalid_argument(where + ": unknown section [" + e.section + "]");
    }
  }

  if (surface_g) {
    if (have_rs)
      throw std::invalid_argument(origin + ": give either g or r_s, not both");
    spec.fixed.g.r_s =
        2.0 * *surface_g * spec.fixed.g.R2 * spec.fixed.g.R2 /
        (spec.fixed.g.c * spec.fixed.g.c);
  }
  if (!have_count)
    throw std::invalid_argument(origin + ": [sweep] count is required");
  spec.fixed.g.validate();
  spec.validate();
  return spec;
}

inline SweepSpec parse_sweep_spec_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open sweep spec '" + path + "'");
  return parse_sweep_spec(is, path);
}

// ---------------------------------------------------------------------------
// presets reproducing the reference parameter studies
//
// Common defaults: H = 50 m, L = 1000 m, omega = 2.82e14 Hz, c = 3e8 m/s,
// g = 9.8 m/s^2, n_sig = 1e18. Grid ranges on the squeeze and transmittance
// axes are this library's choice: r in [0, 2], t in [0.5, 1].

inline GeometryConfig preset_geometry(double L = 1000.0) {
  return GeometryConfig::from_surface_gravity(
      9.8, 50.0, L, 2.82e14, constants::speed_of_light_rounded);
}

inline SweepSpec make_preset(const std::string& name) {
  SweepSpec spec;
  spec.fixed.g = preset_geometry();
  spec.fixed.p = SchemeParams{};

  if (name == "fig3") {
    // SQL against the signal photon number for three horizontal arms.
    spec.grid = {"n_sig", 1e12, 1e20, 81, GridSpacing::Log};
    spec.series = {
        {"sql_L_100", {SchemeKind::Sql, false}, {{"L", 100.0}}},
        {"sql_L_500", {SchemeKind::Sql, false}, {{"L", 500.0}}},
        {"sql_L_1000", {SchemeKind::Sql, false}, {{"L", 1000.0}}},
    };
  } else if (name == "fig4") {
    // Squeezed MZ against the input squeeze parameter at three loss levels.
    spec.grid = {"r", 0.0, 2.0, 201, GridSpacing::Linear};
    spec.series = {
        {"mz_squeezed_single_t1_1_t2_1",
         {SchemeKind::MzSqueezed, false},
         {{"t1", 1.0}, {"t2", 1.0}}},
        {"mz_squeezed_single_t1_0.9_t2_1",
         {SchemeKind::MzSqueezed, false},
         {{"t1", 0.9}, {"t2", 1.0}}},
        {"mz_squeezed_single_t1_0.9_t2_0.9",
         {SchemeKind::MzSqueezed, false},
         {{"t1", 0.9}, {"t2", 0.9}}},
    };
  } else if (name == "fig5a" || name == "fig5b") {
    // Scheme comparison against one transmittance with the other perfect;
    // squeeze parameters pinned at 1.
    const bool sweep_internal = name == "fig5a";
    spec.grid = {sweep_internal ? "t1" : "t2", 0.5, 1.0, 101,
                 GridSpacing::Linear};
    spec.fixed.p.r = 1.0;
    spec.fixed.p.r1 = 1.0;
    spec.fixed.p.r2 = 1.0;
    if (sweep_internal) spec.fixed.p.t2 = 1.0;
    else spec.fixed.p.t1 = 1.0;
    spec.series = {
        {"effective_sql_single", {SchemeKind::EffectiveSql, false}, {}},
        {"su11_single", {SchemeKind::Su11Single, false}, {}},
        {"su11_joint", {SchemeKind::Su11Joint, false}, {}},
        {"mz_squeezed_single", {SchemeKind::MzSqueezed, false}, {}},
    };
  } else {
    throw std::invalid_argument("unknown preset: " + name +
                                " (expected fig3, fig4, fig5a or fig5b)");
  }
  return spec;
}

}  // namespace optgrav
