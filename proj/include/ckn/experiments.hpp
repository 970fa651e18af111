/*
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "ckn/bipartite.hpp"
#include "ckn/concurrence.hpp"
#include "ckn/errors.hpp"
#include "ckn/geometry.hpp"
#include "ckn/klein_nishina.hpp"
#include "ckn/kraus.hpp"

namespace ckn {

/// One CSV cell. Doubles serialize at 17 significant digits, which
/// round-trips IEEE doubles losslessly.
using Cell = std::variant<std::int64_t, double, std::string>;

inline std::string format_cell(const Cell& cell) {
  if (std::holds_alternative<std::string>(cell))
    return std::get<std::string>(cell);
  char buf[64];
  if (std::holds_alternative<double>(cell))
    std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(cell));
  else
    std::snprintf(buf, sizeof buf, "%lld",
                  static_cast<long long>(std::get<std::int64_t>(cell)));
  return buf;
}

/// One row of a figure dataset: named parameters in, named outputs out.
struct ExperimentRecord {
  std::string experiment_id;
  std::vector<std::pair<std::string, Cell>> params;
  std::vector<std::pair<std::string, Cell>> outputs;
  std::optional<std::uint64_t> seed;
};

struct Dataset {
  std::vector<ExperimentRecord> records;

  std::vector<std::string> columns() const {
    std::vector<std::string> cols{"experiment"};
    if (records.empty()) return cols;
    for (const auto& [name, value] : records.front().params)
      cols.push_back(name);
    for (const auto& [name, value] : records.front().outputs)
      cols.push_back(name);
    if (records.front().seed) cols.push_back("seed");
    return cols;
  }
};

inline void write_csv(std::ostream& os, const Dataset& ds) {
  const auto cols = ds.columns();
  for (std::size_t i = 0; i < cols.size(); ++i)
    os << cols[i] << (i + 1 < cols.size() ? "," : "\n");
  for (const auto& rec : ds.records) {
    os << rec.experiment_id;
    for (const auto& [name, value] : rec.params) os << ',' << format_cell(value);
    for (const auto& [name, value] : rec.outputs)
      os << ',' << format_cell(value);
    if (rec.seed) os << ',' << *rec.seed;
    os << '\n';
  }
}

inline std::string to_csv_string(const Dataset& ds) {
  std::ostringstream os;
  write_csv(os, ds);
  return os.str();
}

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

enum class Experiment { fig1, fig2, fig3, kn_check, scan };

enum class InputState { psi_plus, rho_mixed };

struct RunConfig {
  Experiment experiment = Experiment::fig1;
  int grid = 181;
  int samples = 5000;
  std::uint64_t seed = 20250108;
  double theta_a_deg = 82.0;
  double theta_b_deg = 10.0;
  AngleSamplingLaw sampling_law = AngleSamplingLaw::uniform_theta;
  InputState input = InputState::psi_plus;
  int jobs = 1;
  std::string out; // empty: standard output

  void validate() const {
    if (grid < 2) throw config_error("grid must be at least 2");
    if (samples < 1) throw config_error("samples must be at least 1");
    if (jobs < 1) throw config_error("jobs must be at least 1");
    if (theta_a_deg < 0.0 || theta_a_deg > 180.0)
      throw config_error("theta-a must be in [0, 180] degrees");
    if (theta_b_deg < 0.0 || theta_b_deg > 180.0)
      throw config_error("theta-b must be in [0, 180] degrees");
  }
};

inline AngleSamplingLaw parse_sampling_law(const std::string& s) {
  if (s == "uniform-theta") return AngleSamplingLaw::uniform_theta;
  if (s == "uniform-solid-angle") return AngleSamplingLaw::uniform_solid_angle;
  throw config_error("unknown sampling-law '" + s +
                     "' (use uniform-theta or uniform-solid-angle)");
}

inline InputState parse_input_state(const std::string& s) {
  if (s == "psi-plus") return InputState::psi_plus;
  if (s == "rho-mixed") return InputState::rho_mixed;
  throw config_error("unknown input state '" + s +
                     "' (use psi-plus or rho-mixed)");
}

/**
 * Flat key-value config file: one `key = value` per line, `#` comments and
 * blank lines ignored. Keys match the CLI flags: seed, samples, grid,
 * theta-a, theta-b, sampling-law, input, jobs, out. Precedence is
 * CLI flag > config file > built-in default.
 */
inline std::vector<std::pair<std::string, std::string>> parse_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  const auto trim = [](std::string s) {
    const auto from = s.find_first_not_of(" \t\r");
    const auto to = s.find_last_not_of(" \t\r");
    return from == std::string::npos ? std::string{}
                                     : s.substr(from, to - from + 1);
  };
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw config_error(path + ":" + std::to_string(lineno) +
                         ": expected 'key = value'");
    entries.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return entries;
}

inline void apply_config_entry(RunConfig& cfg, const std::string& key,
                               const std::string& value) {
  const auto as_int = [&](long lo) {
    std::size_t pos = 0;
    long v;
    try {
      v = std::stol(value, &pos);
    } catch (const std::exception&) {
      throw config_error("bad integer for '" + key + "': " + value);
    }
    if (pos != value.size() || v < lo)
      throw config_error("bad integer for '" + key + "': " + value);
    return v;
  };
  const auto as_double = [&]() {
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(value, &pos);
    } catch (const std::exception&) {
      throw config_error("bad number for '" + key + "': " + value);
    }
    if (pos != value.size())
      throw config_error("bad number for '" + key + "': " + value);
    return v;
  };

  if (key == "seed")
    cfg.seed = static_cast<std::uint64_t>(as_int(0));
  else if (key == "samples")
    cfg.samples = static_cast<int>(as_int(1));
  else if (key == "grid")
    cfg.grid = static_cast<int>(as_int(2));
  else if (key == "theta-a")
    cfg.theta_a_deg = as_double();
  else if (key == "theta-b")
    cfg.theta_b_deg = as_double();
  else if (key == "sampling-law")
    cfg.sampling_law = parse_sampling_law(value);
  else if (key == "input")
    cfg.input = parse_input_state(value);
  else if (key == "jobs")
    cfg.jobs = static_cast<int>(as_int(1));
  else if (key == "out")
    cfg.out = value;
  else
    throw config_error("unknown config key '" + key + "'");
}

// ---------------------------------------------------------------------------
// Experiment runners
// ---------------------------------------------------------------------------

namespace detail {

inline DensityMatrix4 input_state(InputState s) {
  return s == InputState::psi_plus ? psi_plus_state() : mixed_hv_state();
}

inline void append_single_photon_row(Dataset& ds, const char* section,
                                     double theta_deg, double phi_deg,
                                     const char* state,
                                     const DensityMatrix2& rho) {
  const double ta = deg_to_rad(theta_deg);
  const double pa = deg_to_rad(phi_deg);
  const KrausSet set = canonical_kraus_set(ta, pa);
  const auto p = error_probabilities(set, rho);

  ExperimentRecord rec;
  rec.experiment_id = "fig1";
  rec.params = {{"section", std::string(section)},
                {"theta_a_deg", theta_deg},
                {"phi_a_deg", phi_deg},
                {"state", std::string(state)}};
  rec.outputs = {{"p1", p[0]}, {"p2", p[1]}, {"p3", p[2]}};
  for (std::size_t l = 1; l <= 3; ++l) {
    const auto [lo, hi] = extremal_pure_probabilities(set, l);
    rec.outputs.emplace_back("p" + std::to_string(l) + "_min", lo);
    rec.outputs.emplace_back("p" + std::to_string(l) + "_max", hi);
  }
  ds.records.push_back(std::move(rec));
}

} // namespace detail

/**
 * Single-photon error probabilities. Section a sweeps the Compton angle
 * for the unpolarized state; sections b, c, d sweep the azimuth at
 * theta_a = 10, 82, 170 degrees for |H> and |V>, with the pure-state
 * envelopes (eigenvalue bounds) on every row.
 */
inline Dataset run_fig1(const RunConfig& cfg) {
  cfg.validate();
  Dataset ds;
  for (int i = 0; i < cfg.grid; ++i) {
    const double theta = 180.0 * i / (cfg.grid - 1);
    detail::append_single_photon_row(ds, "a", theta, 0.0, "unpolarized",
                                     DensityMatrix2::maximally_mixed());
  }
  const struct {
    const char* section;
    double theta_deg;
  } sweeps[] = {{"b", 10.0}, {"c", 82.0}, {"d", 170.0}};
  for (const auto& sweep : sweeps)
    for (int i = 0; i < cfg.grid; ++i) {
      const double phi = 360.0 * i / (cfg.grid - 1);
      detail::append_single_photon_row(ds, sweep.section, sweep.theta_deg, phi,
                                       "H", h_state());
      detail::append_single_photon_row(ds, sweep.section, sweep.theta_deg, phi,
                                       "V", v_state());
    }
  return ds;
}

/**
 * Pair distribution versus delta_phi (phi_b = 0) for psi+ and the
 * separable H/V mixture, with product-pure and all-states envelopes, for
 * the three scattering configurations (10, 10), (82, 82), (82, 10).
 */
inline Dataset run_fig2(const RunConfig& cfg) {
  cfg.validate();
  Dataset ds;
  const DensityMatrix4 plus = psi_plus_state();
  const DensityMatrix4 mixed = mixed_hv_state();
  const std::pair<double, double> configs[] = {
      {10.0, 10.0}, {82.0, 82.0}, {82.0, 10.0}};
  for (const auto& [ta_deg, tb_deg] : configs) {
    const std::string tag = format_cell(Cell{ta_deg}) + "-" +
                            format_cell(Cell{tb_deg});
    for (int i = 0; i < cfg.grid; ++i) {
      const double dphi_deg = 360.0 * i / (cfg.grid - 1);
      const PairGeometry pg{
          ScatteringGeometry::canonical(deg_to_rad(ta_deg),
                                        deg_to_rad(dphi_deg)),
          ScatteringGeometry::canonical(deg_to_rad(tb_deg), 0.0)};
      const Envelope product =
          probability_envelope(pg, StateFamily::product_pure);
      const Envelope all = probability_envelope(pg, StateFamily::all);

      ExperimentRecord rec;
      rec.experiment_id = "fig2";
      rec.params = {{"config", tag},
                    {"theta_a_deg", ta_deg},
                    {"theta_b_deg", tb_deg},
                    {"delta_phi_deg", dphi_deg}};
      rec.outputs = {{"p_psi_plus", double_scatter_probability(pg, plus)},
                     {"p_rho_mixed", double_scatter_probability(pg, mixed)},
                     {"p_product_min", product.lo},
                     {"p_product_max", product.hi},
                     {"p_all_min", all.lo},
                     {"p_all_max", all.hi}};
      ds.records.push_back(std::move(rec));
    }
  }
  return ds;
}

/**
 * Entanglement-breaking scan: cfg.samples records of random scattering
 * angles with the concurrence of the full and accessible pair outputs.
 * Record i always consumes RNG stream i of cfg.seed, so the dataset is
 * byte-identical for any worker count.
 */
inline Dataset run_fig3(const RunConfig& cfg) {
  cfg.validate();
  const DensityMatrix4 input = detail::input_state(cfg.input);
  const std::size_t n = static_cast<std::size_t>(cfg.samples);

  std::vector<ScanRecord> records(n);
  const RngStream base(cfg.seed, 0);
  const auto work = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i)
      records[i] = scan_record(base.substream(i), input, cfg.sampling_law);
  };
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), n);
  if (workers <= 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back(work, w * chunk, std::min(n, (w + 1) * chunk));
    for (auto& t : pool) t.join();
  }

  Dataset ds;
  ds.records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = records[i];
    ExperimentRecord rec;
    rec.experiment_id = "fig3";
    rec.params = {{"sample", static_cast<std::int64_t>(i)},
                  {"theta_a_deg", rad_to_deg(r.theta_a)},
                  {"theta_b_deg", rad_to_deg(r.theta_b)},
                  {"phi_a_deg", rad_to_deg(r.phi_a)}};
    rec.outputs = {{"c_full", r.c_full},
                   {"c_accessible", r.c_accessible},
                   {"degenerate", static_cast<std::int64_t>(r.degenerate)}};
    rec.seed = cfg.seed;
    ds.records.push_back(std::move(rec));
  }
  return ds;
}

struct KnCheckResult {
  Dataset dataset;
  double max_abs_diff = 0.0;
  bool passed = false;
  std::vector<std::size_t> offending_rows;
};

/// Klein-Nishina cross-check: Kraus route vs independent oracle on a theta
/// grid; fails (CLI exit 1) if any row differs by more than 1e-10.
inline KnCheckResult run_kn_check(const RunConfig& cfg) {
  cfg.validate();
  constexpr double threshold = 1e-10;
  KnCheckResult result;
  const DensityMatrix2 mixed = DensityMatrix2::maximally_mixed();
  for (int i = 0; i < cfg.grid; ++i) {
    const double theta_deg = 180.0 * i / (cfg.grid - 1);
    const double theta = deg_to_rad(theta_deg);
    const double p = single_scatter_probability(
        ScatteringGeometry::canonical(theta, 0.0), mixed);
    const double half_oracle = 0.5 * klein_nishina_unpolarized(theta);
    const double diff = std::abs(p - half_oracle);

    ExperimentRecord rec;
    rec.experiment_id = "kn-check";
    rec.params = {{"theta_deg", theta_deg}};
    rec.outputs = {{"p_single", p},
                   {"half_oracle", half_oracle},
                   {"abs_diff", diff}};
    result.dataset.records.push_back(std::move(rec));

    result.max_abs_diff = std::max(result.max_abs_diff, diff);
    if (diff > threshold)
      result.offending_rows.push_back(static_cast<std::size_t>(i));
  }
  result.passed = result.offending_rows.empty();
  return result;
}

/// Azimuth scan of the single-photon probabilities at fixed theta_a for
/// the unpolarized state, with the oracle column alongside.
inline Dataset run_scan(const RunConfig& cfg) {
  cfg.validate();
  Dataset ds;
  const DensityMatrix2 mixed = DensityMatrix2::maximally_mixed();
  const double theta = deg_to_rad(cfg.theta_a_deg);
  for (int i = 0; i < cfg.grid; ++i) {
    const double phi_deg = 360.0 * i / (cfg.grid - 1);
    const auto set = canonical_kraus_set(theta, deg_to_rad(phi_deg));
    const auto p = error_probabilities(set, mixed);

    ExperimentRecord rec;
    rec.experiment_id = "scan";
    rec.params = {{"theta_a_deg", cfg.theta_a_deg}, {"phi_a_deg", phi_deg}};
    rec.outputs = {{"p1", p[0]},
                   {"p2", p[1]},
                   {"p3", p[2]},
                   {"p_single", p[0] + p[1]},
                   {"half_oracle", 0.5 * klein_nishina_unpolarized(theta)}};
    ds.records.push_back(std::move(rec));
  }
  return ds;
}

} // namespace ckn
