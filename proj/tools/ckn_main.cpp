/*
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ckn/experiments.hpp"

// Exit codes: 0 success, 1 validation failure (kn-check threshold breach),
// 2 I/O error, 3 bad configuration or command line.

namespace {

struct CliOverrides {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<int> grid;
  std::optional<double> theta_a;
  std::optional<double> theta_b;
  std::optional<std::string> sampling_law;
  std::optional<std::string> input;
  std::optional<int> jobs;
  std::optional<std::string> out;
};

void add_common_options(CLI::App& cmd, CliOverrides& o) {
  cmd.add_option("--config", o.config,
                 "Flat key = value config file (CLI flags take precedence; "
                 "the CKN_CONFIG environment variable names a default file)");
  cmd.add_option("--out", o.out, "Output CSV path (default: standard output)");
}

ckn::RunConfig assemble(const CliOverrides& o, ckn::Experiment experiment,
                        int default_grid) {
  ckn::RunConfig cfg;
  cfg.experiment = experiment;
  cfg.grid = default_grid;

  std::optional<std::string> config_path = o.config;
  if (!config_path)
    if (const char* env = std::getenv("CKN_CONFIG"); env && *env)
      config_path = std::string(env);
  if (config_path)
    for (const auto& [key, value] : ckn::parse_config_file(*config_path))
      ckn::apply_config_entry(cfg, key, value);

  if (o.seed) cfg.seed = *o.seed;
  if (o.samples) cfg.samples = *o.samples;
  if (o.grid) cfg.grid = *o.grid;
  if (o.theta_a) cfg.theta_a_deg = *o.theta_a;
  if (o.theta_b) cfg.theta_b_deg = *o.theta_b;
  if (o.sampling_law) cfg.sampling_law = ckn::parse_sampling_law(*o.sampling_law);
  if (o.input) cfg.input = ckn::parse_input_state(*o.input);
  if (o.jobs) cfg.jobs = *o.jobs;
  if (o.out) cfg.out = *o.out;

  cfg.validate();
  return cfg;
}

int emit(const ckn::Dataset& ds, const std::string& out) {
  if (out.empty() || out == "-") {
    ckn::write_csv(std::cout, ds);
    if (!std::cout) {
      std::cerr << "error: writing to standard output failed\n";
      return 2;
    }
    return 0;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open '" << out << "' for writing\n";
    return 2;
  }
  ckn::write_csv(file, ds);
  file.flush();
  if (!file) {
    std::cerr << "error: writing '" << out << "' failed\n";
    return 2;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ckn - polarization error channel of 511 keV Compton scattering.\n"
      "Subcommands emit CSV datasets (17 significant digits, stable column\n"
      "order) for the single-photon probabilities, the pair distribution,\n"
      "the entanglement-breaking scan and the Klein-Nishina cross-check."};
  app.require_subcommand(1);

  CliOverrides o;

  auto* fig1 = app.add_subcommand(
      "fig1",
      "Single-photon error probabilities.\nColumns: experiment, section, "
      "theta_a_deg, phi_a_deg, state, p1, p2, p3, p1_min, p1_max, p2_min, "
      "p2_max, p3_min, p3_max");
  add_common_options(*fig1, o);
  fig1->add_option("--grid", o.grid, "Points per sweep (default 181)");

  auto* fig2 = app.add_subcommand(
      "fig2",
      "Pair distribution vs delta_phi with state-space envelopes.\nColumns: "
      "experiment, config, theta_a_deg, theta_b_deg, delta_phi_deg, "
      "p_psi_plus, p_rho_mixed, p_product_min, p_product_max, p_all_min, "
      "p_all_max");
  add_common_options(*fig2, o);
  fig2->add_option("--grid", o.grid, "Points per delta_phi sweep (default 181)");

  auto* fig3 = app.add_subcommand(
      "fig3",
      "Entanglement-breaking scan over random scattering angles.\nColumns: "
      "experiment, sample, theta_a_deg, theta_b_deg, phi_a_deg, c_full, "
      "c_accessible, degenerate, seed");
  add_common_options(*fig3, o);
  fig3->add_option("--samples", o.samples, "Number of records (default 5000)");
  fig3->add_option("--seed", o.seed, "RNG seed (default 20250108)");
  fig3->add_option("--sampling-law", o.sampling_law,
                   "uniform-theta (default) or uniform-solid-angle");
  fig3->add_option("--input", o.input,
                   "Input pair state: psi-plus (default) or rho-mixed");
  fig3->add_option("--jobs", o.jobs,
                   "Worker threads; output is identical for any value");

  auto* kn = app.add_subcommand(
      "kn-check",
      "Klein-Nishina cross-check of the Kraus route (exit 1 on any row with "
      "abs_diff > 1e-10).\nColumns: experiment, theta_deg, p_single, "
      "half_oracle, abs_diff");
  add_common_options(*kn, o);
  kn->add_option("--grid", o.grid, "Theta grid points (default 1000)");

  auto* scan = app.add_subcommand(
      "scan",
      "Azimuth scan of the unpolarized single-photon probabilities at fixed "
      "theta_a.\nColumns: experiment, theta_a_deg, phi_a_deg, p1, p2, p3, "
      "p_single, half_oracle");
  add_common_options(*scan, o);
  scan->add_option("--grid", o.grid, "Points per sweep (default 181)");
  scan->add_option("--theta-a", o.theta_a, "Compton angle in degrees (default 82)");
  scan->add_option("--theta-b", o.theta_b, "Reserved for pair scans");
  scan->add_option("--seed", o.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (fig1->parsed()) {
      const auto cfg = assemble(o, ckn::Experiment::fig1, 181);
      return emit(ckn::run_fig1(cfg), cfg.out);
    }
    if (fig2->parsed()) {
      const auto cfg = assemble(o, ckn::Experiment::fig2, 181);
      return emit(ckn::run_fig2(cfg), cfg.out);
    }
    if (fig3->parsed()) {
      const auto cfg = assemble(o, ckn::Experiment::fig3, 181);
      return emit(ckn::run_fig3(cfg), cfg.out);
    }
    if (kn->parsed()) {
      const auto cfg = assemble(o, ckn::Experiment::kn_check, 1000);
      const auto result = ckn::run_kn_check(cfg);
      const int io_rc = emit(result.dataset, cfg.out);
      if (io_rc != 0) return io_rc;
      if (!result.passed) {
        std::cerr << "kn-check: FAIL, max |diff| = " << result.max_abs_diff
                  << " (threshold 1e-10); offending rows:\n";
        for (std::size_t row : result.offending_rows) {
          const auto& rec = result.dataset.records[row];
          std::cerr << "  theta_deg=" << ckn::format_cell(rec.params[0].second)
                    << " abs_diff=" << ckn::format_cell(rec.outputs[2].second)
                    << "\n";
        }
        return 1;
      }
      std::cerr << "kn-check: PASS, max |diff| = " << result.max_abs_diff
                << " over " << result.dataset.records.size() << " rows\n";
      return 0;
    }
    if (scan->parsed()) {
      const auto cfg = assemble(o, ckn::Experiment::scan, 181);
      return emit(ckn::run_scan(cfg), cfg.out);
    }
  } catch (const ckn::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const ckn::io_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const ckn::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
