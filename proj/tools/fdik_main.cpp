// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "fdik/errors.hpp"
#include "fdik/experiments.hpp"
#include "fdik/io.hpp"

namespace {

using fdik::ExperimentConfig;
using fdik::format_double;

struct CliOptions {
  std::optional<std::string> config_path;
  std::optional<std::string> model;
  std::optional<std::string> conditioning;
  std::optional<std::string> samples;
  std::optional<std::string> seed;
  std::optional<std::string> dt;
  std::optional<std::string> iters;
  std::optional<std::string> kp;
  std::optional<std::string> kd;
  std::optional<std::string> gains;
  std::optional<std::string> out_dir;
  std::optional<std::string> workers;
  bool plot = false;
};

void add_common_options(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--config", o.config_path,
                  "Key-value config file; command-line flags override it");
  cmd->add_option("--model", o.model, "'ur10-builtin' or a URDF file path");
  cmd->add_option("--conditioning", o.conditioning,
                  "twin | uniform | kinematic");
  cmd->add_option("--samples", o.samples, "Monte-Carlo sample count");
  cmd->add_option("--seed", o.seed, "Master seed for the pinned sampler");
  cmd->add_option("--dt", o.dt, "Virtual integration step in seconds");
  cmd->add_option("--iters", o.iters, "Solver iterations per call");
  cmd->add_option("--kp", o.kp,
                  "Scale on the base stiffness diag(1,1,1,0.1,0.1,0.1)");
  cmd->add_option("--kd", o.kd, "Scale on the base damping diagonal");
  cmd->add_option("--gains", o.gains,
                  "Comma-separated kp sweep for tracking (default 1,5,50)");
  cmd->add_option("--out-dir", o.out_dir, "Artifact output directory");
  cmd->add_option("--workers", o.workers,
                  "Sampling worker threads (<= 0: automatic)");
  cmd->add_flag("--plot", o.plot, "Also render SVG plots");
}

// Config precedence: built-in defaults, then the config file, then flags.
// Both layers funnel through the same key parser so validation is uniform.
ExperimentConfig build_config(const CliOptions& o) {
  ExperimentConfig cfg;
  if (o.config_path) {
    fdik::apply_config_entries(
        cfg, fdik::parse_key_values(fdik::read_text_file(*o.config_path)));
  }
  std::map<std::string, std::string> flags;
  if (o.model) flags["model"] = *o.model;
  if (o.conditioning) flags["conditioning"] = *o.conditioning;
  if (o.samples) flags["samples"] = *o.samples;
  if (o.seed) flags["seed"] = *o.seed;
  if (o.dt) flags["dt"] = *o.dt;
  if (o.iters) flags["iters"] = *o.iters;
  if (o.kp) flags["kp"] = *o.kp;
  if (o.kd) flags["kd"] = *o.kd;
  if (o.gains) flags["gains"] = *o.gains;
  if (o.out_dir) flags["out_dir"] = *o.out_dir;
  if (o.workers) flags["workers"] = *o.workers;
  if (o.plot) flags["plot"] = "true";
  fdik::apply_config_entries(cfg, flags);
  return cfg;
}

int run_homogenize(const ExperimentConfig& cfg) {
  const auto stats = fdik::run_homogenization(cfg);
  for (const auto& s : stats) {
    double max_offdiag = 0.0;
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c)
        if (r != c)
          max_offdiag = std::max(max_offdiag, std::abs(s.mean(r, c)));
    std::cout << "variant=" << s.variant
              << " samples=" << s.samples
              << " mean_diag=" << format_double(s.mean.diagonal().mean())
              << " max_offdiag_mean=" << format_double(max_offdiag)
              << " max_std=" << format_double(s.std_dev.maxCoeff()) << "\n";
  }
  std::cout << "wrote " << cfg.out_dir << "/homogenization.csv\n";
  return 0;
}

int run_step(const ExperimentConfig& cfg) {
  const auto result = fdik::run_step_response(cfg);
  std::cout << "alpha=" << format_double(result.alpha) << "\n";
  const auto report = [](const char* name, const fdik::SolveTrace& trace) {
    std::cout << name << " final_err_trans="
              << format_double(trace.final_error.head<3>().norm())
              << " final_err_rot="
              << format_double(trace.final_error.tail<3>().norm())
              << " overshoot_dims=" << fdik::count_overshoot_dims(trace.iterations)
              << "\n";
  };
  report("fd", result.fd);
  report("jt", result.jt);
  std::cout << "wrote " << cfg.out_dir << "/step.csv\n";
  return 0;
}

int run_square(const ExperimentConfig& cfg) {
  const auto result = fdik::run_square_interpolation(cfg);
  std::cout << "alpha=" << format_double(result.alpha) << "\n";
  for (const auto& segment : result.segments) {
    std::cout << "segment=" << segment.corner
              << " fd_mean_perp=" << format_double(segment.fd.mean_perpendicular)
              << " jt_mean_perp=" << format_double(segment.jt.mean_perpendicular)
              << " fd_final_gap=" << format_double(segment.fd.final_gap)
              << "\n";
  }
  std::cout << "wrote " << cfg.out_dir << "/square.csv\n";
  return 0;
}

int run_track(const ExperimentConfig& cfg) {
  const auto result = fdik::run_tracking(cfg);
  for (const auto& gain : result.gains) {
    std::cout << "kp=" << format_double(gain.gain)
              << " mean_err_trans=" << format_double(gain.mean_err_trans)
              << " mean_err_rot=" << format_double(gain.mean_err_rot)
              << " corner_deviation=" << format_double(gain.corner_deviation)
              << "\n";
  }
  std::cout << "wrote " << cfg.out_dir << "/track.csv\n";
  return 0;
}

int run_alpha_cmd(const ExperimentConfig& cfg) {
  std::cout << format_double(fdik::run_alpha(cfg)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fdik — forward-dynamics inverse-kinematics solver experiments"};
  app.require_subcommand(1);

  CliOptions options;
  CLI::App* homogenize = app.add_subcommand(
      "homogenize",
      "Entrywise statistics of the f -> xdd mapping for three model variants");
  CLI::App* step = app.add_subcommand(
      "step", "Pose-step convergence comparison (forward-dynamics vs scaled "
              "transpose)");
  CLI::App* square = app.add_subcommand(
      "square", "Fixed-target interpolation around a 0.4 m square");
  CLI::App* track = app.add_subcommand(
      "track", "Moving-target square tracking with a gain sweep");
  CLI::App* alpha = app.add_subcommand(
      "alpha", "Print the transpose scale for the conditioned model");
  for (CLI::App* cmd : {homogenize, step, square, track, alpha}) {
    add_common_options(cmd, options);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const ExperimentConfig cfg = build_config(options);
    if (app.got_subcommand(homogenize)) return run_homogenize(cfg);
    if (app.got_subcommand(step)) return run_step(cfg);
    if (app.got_subcommand(square)) return run_square(cfg);
    if (app.got_subcommand(track)) return run_track(cfg);
    if (app.got_subcommand(alpha)) return run_alpha_cmd(cfg);
    std::cerr << "no subcommand selected\n";
    return 1;
  } catch (const fdik::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const fdik::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const fdik::Error& e) {
    // Model, parse, and topology failures all indicate unusable model input.
    std::cerr << "model error: " << e.what() << "\n";
    return 2;
  }
}
