// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdik/model.hpp"
#include "fdik/solver.hpp"
#include "fdik/spatial.hpp"

namespace fdik {

/// Inertial reshaping applied to the solver model.
///  - Twin:      all mass/inertia moved to the last link (1 kg, identity
///               rotational inertia at the tip); other links keep 1e-3 kg /
///               1e-6 kgm^2 residuals for numerical stability.
///  - Uniform:   total 1 kg and identity inertia split equally over links.
///  - Kinematic: no inertia involved at all (J J^T mapping); valid only for
///               experiments that never touch H.
enum class Conditioning { Twin, Uniform, Kinematic };

Conditioning parse_conditioning(const std::string& text);
std::string conditioning_name(Conditioning c);

/// Shared experiment configuration. Optional fields fall back to the
/// per-experiment defaults listed with each runner.
struct ExperimentConfig {
  std::string model = "ur10-builtin";  // "ur10-builtin" or a URDF file path
  Conditioning conditioning = Conditioning::Twin;
  std::int64_t samples = 100000;  // Monte-Carlo sweep length
  std::uint64_t seed = 2026;
  std::optional<double> dt;
  std::optional<int> iterations;
  double kp_scale = 1.0;  // scales the base gain diag(1,1,1,0.1,0.1,0.1)
  double kd_scale = 0.0;  // scales the same base for the damping diagonal
  std::vector<double> gains = {1.0, 5.0, 50.0};  // tracking kp sweep
  double track_speed = 0.2;                      // m/s along the square
  double track_rate = 100.0;                     // target samples per second
  bool reset_error_on_new_target = false;
  std::string out_dir = "out";
  bool plot = false;
  int workers = 0;  // <= 0: automatic
};

/// Applies `key = value` entries onto `cfg`. Unknown keys or malformed
/// values raise ConfigError. Recognized keys mirror the field names:
/// model, conditioning, samples, seed, dt, iters, kp, kd, gains (comma
/// separated), speed, rate, reset_error_on_new_target, out_dir, plot,
/// workers.
void apply_config_entries(ExperimentConfig& cfg,
                          const std::map<std::string, std::string>& entries);

/// Loads cfg.model ("ur10-builtin" or a URDF path), unconditioned.
ChainModel load_experiment_model(const ExperimentConfig& cfg);

/// Applies cfg.conditioning. Kinematic conditioning is rejected for solver
/// use (`for_solver = true`) since the forward-dynamics map needs inertia.
ChainModel condition_model(const ChainModel& chain, Conditioning c,
                           bool for_solver);

/// Base gain diagonal shared by every experiment.
Vector6d gain_base();

// ---------------------------------------------------------------------------
// Scenario geometry. The start configuration, step target, and square are
// fixed repo conventions (documented in the README); every qualitative
// comparison below is asserted on exactly these scenarios.
// ---------------------------------------------------------------------------

/// Elbow-up home configuration used by all pose experiments.
Eigen::VectorXd home_configuration();

/// Step target: home tip pose translated by (0.3, 0.3, -0.2) m and rotated
/// by 20 degrees about the world axis (1,1,1)/sqrt(3).
Transform step_target(const Transform& home_pose);

/// Corners of the 0.4 m square centered on the home tip position, lying in
/// the world y-z plane (x fixed), counter-clockwise when viewed from +x,
/// all sharing the home tip orientation. Corner 0 is the (-y, -z) corner.
std::array<Transform, 4> square_corners(const Transform& home_pose);

/// Constant-speed target stream along the square perimeter starting at
/// corner 0: one TrackPoint per sample period, timestamps 1/rate .. laps*T.
std::vector<TrackPoint> square_track_path(
    const std::array<Transform, 4>& corners, double speed, double rate_hz);

// ---------------------------------------------------------------------------
// Runners. Every runner writes its CSV artifacts under cfg.out_dir (and SVG
// plots when cfg.plot is set) and returns the computed data. Given identical
// config and seed, outputs are byte-identical across runs and machines.
// ---------------------------------------------------------------------------

/// Per-variant entrywise statistics of the f -> xdd mapping matrix.
struct HomogenizationStats {
  std::string variant;  // "kinematic", "uniform", or "twin"
  Matrix6d mean;
  Matrix6d variance;
  Matrix6d std_dev;
  std::int64_t samples = 0;
};

/// Sweeps cfg.samples random configurations (joints uniform in [-pi, pi])
/// and accumulates entrywise statistics of three mappings: kinematic J J^T,
/// uniform-model J H^{-1} J^T, and twin-model J H^{-1} J^T.
/// Writes homogenization_<variant>.csv per variant plus the combined
/// homogenization.csv, schema: variant,entry_row,entry_col,mean,variance,std.
std::vector<HomogenizationStats> run_homogenization(
    const ExperimentConfig& cfg);

/// Pose-step convergence comparison. Defaults dt = 1, iterations = 150.
/// Writes step.csv (iter,ex,ey,ez,erx,ery,erz,solver; one row per iteration
/// per solver) and step_metrics.csv.
struct StepResult {
  SolveTrace fd;
  SolveTrace jt;
  double alpha = 0.0;
  Eigen::VectorXd q0;
  Transform target;
};
StepResult run_step_response(const ExperimentConfig& cfg);

/// Same runner with an explicit scenario instead of the documented one.
StepResult run_step_response(const ExperimentConfig& cfg,
                             const Eigen::VectorXd& q0,
                             const Transform& target);

/// Count of error dimensions whose per-iteration trace changes sign at
/// least once (both values beyond `floor` in magnitude).
int count_overshoot_dims(const std::vector<IterationRecord>& iterations,
                         double floor = 1e-9);

/// Tip positions after each of `steps` solver calls toward a fixed target.
std::vector<Eigen::Vector3d> interpolation_path_fd(const ChainModel& model,
                                                   Eigen::VectorXd q,
                                                   const Transform& target,
                                                   int steps,
                                                   const SolverConfig& config);
std::vector<Eigen::Vector3d> interpolation_path_jt(
    const ChainModel& model, Eigen::VectorXd q, const Transform& target,
    int steps, const BaselineConfig& config);

/// Distance statistics of a path against the straight line through
/// `from` -> `to` plus the gap between the path end and `to`.
struct SegmentMetrics {
  double mean_perpendicular = 0.0;
  double max_perpendicular = 0.0;
  double final_gap = 0.0;
};
SegmentMetrics segment_metrics(const std::vector<Eigen::Vector3d>& path,
                               const Eigen::Vector3d& from,
                               const Eigen::Vector3d& to);

/// Square interpolation: for each corner k, both solvers run `steps` fixed-
/// target calls toward corner k+1 (counter-clockwise), starting from the
/// converged corner-k configuration. Defaults dt = 0.1, iterations = 50,
/// 1000 steps per segment. Writes square.csv (solver,corner,step,x,y,z) and
/// square_metrics.csv.
struct SquareSegmentResult {
  int corner = 0;  // start corner of the segment
  std::vector<Eigen::Vector3d> fd_path;
  std::vector<Eigen::Vector3d> jt_path;
  SegmentMetrics fd;
  SegmentMetrics jt;
};
struct SquareResult {
  std::array<Transform, 4> corners;
  std::vector<SquareSegmentResult> segments;
  double alpha = 0.0;
};
SquareResult run_square_interpolation(const ExperimentConfig& cfg);

/// Square tracking with a gain sweep. Defaults dt = 0.1, iterations = 10;
/// the target moves at cfg.track_speed sampled at cfg.track_rate for one
/// lap. Writes track.csv (gain,t,x,y,z,err_trans,err_rot) and
/// track_metrics.csv.
struct TrackGainResult {
  double gain = 0.0;
  std::vector<TrackSample> samples;
  double mean_err_trans = 0.0;
  double mean_err_rot = 0.0;
  /// Largest distance from the commanded tip to the square perimeter —
  /// measures how deeply corners are cut.
  double corner_deviation = 0.0;
};
struct TrackResult {
  std::array<Transform, 4> corners;
  std::vector<TrackGainResult> gains;
};
TrackResult run_tracking(const ExperimentConfig& cfg);

/// Transpose scale for the configured (conditioned) model over cfg.samples
/// pinned-seed samples.
double run_alpha(const ExperimentConfig& cfg);

}  // namespace fdik
