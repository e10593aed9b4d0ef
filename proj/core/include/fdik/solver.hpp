// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "fdik/model.hpp"
#include "fdik/spatial.hpp"
#include "fdik/stats.hpp"

namespace fdik {

/// Gains and integration constants for the forward-dynamics solver.
///
/// Each iteration converts the 6-D pose error into a virtual tip wrench
/// kp*eps + kd*eps_dot, maps it to a joint acceleration through the chain's
/// inverse inertia, integrates over `dt` starting from rest, and discards
/// velocity and acceleration afterwards. `kp`/`kd` are the diagonals of the
/// stiffness and damping matrices in (x, y, z, rx, ry, rz) order.
struct SolverConfig {
  double dt = 1.0;
  int iterations = 150;
  Vector6d kp = (Vector6d() << 1.0, 1.0, 1.0, 0.1, 0.1, 0.1).finished();
  Vector6d kd = Vector6d::Zero();
};

/// Gains for the scaled-transpose baseline. Same integration scheme, but the
/// wrench maps through alpha * J^T instead of H^{-1} J^T, and there is no
/// damping term.
struct BaselineConfig {
  double alpha = 1.0;
  double dt = 1.0;
  int iterations = 150;
  Vector6d kp = (Vector6d() << 1.0, 1.0, 1.0, 0.1, 0.1, 0.1).finished();
};

/// State of one solver iteration: the error it acted on, the acceleration it
/// produced, and the configuration it left behind.
struct IterationRecord {
  Eigen::VectorXd q;
  Vector6d eps = Vector6d::Zero();
  Eigen::VectorXd qdd;
};

/// Outcome of an iterative solve. `iterations` is filled only when a trace
/// is requested and then holds exactly the configured iteration count.
/// `q` is the commanded configuration after the last iteration and
/// `final_error` the pose error evaluated there.
struct SolveTrace {
  Eigen::VectorXd q;
  Vector6d final_error = Vector6d::Zero();
  std::vector<IterationRecord> iterations;
};

/// Pose error of the chain tip at `q` relative to `target`.
Vector6d solver_error(const ChainModel& model, const Eigen::VectorXd& q,
                      const Transform& target);

/// One forward-dynamics iteration: eps = pose_error(target, fk(q));
/// eps_dot = (eps - prev_error) / dt; wrench = kp*eps + kd*eps_dot;
/// qdd = H^{-1} J^T wrench; qd = 0.5*dt*qdd; q += 0.5*dt*qd.
/// Neither velocity nor acceleration carries over to the next call — only
/// `q` and `prev_error` (set to the error this step acted on) persist.
/// Returns that error.
Vector6d step_fd(const ChainModel& model, const Transform& target,
                 const SolverConfig& config, Eigen::VectorXd& q,
                 Vector6d& prev_error);

/// One scaled-transpose iteration: identical to step_fd with the wrench
/// mapped through alpha * J^T and no damping term.
Vector6d step_jt(const ChainModel& model, const Transform& target,
                 const BaselineConfig& config, Eigen::VectorXd& q,
                 Vector6d& prev_error);

/// Runs `config.iterations` forward-dynamics iterations from `q0` with the
/// error history cleared (prev_error = 0).
SolveTrace solve_fd(const ChainModel& model, const Eigen::VectorXd& q0,
                    const Transform& target, const SolverConfig& config,
                    bool record_trace = false);

/// Runs `config.iterations` scaled-transpose iterations from `q0`.
SolveTrace solve_jt(const ChainModel& model, const Eigen::VectorXd& q0,
                    const Transform& target, const BaselineConfig& config,
                    bool record_trace = false);

/// Entrywise moments of the boosted task mobility J H^{-1} J^T and of the
/// kinematic Gram matrix J J^T over a joint-space sample sweep.
struct MobilitySweep {
  MatrixMoments<6, 6> boosted;
  MatrixMoments<6, 6> gram;
};

/// Samples `samples` configurations with every joint uniform in [-pi, pi]
/// (sample i is pinned to (seed, i); see sampling.hpp) and accumulates both
/// matrix statistics. `workers` <= 0 picks a thread count automatically; the
/// result is identical for every worker count because samples are grouped
/// into fixed blocks of kSampleBlock merged in index order.
MobilitySweep sweep_task_mobility(const ChainModel& model,
                                  std::int64_t samples, std::uint64_t seed,
                                  int workers = 0);

/// Scale that makes the plain transpose comparable to the boosted map:
/// mean over the diagonal of the sample-mean boosted mobility divided by the
/// same functional of the sample-mean Gram matrix.
double transpose_scale(const MobilitySweep& sweep);

/// Convenience wrapper: sweep_task_mobility followed by transpose_scale.
double compute_alpha(const ChainModel& model, std::int64_t samples,
                     std::uint64_t seed, int workers = 0);

/// Target pose annotated with its tick timestamp (seconds).
struct TrackPoint {
  double t = 0.0;
  Transform target;
};

/// Commanded state after servoing to one TrackPoint.
struct TrackSample {
  double t = 0.0;
  Eigen::VectorXd q;
  Eigen::Vector3d tip = Eigen::Vector3d::Zero();
  double err_trans = 0.0;
  double err_rot = 0.0;
};

struct TrackOptions {
  /// When true, the error history is cleared whenever a new target arrives.
  /// Off by default: a target jump then shows up as one derivative spike
  /// scaled by kd (inconsequential whenever kd = 0).
  bool reset_error_on_new_target = false;
};

/// Servoing session: consumes the timestamped target stream in order,
/// running `config.iterations` solver iterations per target from the
/// previously commanded configuration. The error history persists across
/// targets (cleared only at session start, unless opted otherwise). Returns
/// the commanded joint vector plus tip pose error per tick; `q` is updated
/// in place. Throws ConfigError if timestamps are not strictly increasing.
std::vector<TrackSample> track(const ChainModel& model, Eigen::VectorXd& q,
                               const std::vector<TrackPoint>& path,
                               const SolverConfig& config,
                               const TrackOptions& options = {});

}  // namespace fdik
