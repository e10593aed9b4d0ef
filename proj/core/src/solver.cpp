// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#include "fdik/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "fdik/dynamics.hpp"
#include "fdik/errors.hpp"
#include "fdik/kinematics.hpp"
#include "fdik/sampling.hpp"

namespace fdik {

namespace {

void check_positive_dt(double dt) {
  if (!(dt > 0.0)) throw ConfigError("solver dt must be positive");
}

void check_solver_config(const SolverConfig& config) {
  check_positive_dt(config.dt);
  if (config.iterations < 1) throw ConfigError("solver iterations must be >= 1");
  if (!config.kp.allFinite() || !config.kd.allFinite())
    throw ConfigError("solver gains must be finite");
  if ((config.kp.array() <= 0.0).any())
    throw ConfigError("solver kp entries must be positive");
  if ((config.kd.array() < 0.0).any())
    throw ConfigError("solver kd entries must be nonnegative");
}

void check_baseline_config(const BaselineConfig& config) {
  check_positive_dt(config.dt);
  if (config.iterations < 1) throw ConfigError("solver iterations must be >= 1");
  if (!config.kp.allFinite() || !std::isfinite(config.alpha))
    throw ConfigError("solver gains must be finite");
  if ((config.kp.array() <= 0.0).any())
    throw ConfigError("solver kp entries must be positive");
  if (!(config.alpha > 0.0)) throw ConfigError("alpha must be positive");
}

// Acceleration rule of the forward-dynamics solver.
Eigen::VectorXd accel_fd(const ChainModel& model, const ChainFrames& frames,
                         const Vector6d& wrench) {
  const Jacobian jac = jacobian_from_frames(frames);
  const Eigen::MatrixXd h = joint_space_inertia(model, frames);
  return apply_inverse_inertia(h, jac.transpose() * wrench);
}

// Acceleration rule of the scaled-transpose baseline.
Eigen::VectorXd accel_jt(const ChainFrames& frames, double alpha,
                         const Vector6d& wrench) {
  const Jacobian jac = jacobian_from_frames(frames);
  return alpha * (jac.transpose() * wrench);
}

// Shared iteration body: error, wrench, acceleration via `accel`, rest-start
// integration over dt. Returns the error the update acted on.
template <typename AccelFn>
Vector6d step_common(const ChainModel& model, const Transform& target,
                     double dt, const Vector6d& kp, const Vector6d& kd,
                     Eigen::VectorXd& q, Vector6d& prev_error,
                     AccelFn&& accel, Eigen::VectorXd* qdd_out = nullptr) {
  const ChainFrames frames = compute_frames(model, q);
  const Vector6d eps = pose_error(target, frames.tip).eps;
  const Vector6d eps_dot = (eps - prev_error) / dt;
  const Vector6d wrench = kp.cwiseProduct(eps) + kd.cwiseProduct(eps_dot);
  const Eigen::VectorXd qdd = accel(frames, wrench);
  // Integrate from rest: the velocity reached at dt/2 advances the
  // configuration, then both velocity and acceleration are dropped.
  const Eigen::VectorXd qd = 0.5 * dt * qdd;
  q += 0.5 * dt * qd;
  prev_error = eps;
  if (qdd_out != nullptr) *qdd_out = qdd;
  return eps;
}

template <typename StepFn>
SolveTrace solve_common(const Eigen::VectorXd& q0, int iterations,
                        bool record_trace, StepFn&& step,
                        const ChainModel& model, const Transform& target) {
  SolveTrace trace;
  trace.q = q0;
  Vector6d prev_error = Vector6d::Zero();
  if (record_trace) trace.iterations.reserve(static_cast<std::size_t>(iterations));
  for (int i = 0; i < iterations; ++i) {
    Eigen::VectorXd qdd;
    const Vector6d eps =
        step(trace.q, prev_error, record_trace ? &qdd : nullptr);
    if (record_trace) {
      IterationRecord record;
      record.q = trace.q;
      record.eps = eps;
      record.qdd = std::move(qdd);
      trace.iterations.push_back(std::move(record));
    }
  }
  trace.final_error = solver_error(model, trace.q, target);
  return trace;
}

}  // namespace

Vector6d solver_error(const ChainModel& model, const Eigen::VectorXd& q,
                      const Transform& target) {
  return pose_error(target, forward_kinematics(model, q)).eps;
}

Vector6d step_fd(const ChainModel& model, const Transform& target,
                 const SolverConfig& config, Eigen::VectorXd& q,
                 Vector6d& prev_error) {
  check_solver_config(config);
  return step_common(model, target, config.dt, config.kp, config.kd, q,
                     prev_error,
                     [&](const ChainFrames& frames, const Vector6d& wrench) {
                       return accel_fd(model, frames, wrench);
                     });
}

Vector6d step_jt(const ChainModel& model, const Transform& target,
                 const BaselineConfig& config, Eigen::VectorXd& q,
                 Vector6d& prev_error) {
  check_baseline_config(config);
  return step_common(model, target, config.dt, config.kp, Vector6d::Zero(), q,
                     prev_error,
                     [&](const ChainFrames& frames, const Vector6d& wrench) {
                       return accel_jt(frames, config.alpha, wrench);
                     });
}

SolveTrace solve_fd(const ChainModel& model, const Eigen::VectorXd& q0,
                    const Transform& target, const SolverConfig& config,
                    bool record_trace) {
  check_solver_config(config);
  return solve_common(
      q0, config.iterations, record_trace,
      [&](Eigen::VectorXd& q, Vector6d& prev_error, Eigen::VectorXd* qdd) {
        return step_common(model, target, config.dt, config.kp, config.kd, q,
                           prev_error,
                           [&](const ChainFrames& frames,
                               const Vector6d& wrench) {
                             return accel_fd(model, frames, wrench);
                           },
                           qdd);
      },
      model, target);
}

SolveTrace solve_jt(const ChainModel& model, const Eigen::VectorXd& q0,
                    const Transform& target, const BaselineConfig& config,
                    bool record_trace) {
  check_baseline_config(config);
  return solve_common(
      q0, config.iterations, record_trace,
      [&](Eigen::VectorXd& q, Vector6d& prev_error, Eigen::VectorXd* qdd) {
        return step_common(model, target, config.dt, config.kp,
                           Vector6d::Zero(), q, prev_error,
                           [&](const ChainFrames& frames,
                               const Vector6d& wrench) {
                             return accel_jt(frames, config.alpha, wrench);
                           },
                           qdd);
      },
      model, target);
}

MobilitySweep sweep_task_mobility(const ChainModel& model,
                                  std::int64_t samples, std::uint64_t seed,
                                  int workers) {
  if (samples <= 0) throw ConfigError("sample count must be positive");
  const int dof = model.dof();

  const std::int64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<MobilitySweep> block_stats(static_cast<std::size_t>(blocks));

  const auto run_block = [&](std::int64_t b) {
    MobilitySweep& stats = block_stats[static_cast<std::size_t>(b)];
    const std::int64_t lo = b * kSampleBlock;
    const std::int64_t hi = std::min(samples, lo + kSampleBlock);
    for (std::int64_t i = lo; i < hi; ++i) {
      const Eigen::VectorXd q =
          sample_joint_vector(dof, seed, static_cast<std::uint64_t>(i));
      const ChainFrames frames = compute_frames(model, q);
      const Jacobian jac = jacobian_from_frames(frames);
      const Eigen::MatrixXd h = joint_space_inertia(model, frames);
      stats.boosted.add(task_space_mobility(h, jac));
      stats.gram.add(Matrix6d(jac * jac.transpose()));
    }
  };

  int thread_count = workers;
  if (thread_count <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    thread_count = static_cast<int>(std::clamp(hw, 1u, 16u));
  }
  thread_count =
      static_cast<int>(std::min<std::int64_t>(thread_count, blocks));

  if (thread_count <= 1) {
    for (std::int64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) {
      pool.emplace_back([&, t] {
        for (std::int64_t b = t; b < blocks; b += thread_count) run_block(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Merge in block order so the result is independent of the worker count.
  MobilitySweep total;
  for (const MobilitySweep& stats : block_stats) {
    total.boosted.merge(stats.boosted);
    total.gram.merge(stats.gram);
  }
  return total;
}

double transpose_scale(const MobilitySweep& sweep) {
  const double boosted = sweep.boosted.mean().diagonal().mean();
  const double gram = sweep.gram.mean().diagonal().mean();
  if (!(gram > 0.0))
    throw ModelError("degenerate Gram matrix in transpose scale");
  return boosted / gram;
}

double compute_alpha(const ChainModel& model, std::int64_t samples,
                     std::uint64_t seed, int workers) {
  return transpose_scale(sweep_task_mobility(model, samples, seed, workers));
}

std::vector<TrackSample> track(const ChainModel& model, Eigen::VectorXd& q,
                               const std::vector<TrackPoint>& path,
                               const SolverConfig& config,
                               const TrackOptions& options) {
  check_solver_config(config);
  std::vector<TrackSample> out;
  out.reserve(path.size());
  Vector6d prev_error = Vector6d::Zero();
  double last_t = -std::numeric_limits<double>::infinity();
  for (const TrackPoint& point : path) {
    if (!(point.t > last_t))
      throw ConfigError("track timestamps must be strictly increasing");
    last_t = point.t;
    if (options.reset_error_on_new_target) prev_error = Vector6d::Zero();
    for (int i = 0; i < config.iterations; ++i) {
      step_common(model, point.target, config.dt, config.kp, config.kd, q,
                  prev_error,
                  [&](const ChainFrames& frames, const Vector6d& wrench) {
                    return accel_fd(model, frames, wrench);
                  });
    }
    TrackSample sample;
    sample.t = point.t;
    sample.q = q;
    const Transform tip = forward_kinematics(model, q);
    sample.tip = tip.translation;
    const Vector6d err = pose_error(point.target, tip).eps;
    sample.err_trans = err.head<3>().norm();
    sample.err_rot = err.tail<3>().norm();
    out.push_back(sample);
  }
  return out;
}

}  // namespace fdik
