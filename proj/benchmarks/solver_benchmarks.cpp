// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "fdik/dynamics.hpp"
#include "fdik/experiments.hpp"
#include "fdik/kinematics.hpp"
#include "fdik/model.hpp"
#include "fdik/sampling.hpp"
#include "fdik/solver.hpp"

namespace {

fdik::ChainModel boosted_ur10() {
  return fdik::condition_model(fdik::builtin_ur10(),
                               fdik::Conditioning::Twin, true);
}

void BM_ForwardKinematics(benchmark::State& state) {
  const fdik::ChainModel model = boosted_ur10();
  const Eigen::VectorXd q = fdik::sample_joint_vector(model.dof(), 1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fdik::forward_kinematics(model, q));
  }
}
BENCHMARK(BM_ForwardKinematics);

void BM_GeometricJacobian(benchmark::State& state) {
  const fdik::ChainModel model = boosted_ur10();
  const Eigen::VectorXd q = fdik::sample_joint_vector(model.dof(), 1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fdik::geometric_jacobian(model, q));
  }
}
BENCHMARK(BM_GeometricJacobian);

void BM_JointSpaceInertia(benchmark::State& state) {
  const fdik::ChainModel model = boosted_ur10();
  const Eigen::VectorXd q = fdik::sample_joint_vector(model.dof(), 1, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fdik::joint_space_inertia(model, q));
  }
}
BENCHMARK(BM_JointSpaceInertia);

void BM_TaskSpaceMobility(benchmark::State& state) {
  const fdik::ChainModel model = boosted_ur10();
  const Eigen::VectorXd q = fdik::sample_joint_vector(model.dof(), 1, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fdik::task_space_mobility(model, q));
  }
}
BENCHMARK(BM_TaskSpaceMobility);

// One full solver iteration: FK + Jacobian + inertia + Cholesky + update.
// The tracking experiments run 8000 of these per gain, so per-call latency
// dominates experiment wall time.
void BM_StepFd(benchmark::State& state) {
  const fdik::ChainModel model = boosted_ur10();
  Eigen::VectorXd q = fdik::home_configuration();
  const fdik::Transform target =
      fdik::step_target(fdik::forward_kinematics(model, q));
  fdik::SolverConfig config;
  fdik::Vector6d prev = fdik::Vector6d::Zero();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fdik::step_fd(model, target, config, q, prev));
  }
}
BENCHMARK(BM_StepFd);

void BM_StepJt(benchmark::State& state) {
  const fdik::ChainModel model = boosted_ur10();
  Eigen::VectorXd q = fdik::home_configuration();
  const fdik::Transform target =
      fdik::step_target(fdik::forward_kinematics(model, q));
  fdik::BaselineConfig config;
  config.alpha = 0.7885;
  fdik::Vector6d prev = fdik::Vector6d::Zero();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fdik::step_jt(model, target, config, q, prev));
  }
}
BENCHMARK(BM_StepJt);

}  // namespace

BENCHMARK_MAIN();
