// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fdik/errors.hpp"
#include "fdik/kinematics.hpp"
#include "fdik/sampling.hpp"
#include "fdik/solver.hpp"
#include "support/test_chains.hpp"

namespace fdik {
namespace {

bool bit_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

// Perturbation of q small enough that the resulting target stays within
// 1 cm translational / 0.01 rad rotational of the start pose.
Eigen::VectorXd nearby_target_config(const ChainModel& chain,
                                     const Eigen::VectorXd& q,
                                     std::uint64_t seed, std::int64_t index) {
  Eigen::VectorXd delta =
      0.01 * testing::random_q(chain, seed, index) / M_PI;
  const Transform start = forward_kinematics(chain, q);
  for (int halvings = 0; halvings < 60; ++halvings) {
    const Vector6d e =
        pose_error(forward_kinematics(chain, q + delta), start).eps;
    if (e.head<3>().norm() <= 0.01 && e.tail<3>().norm() <= 0.01) break;
    delta *= 0.5;
  }
  return q + delta;
}

TEST_CASE("a reached target is a fixed point of both solvers") {
  const ChainModel chains[] = {testing::lever_chain(),
                               testing::planar_three_dof(),
                               testing::boosted_ur10()};
  int pairs = 0;
  for (const ChainModel& chain : chains) {
    for (int i = 0; i < 34 && pairs < 100; ++i, ++pairs) {
      const Eigen::VectorXd q0 = testing::random_q(chain, 101, i);
      const Transform target = forward_kinematics(chain, q0);

      std::mt19937_64 gen(mix_seed(101, 1000 + static_cast<std::uint64_t>(i)));
      SolverConfig config;
      config.dt = 0.05 + uniform_unit(gen);
      Eigen::VectorXd q = q0;
      Vector6d prev = Vector6d::Zero();
      step_fd(chain, target, config, q, prev);
      CHECK(bit_equal(q, q0));

      BaselineConfig baseline;
      baseline.dt = config.dt;
      q = q0;
      prev = Vector6d::Zero();
      step_jt(chain, target, baseline, q, prev);
      CHECK(bit_equal(q, q0));
    }
  }
  CHECK(pairs == 100);
}

TEST_CASE("no hidden state accumulates at a reached target") {
  const ChainModel chain = testing::boosted_ur10();
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd q0 = testing::random_q(chain, 103, i);
    const Transform target = forward_kinematics(chain, q0);
    SolverConfig config;
    config.iterations = 25;
    const SolveTrace once = solve_fd(chain, q0, target, config);
    config.iterations = 50;
    const SolveTrace twice = solve_fd(chain, q0, target, config);
    CHECK(bit_equal(once.q, q0));
    CHECK(bit_equal(twice.q, q0));
  }
}

TEST_CASE("solves are bit-reproducible") {
  const ChainModel chain = testing::boosted_ur10();
  const Eigen::VectorXd q0 = testing::random_q(chain, 107, 0);
  const Transform target =
      forward_kinematics(chain, testing::random_q(chain, 107, 1));

  SolverConfig config;
  config.dt = 0.2;
  config.iterations = 40;
  const SolveTrace a = solve_fd(chain, q0, target, config, true);
  const SolveTrace b = solve_fd(chain, q0, target, config, true);
  CHECK(bit_equal(a.q, b.q));
  CHECK((a.final_error.array() == b.final_error.array()).all());
  REQUIRE(a.iterations.size() == b.iterations.size());
  for (std::size_t i = 0; i < a.iterations.size(); ++i) {
    CHECK(bit_equal(a.iterations[i].q, b.iterations[i].q));
    CHECK((a.iterations[i].eps.array() == b.iterations[i].eps.array()).all());
  }
}

TEST_CASE("sample sweep is independent of the worker count") {
  const ChainModel chain = testing::boosted_ur10();
  const MobilitySweep one = sweep_task_mobility(chain, 5000, 2026, 1);
  const MobilitySweep four = sweep_task_mobility(chain, 5000, 2026, 4);
  CHECK((one.boosted.mean().array() == four.boosted.mean().array()).all());
  CHECK((one.boosted.variance().array() == four.boosted.variance().array())
            .all());
  CHECK((one.gram.mean().array() == four.gram.mean().array()).all());
  CHECK(compute_alpha(chain, 5000, 2026, 1) ==
        compute_alpha(chain, 5000, 2026, 4));
}

// Both update laws descend in the metric induced by the stiffness diagonal:
// V = eps^T Kp eps shrinks every iteration once dt is small (the update
// direction is H^{-1} J^T Kp eps resp. alpha J^T Kp eps, and d/dt V =
// -2 w^T (J H^{-1} J^T) w with w = Kp eps, which is nonpositive). The plain
// Euclidean norm is not monotone when kp is anisotropic — Sym(Kp^{-1} A) of
// an SPD mobility A can be indefinite — so that is the metric to test.
double stiffness_weighted_norm(const Vector6d& eps, const Vector6d& kp) {
  return std::sqrt((eps.array().square() * kp.array()).sum());
}

TEST_CASE("error norm descends for small steps near the target") {
  struct Instance {
    ChainModel chain;
    double alpha;
  };
  const std::vector<Instance> instances = {
      {testing::lever_chain(), 1.0},
      {testing::planar_three_dof(), 0.0},  // alpha filled below
      {testing::boosted_ur10(), 0.0},
  };
  for (std::size_t c = 0; c < instances.size(); ++c) {
    const ChainModel& chain = instances[c].chain;
    const double alpha = instances[c].alpha > 0.0
                             ? instances[c].alpha
                             : compute_alpha(chain, 2048, 2026, 0);
    for (int i = 0; i < 5; ++i) {
      const Eigen::VectorXd q0 = testing::random_q(chain, 109, i);
      const Transform target = forward_kinematics(
          chain, nearby_target_config(chain, q0, 113, i));

      SolverConfig fd;
      fd.dt = 1e-3;
      fd.iterations = 200;
      const SolveTrace fd_trace = solve_fd(chain, q0, target, fd, true);

      BaselineConfig jt;
      jt.alpha = alpha;
      jt.dt = 1e-3;
      jt.iterations = 200;
      const SolveTrace jt_trace = solve_jt(chain, q0, target, jt, true);

      for (const SolveTrace* trace : {&fd_trace, &jt_trace}) {
        double prev_norm =
            stiffness_weighted_norm(trace->iterations.front().eps, fd.kp);
        for (std::size_t k = 1; k < trace->iterations.size(); ++k) {
          const double norm =
              stiffness_weighted_norm(trace->iterations[k].eps, fd.kp);
          CHECK(norm <= prev_norm + 1e-14);
          prev_norm = norm;
        }
        CHECK(stiffness_weighted_norm(trace->final_error, fd.kp) <=
              prev_norm + 1e-14);
      }
    }
  }
}

TEST_CASE("transpose scale equalizes the mean diagonal by construction") {
  const ChainModel chain = testing::boosted_ur10();
  const MobilitySweep sweep = sweep_task_mobility(chain, 4096, 2026, 0);
  const double alpha = transpose_scale(sweep);
  const double boosted_diag = sweep.boosted.mean().diagonal().mean();
  const double scaled_gram_diag =
      alpha * sweep.gram.mean().diagonal().mean();
  CHECK(std::abs(boosted_diag / scaled_gram_diag - 1.0) <= 1e-12);
}

TEST_CASE("unit lever with unit mass needs no transpose scaling") {
  // H = 1 exactly, so the boosted and kinematic maps coincide.
  const ChainModel chain = testing::lever_chain(1.0, 1.0, 1.0);
  const double alpha = compute_alpha(chain, 4096, 2026, 0);
  CHECK(alpha == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a one-iteration solve equals a single step") {
  const ChainModel chain = testing::boosted_ur10();
  const Eigen::VectorXd q0 = testing::random_q(chain, 127, 0);
  const Transform target =
      forward_kinematics(chain, testing::random_q(chain, 127, 1));

  SolverConfig config;
  config.iterations = 1;
  const SolveTrace trace = solve_fd(chain, q0, target, config, true);

  Eigen::VectorXd q = q0;
  Vector6d prev = Vector6d::Zero();
  const Vector6d eps = step_fd(chain, target, config, q, prev);
  CHECK(bit_equal(trace.q, q));
  CHECK((trace.iterations.front().eps.array() == eps.array()).all());
}

TEST_CASE("config validation rejects degenerate values") {
  const ChainModel chain = testing::lever_chain();
  const Transform target = forward_kinematics(chain, Eigen::VectorXd::Zero(1));
  Eigen::VectorXd q = Eigen::VectorXd::Zero(1);
  Vector6d prev = Vector6d::Zero();

  SolverConfig config;
  SUBCASE("zero dt") { config.dt = 0.0; }
  SUBCASE("negative dt") { config.dt = -1.0; }
  SUBCASE("non-finite dt") { config.dt = std::nan(""); }
  SUBCASE("zero iterations") { config.iterations = 0; }
  SUBCASE("negative stiffness") { config.kp[0] = -1.0; }
  SUBCASE("negative damping") { config.kd[3] = -0.5; }
  CHECK_THROWS_AS(step_fd(chain, target, config, q, prev), ConfigError);
}

TEST_CASE("baseline validation rejects degenerate scale") {
  const ChainModel chain = testing::lever_chain();
  const Transform target = forward_kinematics(chain, Eigen::VectorXd::Zero(1));
  Eigen::VectorXd q = Eigen::VectorXd::Zero(1);
  Vector6d prev = Vector6d::Zero();
  BaselineConfig config;
  SUBCASE("zero alpha") { config.alpha = 0.0; }
  SUBCASE("negative alpha") { config.alpha = -0.2; }
  SUBCASE("zero dt") { config.dt = 0.0; }
  CHECK_THROWS_AS(step_jt(chain, target, config, q, prev), ConfigError);
}

TEST_CASE("a constant target stream reduces to a single solve") {
  const ChainModel chain = testing::boosted_ur10();
  const Eigen::VectorXd q0 = testing::random_q(chain, 131, 0);
  const Transform target = forward_kinematics(
      chain, nearby_target_config(chain, q0, 131, 1));

  SolverConfig config;
  config.dt = 1.0;  // contraction ~0.25/iteration, converged well inside 300
  config.iterations = 10;

  std::vector<TrackPoint> path;
  for (int k = 1; k <= 30; ++k) path.push_back({0.01 * k, target});

  Eigen::VectorXd q = q0;
  const std::vector<TrackSample> samples = track(chain, q, path, config);
  REQUIRE(samples.size() == path.size());

  SolverConfig single = config;
  single.iterations = 300;
  const SolveTrace solve = solve_fd(chain, q0, target, single);
  CHECK(bit_equal(q, solve.q));
  CHECK(samples.back().err_trans < samples.front().err_trans);
  CHECK(samples.back().err_trans <= 1e-6);
}

TEST_CASE("track rejects non-increasing timestamps") {
  const ChainModel chain = testing::lever_chain();
  const Transform target = forward_kinematics(chain, Eigen::VectorXd::Zero(1));
  Eigen::VectorXd q = Eigen::VectorXd::Zero(1);
  SolverConfig config;

  SUBCASE("decreasing") {
    const std::vector<TrackPoint> path = {{0.2, target}, {0.1, target}};
    CHECK_THROWS_AS(track(chain, q, path, config), ConfigError);
  }
  SUBCASE("repeated") {
    const std::vector<TrackPoint> path = {{0.1, target}, {0.1, target}};
    CHECK_THROWS_AS(track(chain, q, path, config), ConfigError);
  }
}

TEST_CASE("error-history reset flag only matters with damping") {
  const ChainModel chain = testing::boosted_ur10();
  const Eigen::VectorXd q0 = testing::random_q(chain, 137, 0);
  std::vector<TrackPoint> path;
  for (int k = 1; k <= 6; ++k) {
    path.push_back({0.1 * k, forward_kinematics(
                                 chain, nearby_target_config(
                                            chain, q0, 137, k))});
  }

  SolverConfig config;
  config.dt = 0.1;
  config.iterations = 5;

  TrackOptions keep;
  TrackOptions reset;
  reset.reset_error_on_new_target = true;

  SUBCASE("no damping: observationally neutral") {
    Eigen::VectorXd qa = q0;
    Eigen::VectorXd qb = q0;
    track(chain, qa, path, config, keep);
    track(chain, qb, path, config, reset);
    CHECK(bit_equal(qa, qb));
  }
  SUBCASE("with damping: the histories diverge") {
    config.kd = 0.05 * Vector6d::Ones();
    Eigen::VectorXd qa = q0;
    Eigen::VectorXd qb = q0;
    track(chain, qa, path, config, keep);
    track(chain, qb, path, config, reset);
    CHECK((qa - qb).norm() > 0.0);
  }
}

}  // namespace
}  // namespace fdik
