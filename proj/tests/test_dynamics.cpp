// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fdik/dynamics.hpp"
#include "fdik/errors.hpp"
#include "fdik/kinematics.hpp"
#include "fdik/model.hpp"
#include "support/oracles.hpp"
#include "support/test_chains.hpp"

namespace fdik {
namespace {

TEST_CASE("point mass on a lever has the closed-form inertia") {
  const double mass = 1.7;
  const double radius = 0.9;
  const ChainModel chain = testing::lever_chain(mass, radius, radius);
  for (double angle : {0.0, 0.4, -2.0}) {
    Eigen::VectorXd q(1);
    q << angle;
    const Eigen::MatrixXd h = joint_space_inertia(chain, q);
    REQUIRE(h.rows() == 1);
    CHECK(h(0, 0) == doctest::Approx(mass * radius * radius).epsilon(1e-14));
  }
}

TEST_CASE("inertia matches the per-link jacobian summation") {
  const ChainModel chains[] = {testing::lever_chain(1.3, 0.7, 1.1),
                               testing::planar_three_dof(),
                               testing::boosted_ur10()};
  for (const ChainModel& chain : chains) {
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
      const Eigen::VectorXd q = testing::random_q(chain, 61, i);
      const Eigen::MatrixXd h = joint_space_inertia(chain, q);
      const Eigen::MatrixXd oracle = testing::link_jacobian_inertia(chain, q);
      worst = std::max(worst, (h - oracle).cwiseAbs().maxCoeff());
      CHECK((h - h.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(Eigen::LLT<Eigen::MatrixXd>(h).info() == Eigen::Success);
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("heavy-base arm inertia also matches the summation") {
  // The unconditioned arm has realistic link masses; exercises large
  // composite inertias instead of the near-degenerate boosted ones.
  const ChainModel arm = builtin_ur10();
  for (int i = 0; i < 25; ++i) {
    const Eigen::VectorXd q = testing::random_q(arm, 67, i);
    const Eigen::MatrixXd h = joint_space_inertia(arm, q);
    const Eigen::MatrixXd oracle = testing::link_jacobian_inertia(arm, q);
    CHECK((h - oracle).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("inverse inertia application") {
  SUBCASE("identity returns the input") {
    const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(4, 4);
    Eigen::VectorXd v(4);
    v << 1.0, -2.0, 3.0, 0.25;
    CHECK((apply_inverse_inertia(h, v) - v).norm() == 0.0);
  }
  SUBCASE("uniform diagonal scales the input") {
    const Eigen::MatrixXd h = 2.0 * Eigen::MatrixXd::Identity(3, 3);
    const Eigen::VectorXd v = Eigen::VectorXd::Ones(3);
    CHECK((apply_inverse_inertia(h, v) - 0.5 * v).norm() <= 1e-15);
  }
  SUBCASE("solve residual is tiny for random SPD systems") {
    std::mt19937_64 gen(71);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::MatrixXd a(6, 6);
      for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) a(r, c) = u(gen);
      const Eigen::MatrixXd h =
          a * a.transpose() + 1e-6 * Eigen::MatrixXd::Identity(6, 6);
      Eigen::VectorXd v(6);
      for (int r = 0; r < 6; ++r) v[r] = u(gen);
      const Eigen::VectorXd x = apply_inverse_inertia(h, v);
      CHECK((h * x - v).norm() / v.norm() < 1e-10);
    }
  }
  SUBCASE("indefinite input is rejected") {
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(3, 3);
    h(2, 2) = -1.0;
    CHECK_THROWS_AS(apply_inverse_inertia(h, Eigen::VectorXd::Ones(3)),
                    ModelError);
  }
}

TEST_CASE("lever mobility and tip-offset behavior") {
  const double mass = 2.0;
  const double com_radius = 0.5;

  // Tip at the mass: J = r, H = m r^2, so the tangential mobility
  // J H^{-1} J^T collapses to 1/m — a force at the mass point accelerates
  // it at f/m regardless of the lever length.
  const ChainModel at_mass = testing::lever_chain(mass, com_radius, com_radius);
  const Eigen::VectorXd q = Eigen::VectorXd::Zero(1);
  const Matrix6d m_at = task_space_mobility(at_mass, q);
  CHECK(m_at(1, 1) == doctest::Approx(1.0 / mass).epsilon(1e-12));

  // Extending the (massless) tip leaves H untouched and scales the
  // tangential mobility by the squared lever ratio.
  const double tip_radius = 1.25;
  const ChainModel extended = testing::lever_chain(mass, com_radius, tip_radius);
  CHECK(joint_space_inertia(extended, q)(0, 0) ==
        doctest::Approx(mass * com_radius * com_radius).epsilon(1e-14));
  const Matrix6d m_ext = task_space_mobility(extended, q);
  const double lever_ratio = tip_radius / com_radius;
  CHECK(m_ext(1, 1) ==
        doctest::Approx(m_at(1, 1) * lever_ratio * lever_ratio).epsilon(1e-12));
}

TEST_CASE("mobility is symmetric positive semi-definite") {
  const ChainModel arm = testing::boosted_ur10();
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXd q = testing::random_q(arm, 73, i);
    const Matrix6d m = task_space_mobility(arm, q);
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
    const Eigen::SelfAdjointEigenSolver<Matrix6d> eig(m);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-9);
  }
}

TEST_CASE("tip-mass conditioning makes the mobility near-identity") {
  const ChainModel arm = testing::boosted_ur10();
  double diag_sum = 0.0;
  const int samples = 1000;
  for (int i = 0; i < samples; ++i) {
    const Eigen::VectorXd q = testing::random_q(arm, 79, i);
    diag_sum += task_space_mobility(arm, q).diagonal().mean();
  }
  const double mean_diag = diag_sum / samples;
  CHECK(mean_diag > 0.5);
  CHECK(mean_diag < 1.5);
}

TEST_CASE("mobility overloads agree") {
  const ChainModel arm = testing::boosted_ur10();
  const Eigen::VectorXd q = testing::random_q(arm, 83, 0);
  const Matrix6d direct = task_space_mobility(arm, q);
  const Matrix6d via_parts =
      task_space_mobility(joint_space_inertia(arm, q),
                          geometric_jacobian(arm, q));
  CHECK((direct - via_parts).cwiseAbs().maxCoeff() == 0.0);
}

}  // namespace
}  // namespace fdik
