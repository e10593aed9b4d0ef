// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "fdik/errors.hpp"
#include "fdik/experiments.hpp"
#include "fdik/io.hpp"
#include "fdik/kinematics.hpp"
#include "fdik/plots.hpp"
#include "fdik/sampling.hpp"
#include "fdik/stats.hpp"

namespace fdik {
namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "fdik-tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

TEST_CASE("streaming moments") {
  SUBCASE("a single sample has zero variance") {
    RunningMoments m;
    m.add(3.25);
    CHECK(m.count() == 1);
    CHECK(m.mean() == 3.25);
    CHECK(m.variance() == 0.0);
  }

  SUBCASE("matches the two-pass computation on 1e4 samples") {
    std::mt19937_64 gen(2026);
    std::vector<double> xs(10000);
    RunningMoments stream;
    for (double& x : xs) {
      x = 100.0 + 5.0 * uniform_unit(gen);
      stream.add(x);
    }
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());  // population convention

    CHECK(std::abs(stream.mean() - mean) <= 1e-9 * std::abs(mean));
    CHECK(std::abs(stream.variance() - var) <= 1e-9 * var);
  }

  SUBCASE("merging blocks agrees with one sequential pass") {
    std::mt19937_64 gen(7);
    RunningMoments sequential;
    RunningMoments a;
    RunningMoments b;
    for (int i = 0; i < 1000; ++i) {
      const double x = uniform_unit(gen) - 0.5;
      sequential.add(x);
      (i < 400 ? a : b).add(x);
    }
    a.merge(b);
    CHECK(a.count() == sequential.count());
    CHECK(std::abs(a.mean() - sequential.mean()) <= 1e-12);
    CHECK(std::abs(a.variance() - sequential.variance()) <=
          1e-12 * sequential.variance() + 1e-15);
  }

  SUBCASE("matrix moments track every entry") {
    MatrixMoments<2, 2> m;
    Eigen::Matrix2d s1;
    s1 << 1.0, 2.0, 3.0, 4.0;
    Eigen::Matrix2d s2 = 2.0 * s1;
    m.add(s1);
    m.add(s2);
    CHECK(m.count() == 2);
    CHECK((m.mean() - 1.5 * s1).cwiseAbs().maxCoeff() <= 1e-15);
    // Per-entry population variance of {x, 2x} is x^2/4.
    CHECK((m.variance() - 0.25 * s1.cwiseProduct(s1)).cwiseAbs().maxCoeff() <=
          1e-15);
  }
}

TEST_CASE("pinned sampling contract") {
  const Eigen::VectorXd a = sample_joint_vector(6, 2026, 17);
  const Eigen::VectorXd b = sample_joint_vector(6, 2026, 17);
  CHECK((a.array() == b.array()).all());
  CHECK((sample_joint_vector(6, 2026, 18) - a).norm() > 0.0);
  CHECK((sample_joint_vector(6, 2027, 17) - a).norm() > 0.0);
  for (int i = 0; i < 200; ++i) {
    const Eigen::VectorXd q = sample_joint_vector(6, 1, i);
    CHECK(q.minCoeff() >= -M_PI);
    CHECK(q.maxCoeff() < M_PI);
  }
  // The mixing function itself is pinned; a golden value guards the scheme.
  CHECK(mix_seed(0, 0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("shortest round-trip double formatting") {
  for (double x : {0.0, 1.0, -1.0, 0.1, 3.141592653589793, 1e-17, -2.5e300}) {
    const std::string s = format_double(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("key-value config parsing") {
  const std::string text =
      "# comment line\n"
      "samples = 512\n"
      "  conditioning=uniform  # trailing comment\n"
      "\n"
      "out_dir = /tmp/x\n";
  const auto entries = parse_key_values(text);
  CHECK(entries.size() == 3);
  CHECK(entries.at("samples") == "512");
  CHECK(entries.at("conditioning") == "uniform");
  CHECK(entries.at("out_dir") == "/tmp/x");

  CHECK_THROWS_AS(parse_key_values("not a key value line\n"), ConfigError);
  CHECK_THROWS_AS(parse_key_values("= value\n"), ConfigError);
}

TEST_CASE("experiment configuration entries") {
  ExperimentConfig cfg;
  apply_config_entries(cfg, {{"model", "ur10-builtin"},
                             {"conditioning", "kinematic"},
                             {"samples", "1234"},
                             {"seed", "99"},
                             {"dt", "0.25"},
                             {"iters", "42"},
                             {"kp", "2.5"},
                             {"kd", "0.1"},
                             {"gains", "1,5,50"},
                             {"speed", "0.3"},
                             {"rate", "50"},
                             {"reset_error_on_new_target", "true"},
                             {"out_dir", "results"},
                             {"plot", "1"},
                             {"workers", "2"}});
  CHECK(cfg.conditioning == Conditioning::Kinematic);
  CHECK(cfg.samples == 1234);
  CHECK(cfg.seed == 99);
  CHECK(cfg.dt.value() == 0.25);
  CHECK(cfg.iterations.value() == 42);
  CHECK(cfg.kp_scale == 2.5);
  CHECK(cfg.kd_scale == 0.1);
  CHECK(cfg.gains == std::vector<double>{1.0, 5.0, 50.0});
  CHECK(cfg.track_speed == 0.3);
  CHECK(cfg.track_rate == 50.0);
  CHECK(cfg.reset_error_on_new_target);
  CHECK(cfg.out_dir == "results");
  CHECK(cfg.plot);
  CHECK(cfg.workers == 2);

  // "iterations" is accepted as an alias of "iters".
  apply_config_entries(cfg, {{"iterations", "7"}});
  CHECK(cfg.iterations.value() == 7);

  CHECK_THROWS_AS(apply_config_entries(cfg, {{"samples", "0"}}), ConfigError);
  CHECK_THROWS_AS(apply_config_entries(cfg, {{"samples", "abc"}}), ConfigError);
  CHECK_THROWS_AS(apply_config_entries(cfg, {{"dt", "-1"}}), ConfigError);
  CHECK_THROWS_AS(apply_config_entries(cfg, {{"kp", "0"}}), ConfigError);
  CHECK_THROWS_AS(apply_config_entries(cfg, {{"kd", "-0.5"}}), ConfigError);
  CHECK_THROWS_AS(apply_config_entries(cfg, {{"gains", "1,,5"}}), ConfigError);
  CHECK_THROWS_AS(apply_config_entries(cfg, {{"plot", "maybe"}}), ConfigError);
  CHECK_THROWS_AS(apply_config_entries(cfg, {{"no_such_key", "1"}}),
                  ConfigError);
  CHECK_THROWS_AS(apply_config_entries(cfg, {{"conditioning", "magic"}}),
                  ConfigError);
}

TEST_CASE("conditioning names round-trip") {
  for (Conditioning c :
       {Conditioning::Twin, Conditioning::Uniform, Conditioning::Kinematic}) {
    CHECK(parse_conditioning(conditioning_name(c)) == c);
  }
  CHECK_THROWS_AS(
      condition_model(builtin_ur10(), Conditioning::Kinematic, true),
      ConfigError);
  CHECK_NOTHROW(
      condition_model(builtin_ur10(), Conditioning::Kinematic, false));
}

TEST_CASE("scenario geometry is the documented one") {
  const ChainModel model =
      condition_model(builtin_ur10(), Conditioning::Twin, true);
  const Transform home = forward_kinematics(model, home_configuration());

  SUBCASE("step target offsets") {
    const Transform target = step_target(home);
    CHECK((target.translation - home.translation -
           Eigen::Vector3d(0.3, 0.3, -0.2))
              .norm() <= 1e-15);
    const Eigen::Vector3d v =
        rotation_to_rodrigues(target.rotation * home.rotation.transpose());
    CHECK(v.norm() == doctest::Approx(20.0 * M_PI / 180.0).epsilon(1e-12));
    CHECK((v.normalized() - Eigen::Vector3d(1, 1, 1).normalized()).norm() <=
          1e-12);
  }

  SUBCASE("square corners") {
    const auto corners = square_corners(home);
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    for (int k = 0; k < 4; ++k) {
      center += 0.25 * corners[k].translation;
      CHECK(corners[k].translation.x() == home.translation.x());
      const double side = (corners[(k + 1) % 4].translation -
                           corners[k].translation)
                              .norm();
      CHECK(side == doctest::Approx(0.4).epsilon(1e-12));
      CHECK((corners[k].rotation - home.rotation).cwiseAbs().maxCoeff() ==
            0.0);
    }
    CHECK((center - home.translation).norm() <= 1e-12);
    // Counter-clockwise about +x: cross products point along +x.
    for (int k = 0; k < 4; ++k) {
      const Eigen::Vector3d a =
          corners[(k + 1) % 4].translation - corners[k].translation;
      const Eigen::Vector3d b =
          corners[(k + 2) % 4].translation - corners[(k + 1) % 4].translation;
      CHECK(a.cross(b).x() > 0.0);
    }
  }

  SUBCASE("constant-speed square path") {
    const auto corners = square_corners(home);
    const auto path = square_track_path(corners, 0.2, 100.0);
    CHECK(path.size() == 800);  // one 1.6 m lap at 0.2 m/s, 100 Hz
    double prev_t = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
      CHECK(path[i].t > prev_t);
      prev_t = path[i].t;
      // Every target lies on the square perimeter.
      double best = 1e9;
      for (int k = 0; k < 4; ++k) {
        const Eigen::Vector3d a = corners[k].translation;
        const Eigen::Vector3d b = corners[(k + 1) % 4].translation;
        const Eigen::Vector3d d = b - a;
        const double u = std::clamp(
            (path[i].target.translation - a).dot(d) / d.squaredNorm(), 0.0,
            1.0);
        best = std::min(best,
                        (path[i].target.translation - (a + u * d)).norm());
      }
      CHECK(best <= 1e-12);
    }
    // Adjacent targets are one sample period apart in arc length.
    const double step =
        (path[1].target.translation - path[0].target.translation).norm();
    CHECK(step == doctest::Approx(0.2 / 100.0).epsilon(1e-9));
  }
}

TEST_CASE("overshoot counting") {
  auto record = [](double v, int dim) {
    IterationRecord r;
    r.eps = Vector6d::Zero();
    r.eps[dim] = v;
    return r;
  };
  SUBCASE("monotone decay never counts") {
    std::vector<IterationRecord> trace;
    for (double v : {1.0, 0.5, 0.1, 0.01}) trace.push_back(record(v, 0));
    CHECK(count_overshoot_dims(trace) == 0);
  }
  SUBCASE("one sign change per dimension counts once") {
    std::vector<IterationRecord> trace;
    for (double v : {1.0, -0.5, 0.25, -0.1}) trace.push_back(record(v, 2));
    CHECK(count_overshoot_dims(trace) == 1);
  }
  SUBCASE("flips below the floor are noise") {
    std::vector<IterationRecord> trace;
    for (double v : {1e-12, -1e-12, 1e-13}) trace.push_back(record(v, 1));
    CHECK(count_overshoot_dims(trace) == 0);
  }
}

TEST_CASE("line-fit metrics on synthetic paths") {
  const Eigen::Vector3d from(0.0, 0.0, 0.0);
  const Eigen::Vector3d to(1.0, 0.0, 0.0);
  SUBCASE("points on the segment have zero deviation") {
    const std::vector<Eigen::Vector3d> path = {{0.25, 0.0, 0.0},
                                               {0.5, 0.0, 0.0},
                                               {1.0, 0.0, 0.0}};
    const SegmentMetrics m = segment_metrics(path, from, to);
    CHECK(m.mean_perpendicular == 0.0);
    CHECK(m.max_perpendicular == 0.0);
    CHECK(m.final_gap == 0.0);
  }
  SUBCASE("a known offset is measured exactly") {
    const std::vector<Eigen::Vector3d> path = {{0.5, 0.3, 0.0},
                                               {0.75, 0.0, 0.4}};
    const SegmentMetrics m = segment_metrics(path, from, to);
    CHECK(m.mean_perpendicular == doctest::Approx(0.35).epsilon(1e-15));
    CHECK(m.max_perpendicular == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(m.final_gap ==
          doctest::Approx(std::sqrt(0.0625 + 0.16)).epsilon(1e-12));
  }
}

TEST_CASE("a zero step offset produces an all-zero trace") {
  const std::filesystem::path dir = fresh_dir("zero-step");
  ExperimentConfig cfg;
  cfg.samples = 2048;
  cfg.out_dir = dir.string();

  const ChainModel model =
      condition_model(builtin_ur10(), Conditioning::Twin, true);
  const Eigen::VectorXd q0 = home_configuration();
  const Transform target = forward_kinematics(model, q0);

  const StepResult result = run_step_response(cfg, q0, target);
  for (const SolveTrace* trace : {&result.fd, &result.jt}) {
    REQUIRE(trace->iterations.size() == 150);
    for (const IterationRecord& r : trace->iterations) {
      CHECK(r.eps.cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK(trace->final_error.cwiseAbs().maxCoeff() == 0.0);
    CHECK((trace->q.array() == q0.array()).all());
  }

  const CsvTable table = read_csv(dir / "step.csv");
  REQUIRE(table.rows.size() == 300);
  for (const auto& row : table.rows) {
    for (int c = 1; c <= 6; ++c) {
      CHECK(std::stod(row[static_cast<std::size_t>(c)]) == 0.0);
    }
  }
}

TEST_CASE("step runner writes the pinned schema and is reproducible") {
  const std::filesystem::path dir_a = fresh_dir("step-a");
  const std::filesystem::path dir_b = fresh_dir("step-b");
  ExperimentConfig cfg;
  cfg.samples = 2048;
  cfg.iterations = 25;

  cfg.out_dir = dir_a.string();
  const StepResult first = run_step_response(cfg);
  cfg.out_dir = dir_b.string();
  const StepResult second = run_step_response(cfg);

  CHECK(first.alpha == second.alpha);
  CHECK(read_text_file(dir_a / "step.csv") ==
        read_text_file(dir_b / "step.csv"));
  CHECK(read_text_file(dir_a / "step_metrics.csv") ==
        read_text_file(dir_b / "step_metrics.csv"));

  const CsvTable table = read_csv(dir_a / "step.csv");
  CHECK(table.header ==
        std::vector<std::string>{"iter", "ex", "ey", "ez", "erx", "ery",
                                 "erz", "solver"});
  CHECK(table.rows.size() == 50);  // 25 iterations x 2 solvers
  const int solver_col = table.column("solver");
  REQUIRE(solver_col == 7);
  int fd_rows = 0;
  for (const auto& row : table.rows) fd_rows += row[7] == "fd" ? 1 : 0;
  CHECK(fd_rows == 25);
}

TEST_CASE("homogenization sweep is worker-independent at the byte level") {
  const std::filesystem::path dir_a = fresh_dir("homog-a");
  const std::filesystem::path dir_b = fresh_dir("homog-b");
  ExperimentConfig cfg;
  cfg.samples = 2049;  // deliberately not a multiple of the block size
  cfg.workers = 1;
  cfg.out_dir = dir_a.string();
  const auto stats_a = run_homogenization(cfg);
  cfg.workers = 4;
  cfg.out_dir = dir_b.string();
  const auto stats_b = run_homogenization(cfg);

  REQUIRE(stats_a.size() == 3);
  CHECK(stats_a[0].variant == "kinematic");
  CHECK(stats_a[1].variant == "uniform");
  CHECK(stats_a[2].variant == "twin");
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(stats_a[i].samples == 2049);
    CHECK((stats_a[i].mean.array() == stats_b[i].mean.array()).all());
    CHECK((stats_a[i].variance.array() == stats_b[i].variance.array()).all());
  }
  CHECK(read_text_file(dir_a / "homogenization.csv") ==
        read_text_file(dir_b / "homogenization.csv"));

  const CsvTable table = read_csv(dir_a / "homogenization.csv");
  CHECK(table.header ==
        std::vector<std::string>{"variant", "entry_row", "entry_col", "mean",
                                 "variance", "std"});
  CHECK(table.rows.size() == 3 * 36);
  // Standard deviation column is the square root of the variance column.
  for (const auto& row : table.rows) {
    const double var = std::stod(row[4]);
    const double sd = std::stod(row[5]);
    CHECK(sd == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
  }
}

TEST_CASE("a stationary interpolation target pins the path") {
  const ChainModel model =
      condition_model(builtin_ur10(), Conditioning::Twin, true);
  const Eigen::VectorXd q = home_configuration();
  const Transform target = forward_kinematics(model, q);
  SolverConfig config;
  config.dt = 0.1;
  config.iterations = 5;
  const auto path = interpolation_path_fd(model, q, target, 20, config);
  REQUIRE(path.size() == 20);
  for (const Eigen::Vector3d& p : path) {
    CHECK((p - target.translation).norm() <= 1e-12);
  }
}

TEST_CASE("tracking runner writes one lap per gain") {
  const std::filesystem::path dir = fresh_dir("track");
  ExperimentConfig cfg;
  cfg.gains = {1.0, 5.0};
  cfg.out_dir = dir.string();
  const TrackResult result = run_tracking(cfg);

  REQUIRE(result.gains.size() == 2);
  for (const TrackGainResult& g : result.gains) {
    CHECK(g.samples.size() == 800);
  }
  const CsvTable table = read_csv(dir / "track.csv");
  CHECK(table.header == std::vector<std::string>{"gain", "t", "x", "y", "z",
                                                 "err_trans", "err_rot"});
  CHECK(table.rows.size() == 2 * 800);

  const CsvTable metrics = read_csv(dir / "track_metrics.csv");
  CHECK(metrics.rows.size() == 2);
  // The sweep is ordered as configured.
  CHECK(std::stod(metrics.rows[0][0]) == 1.0);
  CHECK(std::stod(metrics.rows[1][0]) == 5.0);
}

TEST_CASE("square runner emits both solvers on all four segments") {
  const std::filesystem::path dir = fresh_dir("square");
  ExperimentConfig cfg;
  cfg.samples = 2048;
  cfg.iterations = 5;  // keep the unit run light; defaults are exercised in
                       // the acceptance suite
  cfg.out_dir = dir.string();
  const SquareResult result = run_square_interpolation(cfg);

  REQUIRE(result.segments.size() == 4);
  for (const SquareSegmentResult& s : result.segments) {
    CHECK(s.fd_path.size() == 1000);
    CHECK(s.jt_path.size() == 1000);
  }
  const CsvTable table = read_csv(dir / "square.csv");
  CHECK(table.header ==
        std::vector<std::string>{"solver", "corner", "step", "x", "y", "z"});
  CHECK(table.rows.size() == 2 * 4 * 1000);
  const CsvTable metrics = read_csv(dir / "square_metrics.csv");
  CHECK(metrics.rows.size() == 8);
}

TEST_CASE("plot emitters accept only their schema") {
  const std::filesystem::path dir = fresh_dir("plots");

  SUBCASE("step plot") {
    const std::filesystem::path csv = dir / "step.csv";
    write_text_file(csv,
                    "iter,ex,ey,ez,erx,ery,erz,solver\n"
                    "1,0.1,0.2,-0.1,0.01,0.0,0.02,fd\n"
                    "2,0.05,0.1,-0.05,0.005,0.0,0.01,fd\n"
                    "1,0.1,0.2,-0.1,0.01,0.0,0.02,jt\n"
                    "2,0.2,-0.1,0.08,0.02,0.0,-0.01,jt\n");
    emit_step_plot(csv, dir / "step.svg");
    const std::string svg = read_text_file(dir / "step.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    emit_step_plot(csv, dir / "step2.svg");
    CHECK(svg == read_text_file(dir / "step2.svg"));
  }

  SUBCASE("empty input is rejected") {
    const std::filesystem::path csv = dir / "empty.csv";
    write_text_file(csv, "");
    CHECK_THROWS_AS(emit_step_plot(csv, dir / "x.svg"), ParseError);
    write_text_file(csv, "iter,ex,ey,ez,erx,ery,erz,solver\n");
    CHECK_THROWS_AS(emit_step_plot(csv, dir / "x.svg"), ParseError);
  }

  SUBCASE("wrong header is rejected") {
    const std::filesystem::path csv = dir / "wrong.csv";
    write_text_file(csv, "a,b,c\n1,2,3\n");
    CHECK_THROWS_AS(emit_step_plot(csv, dir / "x.svg"), ParseError);
    CHECK_THROWS_AS(emit_homogenization_plot(csv, dir / "x.svg"), ParseError);
    CHECK_THROWS_AS(emit_square_plot(csv, dir / "x.svg"), ParseError);
    CHECK_THROWS_AS(emit_track_plot(csv, dir / "x.svg"), ParseError);
  }

  SUBCASE("ragged rows are rejected") {
    const std::filesystem::path csv = dir / "ragged.csv";
    write_text_file(csv,
                    "solver,corner,step,x,y,z\n"
                    "fd,0,1,0.1,0.2\n");
    CHECK_THROWS_AS(emit_square_plot(csv, dir / "x.svg"), ParseError);
  }

  SUBCASE("non-numeric cells are rejected") {
    const std::filesystem::path csv = dir / "nan.csv";
    write_text_file(csv,
                    "gain,t,x,y,z,err_trans,err_rot\n"
                    "1,0.01,0.1,oops,0.3,0.01,0.001\n");
    CHECK_THROWS_AS(emit_track_plot(csv, dir / "x.svg"), ParseError);
  }
}

TEST_CASE("alpha runner honors the conditioning switch") {
  ExperimentConfig cfg;
  cfg.samples = 2048;
  const double twin = run_alpha(cfg);
  cfg.conditioning = Conditioning::Uniform;
  const double uniform = run_alpha(cfg);
  CHECK(twin > 0.0);
  CHECK(uniform > 0.0);
  CHECK(twin != uniform);
  cfg.conditioning = Conditioning::Kinematic;
  CHECK_THROWS_AS(run_alpha(cfg), ConfigError);
}

}  // namespace
}  // namespace fdik
