// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#include "fdik/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>
#include <utility>

#include "fdik/errors.hpp"
#include "fdik/io.hpp"
#include "fdik/kinematics.hpp"
#include "fdik/plots.hpp"

namespace fdik {

namespace {

constexpr double kSquareSide = 0.4;
constexpr int kSquareSteps = 1000;

// Gains used to converge onto scenario poses before a measured run starts.
SolverConfig corner_prep_config() {
  SolverConfig prep;
  prep.dt = 1.0;
  prep.iterations = 1500;
  return prep;
}

double parse_double_value(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("invalid number for '" + key + "': " + text);
  return value;
}

template <typename Int>
Int parse_int_value(const std::string& key, const std::string& text) {
  Int value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("invalid integer for '" + key + "': " + text);
  return value;
}

bool parse_bool_value(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("invalid boolean for '" + key + "': " + text);
}

std::vector<double> parse_gain_list(const std::string& text) {
  std::vector<double> gains;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    gains.push_back(
        parse_double_value("gains", text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (gains.empty()) throw ConfigError("gains list must be nonempty");
  return gains;
}

Vector6d scaled_base(double scale) { return scale * gain_base(); }

// Shared scenario setup: conditioned model plus the 6-joint guard used by
// every pose experiment.
ChainModel solver_model(const ExperimentConfig& cfg) {
  ChainModel model =
      condition_model(load_experiment_model(cfg), cfg.conditioning, true);
  if (model.dof() != 6)
    throw ConfigError("pose experiments are defined for 6-joint chains; got " +
                      std::to_string(model.dof()));
  return model;
}

void append_csv_value(std::string& out, double v) {
  out += format_double(v);
}

std::string homogenization_rows(const HomogenizationStats& stats) {
  std::string out;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) {
      out += stats.variant;
      out += ',';
      out += std::to_string(r);
      out += ',';
      out += std::to_string(c);
      out += ',';
      append_csv_value(out, stats.mean(r, c));
      out += ',';
      append_csv_value(out, stats.variance(r, c));
      out += ',';
      append_csv_value(out, stats.std_dev(r, c));
      out += '\n';
    }
  }
  return out;
}

HomogenizationStats stats_from_moments(const std::string& variant,
                                       const MatrixMoments<6, 6>& moments) {
  HomogenizationStats stats;
  stats.variant = variant;
  stats.mean = moments.mean();
  stats.variance = moments.variance();
  stats.std_dev = stats.variance.cwiseSqrt();
  stats.samples = moments.count();
  return stats;
}

std::string step_rows(const SolveTrace& trace, const std::string& solver) {
  std::string out;
  for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
    out += std::to_string(i + 1);
    for (int d = 0; d < 6; ++d) {
      out += ',';
      append_csv_value(out, trace.iterations[i].eps[d]);
    }
    out += ',';
    out += solver;
    out += '\n';
  }
  return out;
}

std::string step_metrics_row(const std::string& solver, double alpha,
                             const SolveTrace& trace) {
  std::string out = solver;
  out += ',';
  append_csv_value(out, alpha);
  const Vector6d& initial = trace.iterations.front().eps;
  out += ',';
  append_csv_value(out, initial.head<3>().norm());
  out += ',';
  append_csv_value(out, initial.tail<3>().norm());
  out += ',';
  append_csv_value(out, trace.final_error.head<3>().norm());
  out += ',';
  append_csv_value(out, trace.final_error.tail<3>().norm());
  out += ',';
  out += std::to_string(count_overshoot_dims(trace.iterations));
  out += '\n';
  return out;
}

std::string square_rows(const std::vector<Eigen::Vector3d>& path,
                        const std::string& solver, int corner) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    out += solver;
    out += ',';
    out += std::to_string(corner);
    out += ',';
    out += std::to_string(i + 1);
    for (int d = 0; d < 3; ++d) {
      out += ',';
      append_csv_value(out, path[i][d]);
    }
    out += '\n';
  }
  return out;
}

double point_segment_distance(const Eigen::Vector3d& p,
                              const Eigen::Vector3d& a,
                              const Eigen::Vector3d& b) {
  const Eigen::Vector3d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 < 1e-24) return (p - a).norm();
  const double u = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + u * ab)).norm();
}

double distance_to_square(const Eigen::Vector3d& p,
                          const std::array<Transform, 4>& corners) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) {
    best = std::min(best, point_segment_distance(
                              p, corners[static_cast<std::size_t>(k)].translation,
                              corners[static_cast<std::size_t>((k + 1) % 4)].translation));
  }
  return best;
}

}  // namespace

Conditioning parse_conditioning(const std::string& text) {
  if (text == "twin") return Conditioning::Twin;
  if (text == "uniform") return Conditioning::Uniform;
  if (text == "kinematic") return Conditioning::Kinematic;
  throw ConfigError("unknown conditioning '" + text +
                    "' (expected twin, uniform, or kinematic)");
}

std::string conditioning_name(Conditioning c) {
  switch (c) {
    case Conditioning::Twin:
      return "twin";
    case Conditioning::Uniform:
      return "uniform";
    case Conditioning::Kinematic:
      return "kinematic";
  }
  throw ConfigError("invalid conditioning value");
}

void apply_config_entries(ExperimentConfig& cfg,
                          const std::map<std::string, std::string>& entries) {
  for (const auto& [key, value] : entries) {
    if (key == "model") {
      cfg.model = value;
    } else if (key == "conditioning") {
      cfg.conditioning = parse_conditioning(value);
    } else if (key == "samples") {
      cfg.samples = parse_int_value<std::int64_t>(key, value);
      if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
    } else if (key == "seed") {
      cfg.seed = parse_int_value<std::uint64_t>(key, value);
    } else if (key == "dt") {
      cfg.dt = parse_double_value(key, value);
      if (!(*cfg.dt > 0.0)) throw ConfigError("dt must be positive");
    } else if (key == "iters" || key == "iterations") {
      cfg.iterations = parse_int_value<int>(key, value);
      if (*cfg.iterations < 1) throw ConfigError("iters must be >= 1");
    } else if (key == "kp") {
      cfg.kp_scale = parse_double_value(key, value);
      if (!(cfg.kp_scale > 0.0)) throw ConfigError("kp must be positive");
    } else if (key == "kd") {
      cfg.kd_scale = parse_double_value(key, value);
      if (cfg.kd_scale < 0.0) throw ConfigError("kd must be nonnegative");
    } else if (key == "gains") {
      cfg.gains = parse_gain_list(value);
    } else if (key == "speed") {
      cfg.track_speed = parse_double_value(key, value);
      if (!(cfg.track_speed > 0.0)) throw ConfigError("speed must be positive");
    } else if (key == "rate") {
      cfg.track_rate = parse_double_value(key, value);
      if (!(cfg.track_rate > 0.0)) throw ConfigError("rate must be positive");
    } else if (key == "reset_error_on_new_target") {
      cfg.reset_error_on_new_target = parse_bool_value(key, value);
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else if (key == "plot") {
      cfg.plot = parse_bool_value(key, value);
    } else if (key == "workers") {
      cfg.workers = parse_int_value<int>(key, value);
    } else {
      throw ConfigError("unknown configuration key '" + key + "'");
    }
  }
}

ChainModel load_experiment_model(const ExperimentConfig& cfg) {
  if (cfg.model == "ur10-builtin") return builtin_ur10();
  return load_chain(read_text_file(cfg.model));
}

ChainModel condition_model(const ChainModel& chain, Conditioning c,
                           bool for_solver) {
  switch (c) {
    case Conditioning::Twin:
      return condition_virtual_twin(chain, 1.0, Eigen::Matrix3d::Identity());
    case Conditioning::Uniform:
      return condition_uniform(chain, 1.0, Eigen::Matrix3d::Identity());
    case Conditioning::Kinematic:
      if (for_solver)
        throw ConfigError(
            "kinematic conditioning provides no inertia; use twin or uniform");
      return chain;
  }
  throw ConfigError("invalid conditioning value");
}

Vector6d gain_base() {
  return (Vector6d() << 1.0, 1.0, 1.0, 0.1, 0.1, 0.1).finished();
}

Eigen::VectorXd home_configuration() {
  Eigen::VectorXd q(6);
  q << 0.0, -M_PI / 2.0, M_PI / 2.0, 0.0, M_PI / 2.0, 0.0;
  return q;
}

Transform step_target(const Transform& home_pose) {
  Transform target;
  target.translation =
      home_pose.translation + Eigen::Vector3d(0.3, 0.3, -0.2);
  const Eigen::Vector3d axis =
      Eigen::Vector3d(1.0, 1.0, 1.0) / std::sqrt(3.0);
  const double angle = 20.0 * M_PI / 180.0;
  target.rotation = rodrigues_to_rotation(angle * axis) * home_pose.rotation;
  return target;
}

std::array<Transform, 4> square_corners(const Transform& home_pose) {
  const double h = kSquareSide / 2.0;
  // Counter-clockwise about +x (right-hand rule), starting at (-y, -z).
  const std::array<Eigen::Vector2d, 4> yz = {
      Eigen::Vector2d(-h, -h), Eigen::Vector2d(h, -h), Eigen::Vector2d(h, h),
      Eigen::Vector2d(-h, h)};
  std::array<Transform, 4> corners;
  for (std::size_t k = 0; k < 4; ++k) {
    corners[k].rotation = home_pose.rotation;
    corners[k].translation =
        home_pose.translation + Eigen::Vector3d(0.0, yz[k].x(), yz[k].y());
  }
  return corners;
}

std::vector<TrackPoint> square_track_path(
    const std::array<Transform, 4>& corners, double speed, double rate_hz) {
  if (!(speed > 0.0)) throw ConfigError("track speed must be positive");
  if (!(rate_hz > 0.0)) throw ConfigError("track rate must be positive");
  const double side =
      (corners[1].translation - corners[0].translation).norm();
  const double perimeter = 4.0 * side;
  const auto ticks =
      static_cast<std::int64_t>(std::llround(perimeter / speed * rate_hz));
  std::vector<TrackPoint> path;
  path.reserve(static_cast<std::size_t>(ticks));
  for (std::int64_t i = 1; i <= ticks; ++i) {
    const double t = static_cast<double>(i) / rate_hz;
    double s = std::fmod(speed * t, perimeter);
    const int k = std::min(3, static_cast<int>(s / side));
    const double u = (s - static_cast<double>(k) * side) / side;
    const Eigen::Vector3d a = corners[static_cast<std::size_t>(k)].translation;
    const Eigen::Vector3d b =
        corners[static_cast<std::size_t>((k + 1) % 4)].translation;
    TrackPoint point;
    point.t = t;
    point.target.rotation = corners[0].rotation;
    point.target.translation = a + u * (b - a);
    path.push_back(point);
  }
  return path;
}

std::vector<HomogenizationStats> run_homogenization(
    const ExperimentConfig& cfg) {
  const ChainModel base = load_experiment_model(cfg);
  const ChainModel twin = condition_model(base, Conditioning::Twin, true);
  const ChainModel uniform =
      condition_model(base, Conditioning::Uniform, true);

  const MobilitySweep twin_sweep =
      sweep_task_mobility(twin, cfg.samples, cfg.seed, cfg.workers);
  const MobilitySweep uniform_sweep =
      sweep_task_mobility(uniform, cfg.samples, cfg.seed, cfg.workers);

  // Conditioning never touches the joints, so the Gram statistics of any
  // sweep double as the kinematic variant.
  std::vector<HomogenizationStats> stats;
  stats.push_back(stats_from_moments("kinematic", twin_sweep.gram));
  stats.push_back(stats_from_moments("uniform", uniform_sweep.boosted));
  stats.push_back(stats_from_moments("twin", twin_sweep.boosted));

  const std::filesystem::path out_dir = cfg.out_dir;
  const std::string header = "variant,entry_row,entry_col,mean,variance,std\n";
  std::string combined = header;
  for (const HomogenizationStats& s : stats) {
    const std::string rows = homogenization_rows(s);
    write_text_file(out_dir / ("homogenization_" + s.variant + ".csv"),
                    header + rows);
    combined += rows;
  }
  write_text_file(out_dir / "homogenization.csv", combined);
  if (cfg.plot) {
    emit_homogenization_plot(out_dir / "homogenization.csv",
                             out_dir / "homogenization.svg");
  }
  return stats;
}

StepResult run_step_response(const ExperimentConfig& cfg) {
  const ChainModel model = solver_model(cfg);
  const Eigen::VectorXd q0 = home_configuration();
  const Transform target = step_target(forward_kinematics(model, q0));
  return run_step_response(cfg, q0, target);
}

StepResult run_step_response(const ExperimentConfig& cfg,
                             const Eigen::VectorXd& q0,
                             const Transform& target) {
  const ChainModel model = solver_model(cfg);

  SolverConfig fd_config;
  fd_config.dt = cfg.dt.value_or(1.0);
  fd_config.iterations = cfg.iterations.value_or(150);
  fd_config.kp = scaled_base(cfg.kp_scale);
  fd_config.kd = cfg.kd_scale * gain_base();

  StepResult result;
  result.q0 = q0;
  result.target = target;
  result.alpha = compute_alpha(model, cfg.samples, cfg.seed, cfg.workers);

  BaselineConfig jt_config;
  jt_config.alpha = result.alpha;
  jt_config.dt = fd_config.dt;
  jt_config.iterations = fd_config.iterations;
  jt_config.kp = fd_config.kp;

  result.fd = solve_fd(model, q0, target, fd_config, true);
  result.jt = solve_jt(model, q0, target, jt_config, true);

  const std::filesystem::path out_dir = cfg.out_dir;
  std::string csv = "iter,ex,ey,ez,erx,ery,erz,solver\n";
  csv += step_rows(result.fd, "fd");
  csv += step_rows(result.jt, "jt");
  write_text_file(out_dir / "step.csv", csv);

  std::string metrics =
      "solver,alpha,initial_err_trans,initial_err_rot,final_err_trans,"
      "final_err_rot,overshoot_dims\n";
  metrics += step_metrics_row("fd", result.alpha, result.fd);
  metrics += step_metrics_row("jt", result.alpha, result.jt);
  write_text_file(out_dir / "step_metrics.csv", metrics);

  if (cfg.plot) emit_step_plot(out_dir / "step.csv", out_dir / "step.svg");
  return result;
}

int count_overshoot_dims(const std::vector<IterationRecord>& iterations,
                         double floor) {
  int dims = 0;
  for (int d = 0; d < 6; ++d) {
    int last_sign = 0;
    for (const IterationRecord& record : iterations) {
      const double v = record.eps[d];
      if (std::abs(v) <= floor) continue;
      const int sign = v > 0.0 ? 1 : -1;
      if (last_sign != 0 && sign != last_sign) {
        ++dims;
        break;
      }
      last_sign = sign;
    }
  }
  return dims;
}

std::vector<Eigen::Vector3d> interpolation_path_fd(const ChainModel& model,
                                                   Eigen::VectorXd q,
                                                   const Transform& target,
                                                   int steps,
                                                   const SolverConfig& config) {
  std::vector<Eigen::Vector3d> path;
  path.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    q = solve_fd(model, q, target, config).q;
    path.push_back(forward_kinematics(model, q).translation);
  }
  return path;
}

std::vector<Eigen::Vector3d> interpolation_path_jt(
    const ChainModel& model, Eigen::VectorXd q, const Transform& target,
    int steps, const BaselineConfig& config) {
  std::vector<Eigen::Vector3d> path;
  path.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    q = solve_jt(model, q, target, config).q;
    path.push_back(forward_kinematics(model, q).translation);
  }
  return path;
}

SegmentMetrics segment_metrics(const std::vector<Eigen::Vector3d>& path,
                               const Eigen::Vector3d& from,
                               const Eigen::Vector3d& to) {
  SegmentMetrics metrics;
  if (path.empty()) return metrics;
  const Eigen::Vector3d dir = to - from;
  const double len = dir.norm();
  double sum = 0.0;
  for (const Eigen::Vector3d& p : path) {
    double d = 0.0;
    if (len < 1e-12) {
      d = (p - from).norm();
    } else {
      const Eigen::Vector3d rel = p - from;
      d = (rel - rel.dot(dir / len) * (dir / len)).norm();
    }
    sum += d;
    metrics.max_perpendicular = std::max(metrics.max_perpendicular, d);
  }
  metrics.mean_perpendicular = sum / static_cast<double>(path.size());
  metrics.final_gap = (path.back() - to).norm();
  return metrics;
}

SquareResult run_square_interpolation(const ExperimentConfig& cfg) {
  const ChainModel model = solver_model(cfg);
  const Eigen::VectorXd home = home_configuration();
  const Transform home_pose = forward_kinematics(model, home);

  SquareResult result;
  result.corners = square_corners(home_pose);
  result.alpha = compute_alpha(model, cfg.samples, cfg.seed, cfg.workers);

  SolverConfig fd_config;
  fd_config.dt = cfg.dt.value_or(0.1);
  fd_config.iterations = cfg.iterations.value_or(50);
  fd_config.kp = scaled_base(cfg.kp_scale);
  fd_config.kd = cfg.kd_scale * gain_base();

  BaselineConfig jt_config;
  jt_config.alpha = result.alpha;
  jt_config.dt = fd_config.dt;
  jt_config.iterations = fd_config.iterations;
  jt_config.kp = fd_config.kp;

  // Converged configurations at each corner; both solvers share them so the
  // segments differ only in the iteration rule.
  const SolverConfig prep = corner_prep_config();
  std::array<Eigen::VectorXd, 4> corner_q;
  Eigen::VectorXd q = home;
  for (std::size_t k = 0; k < 4; ++k) {
    q = solve_fd(model, q, result.corners[k], prep).q;
    corner_q[k] = q;
  }

  std::string csv = "solver,corner,step,x,y,z\n";
  std::string metrics =
      "solver,corner,mean_perpendicular,max_perpendicular,final_gap\n";
  for (int k = 0; k < 4; ++k) {
    const Transform& goal = result.corners[static_cast<std::size_t>((k + 1) % 4)];
    SquareSegmentResult segment;
    segment.corner = k;
    segment.fd_path =
        interpolation_path_fd(model, corner_q[static_cast<std::size_t>(k)],
                              goal, kSquareSteps, fd_config);
    segment.jt_path =
        interpolation_path_jt(model, corner_q[static_cast<std::size_t>(k)],
                              goal, kSquareSteps, jt_config);
    const Eigen::Vector3d from =
        result.corners[static_cast<std::size_t>(k)].translation;
    segment.fd = segment_metrics(segment.fd_path, from, goal.translation);
    segment.jt = segment_metrics(segment.jt_path, from, goal.translation);

    csv += square_rows(segment.fd_path, "fd", k);
    csv += square_rows(segment.jt_path, "jt", k);
    const std::pair<const char*, const SegmentMetrics*> lanes[] = {
        {"fd", &segment.fd}, {"jt", &segment.jt}};
    for (const auto& [solver, metrics_ptr] : lanes) {
      const SegmentMetrics& m = *metrics_ptr;
      metrics += solver;
      metrics += ',';
      metrics += std::to_string(k);
      metrics += ',';
      append_csv_value(metrics, m.mean_perpendicular);
      metrics += ',';
      append_csv_value(metrics, m.max_perpendicular);
      metrics += ',';
      append_csv_value(metrics, m.final_gap);
      metrics += '\n';
    }
    result.segments.push_back(std::move(segment));
  }

  const std::filesystem::path out_dir = cfg.out_dir;
  write_text_file(out_dir / "square.csv", csv);
  write_text_file(out_dir / "square_metrics.csv", metrics);
  if (cfg.plot)
    emit_square_plot(out_dir / "square.csv", out_dir / "square.svg");
  return result;
}

TrackResult run_tracking(const ExperimentConfig& cfg) {
  if (cfg.gains.empty()) throw ConfigError("gains list must be nonempty");
  const ChainModel model = solver_model(cfg);
  const Eigen::VectorXd home = home_configuration();
  const Transform home_pose = forward_kinematics(model, home);

  TrackResult result;
  result.corners = square_corners(home_pose);

  const std::vector<TrackPoint> path =
      square_track_path(result.corners, cfg.track_speed, cfg.track_rate);

  // All gains start from the same converged corner-0 configuration.
  const Eigen::VectorXd q_start =
      solve_fd(model, home, result.corners[0], corner_prep_config()).q;

  TrackOptions options;
  options.reset_error_on_new_target = cfg.reset_error_on_new_target;

  std::string csv = "gain,t,x,y,z,err_trans,err_rot\n";
  std::string metrics = "gain,mean_err_trans,mean_err_rot,corner_deviation\n";
  for (const double gain : cfg.gains) {
    SolverConfig config;
    config.dt = cfg.dt.value_or(0.1);
    config.iterations = cfg.iterations.value_or(10);
    config.kp = gain * scaled_base(cfg.kp_scale);
    config.kd = cfg.kd_scale * gain_base();

    TrackGainResult gain_result;
    gain_result.gain = gain;
    Eigen::VectorXd q = q_start;
    gain_result.samples = track(model, q, path, config, options);

    double sum_trans = 0.0;
    double sum_rot = 0.0;
    for (const TrackSample& sample : gain_result.samples) {
      sum_trans += sample.err_trans;
      sum_rot += sample.err_rot;
      gain_result.corner_deviation =
          std::max(gain_result.corner_deviation,
                   distance_to_square(sample.tip, result.corners));

      csv += format_double(gain);
      csv += ',';
      append_csv_value(csv, sample.t);
      for (int d = 0; d < 3; ++d) {
        csv += ',';
        append_csv_value(csv, sample.tip[d]);
      }
      csv += ',';
      append_csv_value(csv, sample.err_trans);
      csv += ',';
      append_csv_value(csv, sample.err_rot);
      csv += '\n';
    }
    const auto n = static_cast<double>(gain_result.samples.size());
    gain_result.mean_err_trans = sum_trans / n;
    gain_result.mean_err_rot = sum_rot / n;

    metrics += format_double(gain);
    metrics += ',';
    append_csv_value(metrics, gain_result.mean_err_trans);
    metrics += ',';
    append_csv_value(metrics, gain_result.mean_err_rot);
    metrics += ',';
    append_csv_value(metrics, gain_result.corner_deviation);
    metrics += '\n';

    result.gains.push_back(std::move(gain_result));
  }

  const std::filesystem::path out_dir = cfg.out_dir;
  write_text_file(out_dir / "track.csv", csv);
  write_text_file(out_dir / "track_metrics.csv", metrics);
  if (cfg.plot)
    emit_track_plot(out_dir / "track.csv", out_dir / "track.svg");
  return result;
}

double run_alpha(const ExperimentConfig& cfg) {
  const ChainModel model =
      condition_model(load_experiment_model(cfg), cfg.conditioning, true);
  return compute_alpha(model, cfg.samples, cfg.seed, cfg.workers);
}

}  // namespace fdik
