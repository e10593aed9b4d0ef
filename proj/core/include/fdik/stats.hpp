// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>

namespace fdik {

/// Streaming mean/variance accumulator (Welford update, Chan merge).
///
/// Merging is associative over ordered block lists: combining per-block
/// accumulators in index order yields the same result regardless of how many
/// threads produced the blocks, which keeps Monte-Carlo sweeps reproducible
/// under any worker count.
class RunningMoments {
 public:
  void add(double x) {
    count_ += 1;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  void merge(const RunningMoments& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double delta = other.mean_ - mean_;
    const double total = na + nb;
    mean_ += delta * (nb / total);
    m2_ += other.m2_ + delta * delta * (na * nb / total);
    count_ += other.count_;
  }

  std::int64_t count() const { return count_; }
  double mean() const { return count_ > 0 ? mean_ : 0.0; }

  /// Population variance (divides by n, not n-1).
  double variance() const {
    return count_ > 0 ? m2_ / static_cast<double>(count_) : 0.0;
  }

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Entrywise RunningMoments over a fixed-size matrix stream.
template <int Rows, int Cols>
class MatrixMoments {
 public:
  using Matrix = Eigen::Matrix<double, Rows, Cols>;

  void add(const Matrix& m) {
    for (int r = 0; r < Rows; ++r)
      for (int c = 0; c < Cols; ++c) cells_[r][c].add(m(r, c));
  }

  void merge(const MatrixMoments& other) {
    for (int r = 0; r < Rows; ++r)
      for (int c = 0; c < Cols; ++c) cells_[r][c].merge(other.cells_[r][c]);
  }

  std::int64_t count() const { return cells_[0][0].count(); }

  Matrix mean() const { return map([](const RunningMoments& m) { return m.mean(); }); }
  Matrix variance() const {
    return map([](const RunningMoments& m) { return m.variance(); });
  }

  const RunningMoments& cell(int r, int c) const { return cells_[r][c]; }

 private:
  template <typename F>
  Matrix map(F f) const {
    Matrix out;
    for (int r = 0; r < Rows; ++r)
      for (int c = 0; c < Cols; ++c) out(r, c) = f(cells_[r][c]);
    return out;
  }

  RunningMoments cells_[Rows][Cols];
};

/// Number of samples per merge block in deterministic Monte-Carlo sweeps.
/// Fixed so the block boundaries (and therefore the merge tree) never depend
/// on thread count.
inline constexpr std::int64_t kSampleBlock = 1024;

}  // namespace fdik
