// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>

namespace fdik {

// Pinned random-number contract: every sampled quantity is fully determined
// by (master seed, sample index). Per-sample generators are std::mt19937_64
// (parameters fixed by the C++ standard) seeded with a splitmix64 hash of the
// master seed and the sample index; doubles take the high 53 bits of each
// draw. Golden values in tests rely on this exact scheme.

/// splitmix64 output for state `seed + (index + 1) * 0x9e3779b97f4a7c15`.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits of one generator draw.
inline double uniform_unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Joint vector for sample `index`: each entry uniform in [-pi, pi].
inline Eigen::VectorXd sample_joint_vector(int dof, std::uint64_t seed,
                                           std::uint64_t index) {
  std::mt19937_64 gen(mix_seed(seed, index));
  Eigen::VectorXd q(dof);
  for (int i = 0; i < dof; ++i) {
    q[i] = -M_PI + 2.0 * M_PI * uniform_unit(gen);
  }
  return q;
}

}  // namespace fdik
