// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <filesystem>

namespace fdik {

// Static SVG renderers for the experiment CSVs. Each reads one CSV produced
// by the matching runner, checks the documented schema (exact header, at
// least one data row — ParseError otherwise), and writes a self-contained
// vector image. Output bytes depend only on the CSV content, never on
// locale, time, or environment.

/// 6-trace per-iteration error plot from step.csv, one panel per solver.
void emit_step_plot(const std::filesystem::path& csv_path,
                    const std::filesystem::path& svg_path);

/// 3x3 grid of 6x6 heat panels (variants x {mean, variance, std}) from
/// homogenization.csv.
void emit_homogenization_plot(const std::filesystem::path& csv_path,
                              const std::filesystem::path& svg_path);

/// Tip paths in the square plane, one panel per solver, from square.csv.
void emit_square_plot(const std::filesystem::path& csv_path,
                      const std::filesystem::path& svg_path);

/// Tracked tip paths per gain plus error-over-time curves from track.csv.
void emit_track_plot(const std::filesystem::path& csv_path,
                     const std::filesystem::path& svg_path);

}  // namespace fdik
