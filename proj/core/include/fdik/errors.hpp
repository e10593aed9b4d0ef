// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <stdexcept>
#include <string>

namespace fdik {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input document (XML, parameter table, CSV).
class ParseError : public Error {
public:
  using Error::Error;
};

/// Structurally valid input that does not describe a supported mechanism
/// (branching chains, unsupported joint types).
class TopologyError : public Error {
public:
  using Error::Error;
};

/// Violated model invariant or degenerate dynamics (non-SPD inertia,
/// dimension mismatch, non-finite input).
class ModelError : public Error {
public:
  using Error::Error;
};

/// Invalid experiment or solver configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Filesystem failure while reading or writing experiment artifacts.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace fdik
