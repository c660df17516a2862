// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TFLOC_ERRORS_HPP
#define TFLOC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tfloc {

// Base class for all library-specific failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Two objects that must share a grid (dimension, node count, spacings) do not.
class GridMismatch : public Error {
 public:
  explicit GridMismatch(const std::string& msg) : Error(msg) {}
};

// A harness/CLI configuration could not be parsed or fails validation.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// A computation requires |<gamma, psi>| above a threshold and the windows
// supplied are (numerically) orthogonal.
class SingularConfiguration : public Error {
 public:
  SingularConfiguration(const std::string& msg, double measured, double threshold)
      : Error(msg), measured_(measured), threshold_(threshold) {}
  double measured() const { return measured_; }
  double threshold() const { return threshold_; }

 private:
  double measured_;
  double threshold_;
};

}  // namespace tfloc

#endif
