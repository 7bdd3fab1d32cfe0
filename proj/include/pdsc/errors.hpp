#pragma once

#include <stdexcept>
#include <string>

namespace pdsc {

/// Invalid or inconsistent experiment/model configuration.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Geometric query outside the valid domain, or a degenerate domain.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Geometry that the solver cannot handle (non-axis-aligned buffer surfaces,
/// bonds leaving the body, ...).
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The iterative solver did not reach its tolerance.
class SolverFailure : public std::runtime_error {
public:
  SolverFailure(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

private:
  int iterations_;
  double residual_;
};

/// Constrained system is singular (dense oracle only).
class RankDeficientError : public std::runtime_error {
public:
  RankDeficientError(const std::string& what, long rank, long size)
      : std::runtime_error(what), rank_(rank), size_(size) {}
  long rank() const { return rank_; }
  long size() const { return size_; }

private:
  long rank_;
  long size_;
};

} // namespace pdsc
