#pragma once

#include <stdexcept>
#include <string>

namespace hirota {

/// Numerical failure inside an algorithm (as opposed to bad input).
/// CLI maps these to exit code 1, input/IO errors to exit code 2.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Adaptive integration could not proceed (step size underflow).
/// Carries the last point the integrator reached.
class IntegrationError : public NumericalError {
  public:
    IntegrationError(const std::string& what, double t_reached)
        : NumericalError(what + " (reached t = " + std::to_string(t_reached) + ")"),
          t_reached_(t_reached) {}
    double t_reached() const { return t_reached_; }

  private:
    double t_reached_;
};

/// |a(k)| dropped below 1: the defocusing trace identity failed,
/// signalling an integration or truncation problem.
class UnitarityError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Field became non-finite during time stepping.
class BlowUpError : public NumericalError {
  public:
    BlowUpError(const std::string& what, double t)
        : NumericalError(what + " at t = " + std::to_string(t)), time_(t) {}
    double time() const { return time_; }

  private:
    double time_;
};

/// Dispersive radiation reached the periodic boundary above threshold.
class BoundaryContaminationError : public NumericalError {
  public:
    BoundaryContaminationError(double t, double amplitude, double threshold)
        : NumericalError("boundary contamination at t = " + std::to_string(t) +
                         ": edge amplitude " + std::to_string(amplitude) +
                         " exceeds " + std::to_string(threshold) + " (enlarge domain)"),
          time_(t), amplitude_(amplitude) {}
    double time() const { return time_; }
    double amplitude() const { return amplitude_; }

  private:
    double time_;
    double amplitude_;
};

/// File/parse problem; carries the offending path in the message.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace hirota
