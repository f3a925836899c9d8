#pragma once

#include <cmath>
#include <limits>

namespace permabound {

/// A nonnegative quantity stored as its natural log; zero is represented
/// explicitly because log(0) is not a finite double.
struct LogValue {
  double log_magnitude = 0.0;
  bool is_zero = true;

  static LogValue zero() noexcept { return {}; }
  static LogValue from_log(double log_value) noexcept {
    if (log_value == -std::numeric_limits<double>::infinity()) return zero();
    return {log_value, false};
  }
  static LogValue from_linear(double value) noexcept {
    return value > 0.0 ? LogValue{std::log(value), false} : zero();
  }

  /// -inf for zero.
  double log() const noexcept { return is_zero ? -std::numeric_limits<double>::infinity() : log_magnitude; }
  double value() const noexcept { return is_zero ? 0.0 : std::exp(log_magnitude); }

  friend LogValue operator*(LogValue a, LogValue b) noexcept {
    if (a.is_zero || b.is_zero) return zero();
    return {a.log_magnitude + b.log_magnitude, false};
  }
  friend LogValue operator/(LogValue a, LogValue b) noexcept {
    if (a.is_zero) return zero();
    return {a.log_magnitude - b.log_magnitude, false};
  }
};

}  // namespace permabound
