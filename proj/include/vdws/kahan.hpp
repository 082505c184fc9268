#pragma once

namespace vdws {

/// Kahan compensated accumulator; drop-in for += followed by a final read.
struct KahanSum {
  double sum = 0.0;
  double compensation = 0.0;

  void operator+=(double value) {
    const double y = value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }

  operator double() const { return sum; }
};

}  // namespace vdws
