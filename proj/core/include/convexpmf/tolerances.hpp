#pragma once

namespace convexpmf {

// Numerical tolerances shared across the library. Every threshold the
// library applies by default lives here.
struct Tolerances {
  double pmf_sum = 1e-10;          // |sum(p) - 1| accepted by Pmf
  double round_trip = 1e-12;       // mixture <-> pmf conversions
  double convexity_real = 1e-12;   // second-difference slack for real vectors
  double convexity_counts = 0.0;   // exact test on integer counts
  double kink = 1e-9;              // second difference above this is a change of slope
  double kink_equality = 1e-8;     // |H_fit - H_emp| at kinks
  double h_slack = 1e-9;           // H_fit >= H_emp - h_slack
};

inline constexpr Tolerances kTolerances{};

}  // namespace convexpmf
