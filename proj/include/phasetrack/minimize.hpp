#pragma once

#include <functional>

namespace phasetrack {

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search for the minimum of f on [lo, hi].
///
/// Stops once the bracket is narrower than rel_tol * |x| + abs_tol. The
/// objective is assumed unimodal on the bracket; no attempt is made to detect
/// multiple minima.
ScalarMinimum golden_section_minimize(const std::function<double(double)> &f, double lo, double hi,
                                      double rel_tol, double abs_tol = 0.0, int max_iter = 500);

} // namespace phasetrack
