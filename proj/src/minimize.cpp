#include "phasetrack/minimize.hpp"

#include "phasetrack/error.hpp"

#include <cmath>

namespace phasetrack {

ScalarMinimum golden_section_minimize(const std::function<double(double)> &f, double lo, double hi,
                                      double rel_tol, double abs_tol, int max_iter) {
  if (!(hi > lo))
    throw ParameterError("golden_section_minimize: empty bracket");
  constexpr double kInvPhi = 0.6180339887498948482; // (sqrt(5) - 1) / 2

  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evals = 2;

  for (int iter = 0; iter < max_iter; ++iter) {
    const double mid = 0.5 * (a + b);
    if (b - a <= rel_tol * std::abs(mid) + abs_tol)
      break;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  if (fc <= fd)
    return {c, fc, evals};
  return {d, fd, evals};
}

} // namespace phasetrack
