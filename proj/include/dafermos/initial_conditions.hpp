#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace dafermos {

/// Initial data on the periodic domain, with its range and derivative
/// (where smooth) for the characteristic solver.
struct InitialCondition {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;  // empty if the data has jumps
  double lower = 0.0;                        // inf of the data
  double upper = 0.0;                        // sup of the data
};

/// u1(x, 0) = sin(pi x) + 1/2, steepens into a shock at t = 1/pi.
inline InitialCondition sine_shock() {
  using std::numbers::pi;
  return {"sine-shock", [](double x) { return std::sin(pi * x) + 0.5; },
          [](double x) { return pi * std::cos(pi * x); }, -0.5, 1.5};
}

/// u2(x, 0) = -x on [0,1), 2-x on [1,2): a centred rarefaction through the
/// sonic point at x = 1.
inline InitialCondition rarefaction() {
  return {"rarefaction",
          [](double x) {
            const double y = x - 2.0 * std::floor(x / 2.0);
            return y < 1.0 ? -y : 2.0 - y;
          },
          {}, -1.0, 1.0};
}

/// 1 + sin(pi x) / 50, smooth up to t = 50 / pi.
inline InitialCondition smooth_wave() {
  using std::numbers::pi;
  return {"smooth", [](double x) { return 1.0 + std::sin(pi * x) / 50.0; },
          [](double x) { return pi * std::cos(pi * x) / 50.0; }, 1.0 - 1.0 / 50.0, 1.0 + 1.0 / 50.0};
}

inline InitialCondition constant_state(double c) {
  return {"constant", [c](double) { return c; }, [](double) { return 0.0; }, c, c};
}

}  // namespace dafermos
