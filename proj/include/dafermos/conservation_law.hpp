#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <span>

#include "dafermos/errors.hpp"

namespace dafermos {

/// Scalar conservation law u_t + f(u)_x = 0 with a convex entropy pair (U, F),
/// F' = U' f'.
template <class L>
concept ScalarLaw = requires(const L& law, double u) {
  { law.flux(u) } -> std::convertible_to<double>;
  { law.flux_deriv(u) } -> std::convertible_to<double>;
  { law.entropy(u) } -> std::convertible_to<double>;
  { law.entropy_var(u) } -> std::convertible_to<double>;
  { law.entropy_hess(u) } -> std::convertible_to<double>;
  { law.entropy_flux(u) } -> std::convertible_to<double>;
};

/// A law whose flux is convex with a single sonic point; the exact Riemann
/// solution at x/t = 0 is then available in closed form.
template <class L>
concept ConvexScalarLaw = ScalarLaw<L> && requires(const L& law) {
  { law.sonic_point() } -> std::convertible_to<double>;
};

/// Burgers' equation with the square entropy U = u^2.
struct Burgers {
  double flux(double u) const { return 0.5 * u * u; }
  double flux_deriv(double u) const { return u; }
  double entropy(double u) const { return u * u; }
  double entropy_var(double u) const { return 2.0 * u; }
  double entropy_hess(double) const { return 2.0; }
  double entropy_flux(double u) const { return 2.0 / 3.0 * u * u * u; }
  double sonic_point() const { return 0.0; }
};

/// Linear advection with unit speed, f(u) = u, U = u^2.
struct LinearAdvection {
  double flux(double u) const { return u; }
  double flux_deriv(double) const { return 1.0; }
  double entropy(double u) const { return u * u; }
  double entropy_var(double u) const { return 2.0 * u; }
  double entropy_hess(double) const { return 2.0; }
  double entropy_flux(double u) const { return u * u; }
};

namespace detail {
inline void require_finite(double ul, double ur, const char* who) {
  if (!std::isfinite(ul) || !std::isfinite(ur))
    throw NonFiniteState(std::string(who) + ": non-finite interface state");
}
}  // namespace detail

template <ScalarLaw L>
double llf_speed(double ul, double ur, const L& law) {
  return std::max(std::abs(law.flux_deriv(ul)), std::abs(law.flux_deriv(ur)));
}

template <ScalarLaw L>
double llf_flux(double ul, double ur, const L& law) {
  detail::require_finite(ul, ur, "llf_flux");
  const double c = llf_speed(ul, ur, law);
  return 0.5 * (law.flux(ul) + law.flux(ur)) - 0.5 * c * (ur - ul);
}

/// Numerical entropy flux paired with the local Lax–Friedrichs flux.
template <ScalarLaw L>
double llf_entropy_flux(double ul, double ur, const L& law) {
  detail::require_finite(ul, ur, "llf_entropy_flux");
  const double c = llf_speed(ul, ur, law);
  return 0.5 * (law.entropy_flux(ul) + law.entropy_flux(ur)) - 0.5 * c * (law.entropy(ur) - law.entropy(ul));
}

/// State of the exact Riemann solution on the interface x/t = 0.
template <ConvexScalarLaw L>
double godunov_state(double ul, double ur, const L& law) {
  const double sonic = law.sonic_point();
  if (ul <= ur) return std::clamp(sonic, ul, ur);  // rarefaction or constant
  const double fl = law.flux(ul), fr = law.flux(ur);
  // shock speed has the sign of (fl - fr) / (ul - ur)
  if (fl > fr) return ul;
  if (fl < fr) return ur;
  return 0.5 * (ul + ur);  // stationary shock
}

template <ConvexScalarLaw L>
double godunov_flux(double ul, double ur, const L& law) {
  detail::require_finite(ul, ur, "godunov_flux");
  if (ul <= ur) return law.flux(std::clamp(law.sonic_point(), ul, ur));
  return std::max(law.flux(ul), law.flux(ur));
}

template <ConvexScalarLaw L>
double godunov_entropy_flux(double ul, double ur, const L& law) {
  detail::require_finite(ul, ur, "godunov_entropy_flux");
  if (ul > ur && law.flux(ul) == law.flux(ur))
    return 0.5 * (law.entropy_flux(ul) + law.entropy_flux(ur));
  return law.entropy_flux(godunov_state(ul, ur, law));
}

enum class FluxKind { LocalLaxFriedrichs, Godunov };

/// Two-point interface flux together with its numerical entropy flux.
struct NumericalFlux {
  FluxKind kind = FluxKind::LocalLaxFriedrichs;

  template <ScalarLaw L>
  double value(double ul, double ur, const L& law) const {
    if (kind == FluxKind::LocalLaxFriedrichs) return llf_flux(ul, ur, law);
    if constexpr (ConvexScalarLaw<L>) {
      return godunov_flux(ul, ur, law);
    } else {
      throw InvalidArgument("Godunov flux requires a convex law with a sonic point");
    }
  }

  template <ScalarLaw L>
  double entropy_value(double ul, double ur, const L& law) const {
    if (kind == FluxKind::LocalLaxFriedrichs) return llf_entropy_flux(ul, ur, law);
    if constexpr (ConvexScalarLaw<L>) {
      return godunov_entropy_flux(ul, ur, law);
    } else {
      throw InvalidArgument("Godunov flux requires a convex law with a sonic point");
    }
  }
};

template <ScalarLaw L>
double max_wave_speed(std::span<const double> states, const L& law) {
  if (states.empty()) throw InvalidArgument("max_wave_speed: empty state list");
  double c = 0.0;
  for (double u : states) c = std::max(c, std::abs(law.flux_deriv(u)));
  return c;
}

}  // namespace dafermos
