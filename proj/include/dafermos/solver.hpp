#pragma once

#include <algorithm>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dafermos/discrete_corrector.hpp"
#include "dafermos/entropy_correction.hpp"

namespace dafermos {

enum class Scheme { DDG, DRKDG, VanillaDG };

inline std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::DDG: return "ddg";
    case Scheme::DRKDG: return "drkdg";
    case Scheme::VanillaDG: return "vanilla-dg";
  }
  return "?";
}

/// dt = cfl dx / ((p^2 + 1) c_max) with c_max from the current nodal values,
/// or a fixed dt when `fixed_dt` is set.
struct TimeStepRule {
  double cfl = 0.5;
  double fixed_dt = 0.0;

  template <ScalarLaw L>
  double dt(const DGState& s, const L& law) const {
    if (fixed_dt > 0.0) return fixed_dt;
    const double c_max =
        max_wave_speed(std::span<const double>(s.coeffs.data(), static_cast<std::size_t>(s.coeffs.size())), law);
    const int p = s.order();
    const double dx = s.space->mesh().cell_length();
    if (c_max <= 0.0) return cfl * dx / (p * p + 1.0);
    return cfl * dx / ((p * p + 1.0) * c_max);
  }
};

struct RunOptions {
  Scheme scheme = Scheme::DDG;
  TimeStepRule rule;
  double t_end = 1.0;
  std::vector<double> output_times;
  NumericalFlux flux{FluxKind::LocalLaxFriedrichs};
  DescentParams descent;
  long max_steps = 0;  // 0: unlimited
};

/// Optional hooks; any may be left empty.
struct RunObserver {
  std::function<void(double t, const DGState&)> on_output;
  // every corrected right-hand side evaluation of the semidiscrete scheme
  std::function<void(double t, int stage, const DDGRhs&)> on_ddg_rhs;
  std::function<void(double t, double dt, const DrkdgStep&)> on_drkdg_step;
  std::function<void(double t, const DGState&)> on_step;
};

struct RunResult {
  DGState final_state;
  double t_reached = 0.0;
  bool blew_up = false;
  long steps = 0;
  std::string message;
};

template <ScalarLaw L>
DGState advance(const DGState& state, double t, double dt, const L& law, const RunOptions& opts,
                const RunObserver& obs) {
  const DGSpace& space = *state.space;
  switch (opts.scheme) {
    case Scheme::VanillaDG: {
      auto rhs = [&](const Coeffs& c) { return dg_rhs(space, c, law, opts.flux).du_dt; };
      return {state.space, ssprk33_step(state.coeffs, t, dt, rhs).first};
    }
    case Scheme::DDG: {
      int stage = 0;
      const double stage_time[3] = {t, t + dt, t + 0.5 * dt};
      auto rhs = [&](const Coeffs& c) {
        DDGRhs r = ddg_rhs(space, c, law, opts.flux);
        if (obs.on_ddg_rhs) obs.on_ddg_rhs(stage_time[stage], stage, r);
        ++stage;
        return std::move(r.du_dt);
      };
      return {state.space, ssprk33_step(state.coeffs, t, dt, rhs).first};
    }
    case Scheme::DRKDG: {
      DrkdgStep step = drkdg_step(state, t, dt, law, opts.flux, opts.descent);
      if (obs.on_drkdg_step) obs.on_drkdg_step(t, dt, step);
      return std::move(step.state);
    }
  }
  throw InvalidArgument("advance: unknown scheme");
}

/// Integrates from t = 0 to opts.t_end. Blow-up ends the run early and is
/// reported in the result, not thrown.
template <ScalarLaw L>
RunResult run_dg(const DGState& initial, const L& law, const RunOptions& opts, const RunObserver& obs = {}) {
  if (!(opts.t_end > 0.0)) throw InvalidArgument("run_dg: t_end must be positive");
  std::vector<double> outs = opts.output_times;
  std::sort(outs.begin(), outs.end());
  RunResult res{initial, 0.0, false, 0, {}};
  double t = 0.0;
  std::size_t next_out = 0;
  auto emit_due = [&] {
    while (next_out < outs.size() && outs[next_out] <= t + 1e-14) {
      if (obs.on_output) obs.on_output(outs[next_out], res.final_state);
      ++next_out;
    }
  };
  emit_due();
  try {
    while (t < opts.t_end) {
      if (opts.max_steps > 0 && res.steps >= opts.max_steps) {
        res.message = "step limit reached";
        break;
      }
      double dt = opts.rule.dt(res.final_state, law);
      double target = opts.t_end;
      if (next_out < outs.size()) target = std::min(target, outs[next_out]);
      bool hit = false;
      if (t + dt >= target * (1.0 - 1e-14)) {
        dt = target - t;
        hit = true;
      }
      res.final_state = advance(res.final_state, t, dt, law, opts, obs);
      t = hit ? target : t + dt;
      res.t_reached = t;
      ++res.steps;
      if (obs.on_step) obs.on_step(t, res.final_state);
      emit_due();
    }
  } catch (const BlowUp& e) {
    res.blew_up = true;
    res.t_reached = e.time();
    res.message = e.what();
  }
  return res;
}

}  // namespace dafermos
