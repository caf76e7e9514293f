#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "dafermos/dg.hpp"
#include "dafermos/reference_derivative.hpp"

namespace dafermos {

/// Steepest entropy descent restricted to mean-free directions.
///   g = -U'(u),  h = g - <1,g>/<1,1>,  s = eps h / ||h||  (s = 0 when h vanishes)
struct DescentDirection {
  Vector h;
  double h_norm = 0.0;
  Vector s;
};

/// Per-cell audit trail of one corrected right-hand side evaluation.
struct CorrectionReport {
  double delta = 0.0;
  double delta_U = 0.0;
  double l1_ref = 0.0;
  double epsilon = 0.0;
  double h_norm = 0.0;
  double entropy_production_before = 0.0;  // <U'(u), du/dt>_T
  double entropy_production_after = 0.0;   // <U'(u), du^D/dt>_T
  double entropy_flux_jump = 0.0;          // F*_l - F*_r
  double violation() const { return entropy_production_after - entropy_flux_jump; }
};

/// Relative floor below which a cell counts as constant.
template <ScalarLaw L, class CellU>
double descent_tolerance(const CellU& u, const CellOperators& ops, const L& law) {
  Vector var(u.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) var[k] = law.entropy_var(u[k]);
  return 1e-13 * (1.0 + ops.norm(var));
}

template <ScalarLaw L, class CellU>
DescentDirection descent_direction(const CellU& u, const CellOperators& ops, const L& law, double eps) {
  const Eigen::Index n = u.size();
  Vector g(n);
  for (Eigen::Index k = 0; k < n; ++k) g[k] = -law.entropy_var(u[k]);
  DescentDirection dir;
  dir.h = g - Vector::Constant(n, ops.integral(g) / ops.length);
  dir.h_norm = ops.norm(dir.h);
  if (dir.h_norm > 1e-13 * (1.0 + ops.norm(g)))
    dir.s = dir.h * (eps / dir.h_norm);
  else
    dir.s = Vector::Zero(n);
  return dir;
}

/// Step length enforcing the cell entropy inequality:
///   eps = delta + delta_U * l1_ref / ||mean-free U'||.
/// `h_norm` equals `tilde_dUdu_norm` for the restricted descent direction;
/// both are accepted so the ratio ||h|| / |<h, U'>| stays explicit.
inline double epsilon_semidiscrete(const ErrorEstimate& est, double h_norm, double tilde_dUdu_norm,
                                   double tol = 0.0) {
  if (tilde_dUdu_norm <= tol || h_norm <= tol) return 0.0;
  // ||h|| / |<h, U'>| = ||h|| / (||h|| ||U'~||) = 1 / ||U'~||
  const double prefactor = h_norm / (h_norm * tilde_dUdu_norm);
  return prefactor * (est.delta * tilde_dUdu_norm + est.delta_U * est.l1_ref);
}

struct DDGRhs {
  Coeffs du_dt;
  std::vector<double> fstar;
  std::vector<CorrectionReport> reports;
};

/// Corrected semidiscrete right-hand side: du/dt + s with s the
/// entropy-dissipative restricted descent step of length eps.
template <ScalarLaw L>
DDGRhs ddg_rhs(const DGSpace& space, const Coeffs& u, const L& law, const NumericalFlux& flux) {
  DGRhs base = dg_rhs(space, u, law, flux);
  const std::vector<double> Fstar = interface_entropy_fluxes(u, law, flux);
  const auto& ops = space.cell();
  const int n = space.n_cells();
  DDGRhs out{std::move(base.du_dt), std::move(base.fstar), std::vector<CorrectionReport>(n)};
  for (int j = 0; j < n; ++j) {
    const auto uj = u.col(j);
    const double fl = out.fstar[j], fr = out.fstar[(j + 1) % n];
    CorrectionReport& rep = out.reports[j];
    const ErrorEstimate est = estimate_error(uj, out.du_dt.col(j), ops, law, fl, fr);
    const DescentDirection dir = descent_direction(uj, ops, law, 1.0);
    const double tol = descent_tolerance(uj, ops, law);
    rep.delta = est.delta;
    rep.delta_U = est.delta_U;
    rep.l1_ref = est.l1_ref;
    rep.h_norm = dir.h_norm;
    rep.epsilon = epsilon_semidiscrete(est, dir.h_norm, dir.h_norm, tol);

    Vector var(uj.size());
    for (Eigen::Index k = 0; k < uj.size(); ++k) var[k] = law.entropy_var(uj[k]);
    rep.entropy_production_before = ops.inner(var, out.du_dt.col(j));
    out.du_dt.col(j) += rep.epsilon * dir.s;
    rep.entropy_production_after = ops.inner(var, out.du_dt.col(j));
    rep.entropy_flux_jump = Fstar[j] - Fstar[(j + 1) % n];
    if (!std::isfinite(rep.entropy_production_after))
      throw NonFiniteState("ddg_rhs: non-finite corrected derivative in cell " + std::to_string(j));
  }
  return out;
}

template <ScalarLaw L>
DDGRhs ddg_rhs(const DGState& state, const L& law, const NumericalFlux& flux) {
  return ddg_rhs(*state.space, state.coeffs, law, flux);
}

/// <U'(u), du^D/dt>_T - (F*_l - F*_r); nonpositive when the cell entropy
/// inequality holds.
template <ScalarLaw L, class CellU, class CellDt>
double cell_entropy_violation(const CellU& u, const CellDt& corrected, double Fstar_l, double Fstar_r,
                              const CellOperators& ops, const L& law) {
  Vector var(u.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) var[k] = law.entropy_var(u[k]);
  return ops.inner(var, corrected) - (Fstar_l - Fstar_r);
}

}  // namespace dafermos
