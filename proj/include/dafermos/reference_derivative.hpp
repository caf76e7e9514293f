#pragma once

// Closed-form limit of the projected subcell finite-volume derivative of one
// DG cell, and the error estimators built on it.
//
// The subcell scheme splits into a regular part, which converges to the strong
// form -f'(u) u_x inside the cell, and a singular part living on the two
// boundary subcells. The projection of the singular part onto V tends to the
// Riesz representer of two point masses carrying the interface flux jumps.

#include <algorithm>
#include <cmath>

#include "dafermos/basis.hpp"
#include "dafermos/conservation_law.hpp"

namespace dafermos {

struct RefDerivative {
  Vector regular_at_errquad;  // -f'(u) u_x at the p+2 Gauss–Legendre nodes
  Vector singular_coeffs;     // nodal coefficients of the projected singular part
  double f_bnd_l = 0.0;
  double f_bnd_r = 0.0;
  double fstar_l = 0.0;
  double fstar_r = 0.0;
};

struct ErrorEstimate {
  double delta = 0.0;    // 2-norm distance of du/dt to the reference derivative
  double delta_U = 0.0;  // sampled sup-norm interpolation error of U'
  double l1_ref = 0.0;   // L1 norm of the limiting subcell derivative
};

template <ScalarLaw L, class CellU>
Vector regular_part(const CellU& u, const CellOperators& ops, const L& law) {
  const Vector uq = ops.err_basis_vals * u;
  const Vector uxq = ops.err_basis_derivs * u;
  Vector r(uq.size());
  for (Eigen::Index q = 0; q < uq.size(); ++q) r[q] = -law.flux_deriv(uq[q]) * uxq[q];
  return r;
}

/// Solves M c = b with b_k = phi_k(x_l) (f*_l - f(u_l)) + phi_k(x_r) (f(u_r) - f*_r).
template <ScalarLaw L, class CellU>
Vector singular_projection(const CellU& u, const CellOperators& ops, double fstar_l, double fstar_r, const L& law) {
  const double ul = ops.left_vals.dot(u);
  const double ur = ops.right_vals.dot(u);
  const Vector b = ops.left_vals * (fstar_l - law.flux(ul)) + ops.right_vals * (law.flux(ur) - fstar_r);
  return ops.mass_llt.solve(b);
}

template <ScalarLaw L, class CellU>
RefDerivative reference_derivative(const CellU& u, const CellOperators& ops, const L& law, double fstar_l,
                                   double fstar_r) {
  RefDerivative ref;
  ref.regular_at_errquad = regular_part(u, ops, law);
  ref.singular_coeffs = singular_projection(u, ops, fstar_l, fstar_r, law);
  ref.f_bnd_l = law.flux(ops.left_vals.dot(u));
  ref.f_bnd_r = law.flux(ops.right_vals.dot(u));
  ref.fstar_l = fstar_l;
  ref.fstar_r = fstar_r;
  return ref;
}

/// Quadrature 2-norm of du/dt - regular - singular on the p+2 point rule.
template <class CellDt>
double delta(const RefDerivative& ref, const CellDt& du_dt, const CellOperators& ops) {
  const Vector g = ops.err_basis_vals * (du_dt - ref.singular_coeffs) - ref.regular_at_errquad;
  return std::sqrt(ops.err_weights.dot(g.cwiseProduct(g)));
}

template <ScalarLaw L, class CellU, class CellDt>
double delta(const CellU& u, const CellDt& du_dt, const CellOperators& ops, const L& law, double fstar_l,
             double fstar_r) {
  return delta(reference_derivative(u, ops, law, fstar_l, fstar_r), du_dt, ops);
}

/// max over the error nodes of |U'(u(xi)) - I_V U'(u)(xi)|.
template <ScalarLaw L, class CellU>
double delta_U(const CellU& u, const CellOperators& ops, const L& law) {
  Vector nodal_var(u.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) nodal_var[k] = law.entropy_var(u[k]);
  const Vector uq = ops.err_basis_vals * u;
  const Vector interp = ops.err_basis_vals * nodal_var;
  double m = 0.0;
  for (Eigen::Index q = 0; q < uq.size(); ++q) m = std::max(m, std::abs(law.entropy_var(uq[q]) - interp[q]));
  return m;
}

inline double l1_ref(const RefDerivative& ref, const CellOperators& ops) {
  return ops.err_weights.dot(ref.regular_at_errquad.cwiseAbs()) + std::abs(ref.fstar_l - ref.f_bnd_l) +
         std::abs(ref.f_bnd_r - ref.fstar_r);
}

template <ScalarLaw L, class CellU>
double l1_ref(const CellU& u, const CellOperators& ops, const L& law, double fstar_l, double fstar_r) {
  return l1_ref(reference_derivative(u, ops, law, fstar_l, fstar_r), ops);
}

template <ScalarLaw L, class CellU, class CellDt>
ErrorEstimate estimate_error(const CellU& u, const CellDt& du_dt, const CellOperators& ops, const L& law,
                             double fstar_l, double fstar_r) {
  const RefDerivative ref = reference_derivative(u, ops, law, fstar_l, fstar_r);
  return {delta(ref, du_dt, ops), delta_U(u, ops, law), l1_ref(ref, ops)};
}

}  // namespace dafermos
