#pragma once

#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "dafermos/errors.hpp"
#include "dafermos/quadrature.hpp"

namespace dafermos {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Lagrange basis on the reference cell [-1, 1] with Gauss–Lobatto collocation
/// nodes, together with the exact Grammians and tabulations used by the
/// error estimators.
struct Basis {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> lobatto_weights;
  Matrix mass;       // M_kl = <phi_k, phi_l>
  Matrix stiffness;  // S_kl = <phi_k', phi_l>
  Matrix diff;       // (D u)_k = sum_l u_l phi_l'(x_k)
  Vector left_vals;
  Vector right_vals;
  QuadRule err_quad;      // p+2 point Gauss–Legendre
  Matrix err_basis_vals;  // (p+2) x (p+1): phi_l(xi_q)
  Matrix err_basis_derivs;

  int n_nodes() const noexcept { return order + 1; }

  double eval(int j, double x) const {
    double v = 1.0;
    for (int m = 0; m <= order; ++m)
      if (m != j) v *= (x - nodes[m]) / (nodes[j] - nodes[m]);
    return v;
  }

  double eval_deriv(int j, double x) const {
    double sum = 0.0;
    for (int i = 0; i <= order; ++i) {
      if (i == j) continue;
      double term = 1.0 / (nodes[j] - nodes[i]);
      for (int m = 0; m <= order; ++m)
        if (m != j && m != i) term *= (x - nodes[m]) / (nodes[j] - nodes[m]);
      sum += term;
    }
    return sum;
  }

  /// Value of the polynomial with nodal coefficients `u` at reference point x.
  template <class Coeffs>
  double evaluate(const Coeffs& u, double x) const {
    double v = 0.0;
    for (int j = 0; j <= order; ++j) v += u[j] * eval(j, x);
    return v;
  }
};

inline Basis build_basis(int p) {
  if (p < 1) throw InvalidArgument("build_basis: polynomial order must be >= 1, got " + std::to_string(p));
  Basis b;
  b.order = p;
  const int n = p + 1;
  const QuadRule lobatto = gauss_lobatto(n);
  b.nodes = lobatto.nodes;
  b.lobatto_weights = lobatto.weights;

  // n-point Gauss–Legendre is exact to degree 2p+1, enough for M (2p) and S (2p-1)
  const QuadRule exact = gauss_legendre(n);
  Matrix vals(exact.size(), n), ders(exact.size(), n);
  for (std::size_t q = 0; q < exact.size(); ++q)
    for (int j = 0; j < n; ++j) {
      vals(q, j) = b.eval(j, exact.nodes[q]);
      ders(q, j) = b.eval_deriv(j, exact.nodes[q]);
    }
  const Vector w = Eigen::Map<const Vector>(exact.weights.data(), exact.size());
  b.mass = vals.transpose() * w.asDiagonal() * vals;
  b.stiffness = ders.transpose() * w.asDiagonal() * vals;

  b.diff.resize(n, n);
  for (int k = 0; k < n; ++k) {
    double off = 0.0;
    for (int l = 0; l < n; ++l) {
      if (l == k) continue;
      b.diff(k, l) = b.eval_deriv(l, b.nodes[k]);
      off += b.diff(k, l);
    }
    b.diff(k, k) = -off;  // rows of D annihilate constants exactly
  }

  b.left_vals = Vector::Zero(n);
  b.right_vals = Vector::Zero(n);
  b.left_vals[0] = 1.0;
  b.right_vals[p] = 1.0;

  b.err_quad = gauss_legendre(p + 2);
  b.err_basis_vals.resize(p + 2, n);
  b.err_basis_derivs.resize(p + 2, n);
  for (int q = 0; q < p + 2; ++q)
    for (int j = 0; j < n; ++j) {
      b.err_basis_vals(q, j) = b.eval(j, b.err_quad.nodes[q]);
      b.err_basis_derivs(q, j) = b.eval_deriv(j, b.err_quad.nodes[q]);
    }
  return b;
}

/// Operators of one physical cell of length dx, obtained from the reference
/// basis by the affine map. Everything a per-cell routine needs.
struct CellOperators {
  int order = 0;
  double length = 0.0;
  Matrix mass;       // M dx/2
  Matrix stiffness;  // unchanged
  Matrix diff;       // D 2/dx
  Vector lobatto_weights;  // physical Gauss–Lobatto weights
  Vector left_vals;
  Vector right_vals;
  Vector err_weights;       // physical Gauss–Legendre weights (p+2)
  Matrix err_basis_vals;    // phi_l at the p+2 error nodes
  Matrix err_basis_derivs;  // physical derivatives d phi_l / dx there
  Vector mass_ones;         // M 1, so <1, v>_T = mass_ones . v
  Eigen::LLT<Matrix> mass_llt;

  int n_nodes() const noexcept { return order + 1; }

  /// <a, b>_T = a^T M b
  template <class A, class B>
  double inner(const A& a, const B& b) const { return a.dot(mass * b); }

  template <class A>
  double norm(const A& a) const { return std::sqrt(std::max(0.0, inner(a, a))); }

  template <class A>
  double integral(const A& a) const { return mass_ones.dot(a); }
};

inline CellOperators scale_to_cell(const Basis& basis, double cell_length) {
  if (!(cell_length > 0.0))
    throw InvalidArgument("scale_to_cell: cell length must be positive, got " + std::to_string(cell_length));
  const double jac = 0.5 * cell_length;
  CellOperators ops;
  ops.order = basis.order;
  ops.length = cell_length;
  ops.mass = basis.mass * jac;
  ops.stiffness = basis.stiffness;
  ops.diff = basis.diff / jac;
  ops.lobatto_weights = Eigen::Map<const Vector>(basis.lobatto_weights.data(), basis.n_nodes()) * jac;
  ops.left_vals = basis.left_vals;
  ops.right_vals = basis.right_vals;
  ops.err_weights = Eigen::Map<const Vector>(basis.err_quad.weights.data(), basis.err_quad.size()) * jac;
  ops.err_basis_vals = basis.err_basis_vals;
  ops.err_basis_derivs = basis.err_basis_derivs / jac;
  ops.mass_ones = ops.mass * Vector::Ones(basis.n_nodes());
  ops.mass_llt.compute(ops.mass);
  return ops;
}

}  // namespace dafermos
