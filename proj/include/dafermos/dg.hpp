#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dafermos/basis.hpp"
#include "dafermos/conservation_law.hpp"
#include "dafermos/errors.hpp"

namespace dafermos {

/// Uniform periodic mesh of [x_min, x_max).
struct Mesh1D {
  double x_min = 0.0;
  double x_max = 2.0;
  int n_cells = 1;

  Mesh1D() = default;
  Mesh1D(double lo, double hi, int n) : x_min(lo), x_max(hi), n_cells(n) {
    if (!(hi > lo)) throw InvalidArgument("Mesh1D: x_max must exceed x_min");
    if (n < 1) throw InvalidArgument("Mesh1D: need at least one cell, got " + std::to_string(n));
  }

  double cell_length() const { return (x_max - x_min) / n_cells; }
  double cell_left(int j) const { return x_min + j * cell_length(); }
  double measure() const { return x_max - x_min; }
};

/// Nodal coefficients, one column per cell: coeffs(k, j) = u^T_k of cell j.
using Coeffs = Matrix;

/// Mesh, reference basis and the scaled operators shared by all cells.
class DGSpace {
 public:
  DGSpace(Mesh1D mesh, int order)
      : mesh_(mesh), basis_(build_basis(order)), ops_(scale_to_cell(basis_, mesh.cell_length())) {}

  const Mesh1D& mesh() const noexcept { return mesh_; }
  const Basis& basis() const noexcept { return basis_; }
  const CellOperators& cell() const noexcept { return ops_; }
  int order() const noexcept { return basis_.order; }
  int n_nodes() const noexcept { return basis_.order + 1; }
  int n_cells() const noexcept { return mesh_.n_cells; }

  /// Physical coordinate of reference point xi in cell j.
  double to_physical(int j, double xi) const {
    return mesh_.cell_left(j) + 0.5 * (xi + 1.0) * mesh_.cell_length();
  }
  double node_x(int j, int k) const { return to_physical(j, basis_.nodes[k]); }

 private:
  Mesh1D mesh_;
  Basis basis_;
  CellOperators ops_;
};

inline std::shared_ptr<const DGSpace> make_space(Mesh1D mesh, int order) {
  return std::make_shared<const DGSpace>(mesh, order);
}

/// Piecewise polynomial DG solution on a periodic mesh.
struct DGState {
  std::shared_ptr<const DGSpace> space;
  Coeffs coeffs;

  int n_cells() const { return space->n_cells(); }
  int order() const { return space->order(); }
  auto cell(int j) const { return coeffs.col(j); }
  bool all_finite() const { return coeffs.allFinite(); }
};

inline DGState interpolate_ic(const std::function<double(double)>& fn, std::shared_ptr<const DGSpace> space) {
  DGState state{space, Coeffs(space->n_nodes(), space->n_cells())};
  for (int j = 0; j < space->n_cells(); ++j)
    for (int k = 0; k < space->n_nodes(); ++k) {
      const double v = fn(space->node_x(j, k));
      if (!std::isfinite(v))
        throw NonFiniteState("interpolate_ic: initial condition is not finite at x = " +
                             std::to_string(space->node_x(j, k)));
      state.coeffs(k, j) = v;
    }
  return state;
}

/// Interface fluxes; entry i is the flux through the left boundary of cell i
/// (between cell i-1 and cell i, periodically wrapped).
template <ScalarLaw L>
std::vector<double> interface_fluxes(const Coeffs& u, const L& law, const NumericalFlux& flux) {
  const int n = static_cast<int>(u.cols());
  const int p = static_cast<int>(u.rows()) - 1;
  std::vector<double> fstar(n);
  for (int i = 0; i < n; ++i) {
    const int left_cell = (i + n - 1) % n;
    fstar[i] = flux.value(u(p, left_cell), u(0, i), law);
  }
  return fstar;
}

template <ScalarLaw L>
std::vector<double> interface_entropy_fluxes(const Coeffs& u, const L& law, const NumericalFlux& flux) {
  const int n = static_cast<int>(u.cols());
  const int p = static_cast<int>(u.rows()) - 1;
  std::vector<double> Fstar(n);
  for (int i = 0; i < n; ++i) {
    const int left_cell = (i + n - 1) % n;
    Fstar[i] = flux.entropy_value(u(p, left_cell), u(0, i), law);
  }
  return Fstar;
}

/// Time derivative of one cell: M du/dt = S f(u) - (phi(x_r) f*_r - phi(x_l) f*_l).
template <ScalarLaw L, class CellU>
Vector dg_cell_rhs(const CellU& u, const CellOperators& ops, const L& law, double fstar_l, double fstar_r) {
  Vector f(u.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) f[k] = law.flux(u[k]);
  Vector rhs = ops.stiffness * f - ops.right_vals * fstar_r + ops.left_vals * fstar_l;
  return ops.mass_llt.solve(rhs);
}

struct DGRhs {
  Coeffs du_dt;
  std::vector<double> fstar;  // see interface_fluxes
};

/// Right-hand side of the uncorrected DG scheme.
template <ScalarLaw L>
DGRhs dg_rhs(const DGSpace& space, const Coeffs& u, const L& law, const NumericalFlux& flux) {
  DGRhs out{Coeffs(u.rows(), u.cols()), interface_fluxes(u, law, flux)};
  const int n = space.n_cells();
  for (int j = 0; j < n; ++j) {
    out.du_dt.col(j) = dg_cell_rhs(u.col(j), space.cell(), law, out.fstar[j], out.fstar[(j + 1) % n]);
  }
  if (!out.du_dt.allFinite()) throw NonFiniteState("dg_rhs: non-finite time derivative");
  return out;
}

template <ScalarLaw L>
DGRhs dg_rhs(const DGState& state, const L& law, const NumericalFlux& flux) {
  return dg_rhs(*state.space, state.coeffs, law, flux);
}

inline double cell_mean(const DGState& state, int j) {
  if (j < 0 || j >= state.n_cells())
    throw InvalidArgument("cell_mean: cell index " + std::to_string(j) + " out of range");
  const auto& ops = state.space->cell();
  return ops.integral(state.cell(j)) / ops.length;
}

inline double total_mass(const DGState& state) {
  const auto& ops = state.space->cell();
  return (ops.mass_ones.transpose() * state.coeffs).sum();
}

}  // namespace dafermos
