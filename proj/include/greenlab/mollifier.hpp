#pragma once

#include "greenlab/domain.hpp"
#include "greenlab/types.hpp"

namespace greenlab {

// Radial bump psi_rho(x) = rho^-N alpha_N nu(|x|/rho), with nu = 1 on [0, 1/2],
// nu = 0 on [1, inf) and nu' = -eta, eta a normalized smooth bump on (1/2, 1).
struct MollifierSpec {
  int dim = 2;
  double bump_normalizer = 0.0;  // c in eta = c exp(-1/((xi - 1/2)(1 - xi)))
  double alpha_N = 0.0;
  double rho = 0.1;
};

MollifierSpec make_mollifier(int dim, double rho);

double bump_eta(const MollifierSpec& spec, double xi);
double profile_nu(const MollifierSpec& spec, double xi);
// surface area of the unit sphere in R^N
double unit_sphere_area(int dim);

double eval_psi_rho(const MollifierSpec& spec, const Point& x, double rho);
double eval_grad_psi_rho(const MollifierSpec& spec, const Point& x, double rho, int axis);

// int psi_rho over R^N by adaptive radial quadrature
double integrate_psi(const MollifierSpec& spec, double rho, double tol = 1e-12);

// Nodal samples of psi_rho(. - z) scaled to unit lumped mass; a single-node
// delta when rho is below the mesh width. raw_mass receives the mass before scaling.
DiscreteField project_source(const Mesh& mesh, const Point& z, double rho, double* raw_mass = nullptr);

// Nodal samples of d_l psi_rho(. - z) scaled so that sum v (x_l - z_l) vol = -1;
// a two-node centred difference of deltas when rho is below the mesh width.
DiscreteField project_dipole(const Mesh& mesh, const Point& z, double rho, int axis, double* raw_moment = nullptr);

}  // namespace greenlab
