#pragma once

// Far-field transformation of near-field data measured on the circle |x| = R.
//
//   (Q f)(theta) = int Q_func(theta, phi) f(phi) dphi,
//   Q_func = (2 / (pi i)) sum_{m=-T..T} e^{i m (theta - phi - pi/2)} / H^(1)_m(kR)
//   (R g)(theta) = g(theta + pi),  R_func = (1/2pi) sum_{m=-T..T} e^{i m (theta - phi + pi)}
//
// Q maps Dirichlet data on the circle to the far-field pattern of the
// radiating exterior Helmholtz solution; R is the antipodal map. For a
// near-field matrix N that carries the arclength weight R dtheta, the product
// Q N Q^T R is the sound-soft far-field operator.

#include "bhfm/forward.hpp"

namespace bhfm {

cplx q_kernel(double theta, double phi, double k, double radius, int trunc);
double r_kernel(double theta, double phi, int trunc);

struct TransformPair {
  CMatrix Q;   // q_kernel(theta_i, theta_j) * dtheta
  CMatrix Qt;  // transpose of Q with respect to the arclength pairing on the circle
  CMatrix R;   // r_kernel(theta_i, theta_j) * dtheta (real)
  int trunc = 10;
  double angular_weight = 0.0;    // dtheta = 2 pi / M
  double arclength_weight = 0.0;  // R dtheta
};

TransformPair assemble_transforms(const WaveContext& context);

// Q N Qt R.
CMatrix far_field_operator(const TransformPair& transforms, const CMatrix& near_field);

// Applies the arclength weight R dtheta of the source integral to a sampled
// kernel matrix (e.g. L - k^2 U) and returns Q (N R dtheta) Qt R.
CMatrix transform_near_field(const TransformPair& transforms, const CMatrix& kernel_samples);

}  // namespace bhfm
