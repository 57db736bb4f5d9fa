#pragma once

// Direct scattering by a simply supported obstacle. The scattered field is
// split into a propagating part (Helmholtz single layer with density psi) and
// an evanescent part (modified Helmholtz single layer with density varphi):
//
//   u_scat = SL_k psi + SL_ik varphi,   Lap u_scat = -k^2 SL_k psi + k^2 SL_ik varphi,
//   psi = S_k^-1 Phi_k(., y) / (2k^2),  varphi = -S_ik^-1 Phi_ik(., y) / (2k^2).
//
// The boundary operators are discretized by Nystrom's method with the
// logarithmic singularity integrated by trigonometric product quadrature.

#include <cstdint>
#include <string>
#include <utility>

#include "bhfm/geometry.hpp"
#include "bhfm/linalg.hpp"
#include "bhfm/specfun.hpp"

namespace bhfm {

struct WaveContext {
  double k = 2.0;
  double radius = 3.0;  // measurement circle
  int sensors = 64;
  int n_boundary = 256;
  int trunc = 10;

  MeasurementCircle circle() const { return make_circle(radius, sensors); }
  void validate() const;
};

struct NoiseInfo {
  double delta = 0.0;
  std::uint64_t seed = 0;
};

// U(i, j) = u_scat(x_i, y_j), L(i, j) = Lap_x u_scat(x_i, y_j); sensors double
// as sources.
struct NearFieldSet {
  CMatrix U;
  CMatrix L;
  WaveContext context;
  std::string shape;
  NoiseInfo noise;

  int sensors() const { return static_cast<int>(U.rows()); }
  // L - k^2 U = -2k^2 u_pr (the near-field kernel).
  CMatrix propagating() const;
  // L + k^2 U = 2k^2 u_ev.
  CMatrix evanescent() const;
};

struct LayerDensities {
  CVector psi;
  CVector varphi;
  Point source;
};

struct ScatteredValue {
  cplx u;
  cplx laplacian;
  cplx propagating;  // SL_k psi
  cplx evanescent;   // SL_ik varphi
};

// Nystrom matrix of the single-layer boundary operator for kernel
// Helmholtz or ModifiedHelmholtz.
CMatrix assemble_single_layer(specfun::Kernel kernel, double k, const BoundaryCurve& curve);

// Product-quadrature weights R_j for the ln(4 sin^2((t - tau)/2)) factor,
// indexed by node offset j = 0..n-1.
std::vector<double> log_quadrature_weights(int n);

class BoundaryOperators {
 public:
  BoundaryOperators(double k, const BoundaryCurve& curve);

  const linalg::LuFactorization& helmholtz() const { return s_k_; }
  const linalg::LuFactorization& modified() const { return s_ik_; }
  const CMatrix& helmholtz_matrix() const { return a_k_; }
  const CMatrix& modified_matrix() const { return a_ik_; }
  double k() const { return k_; }

 private:
  double k_;
  CMatrix a_k_;
  CMatrix a_ik_;
  linalg::LuFactorization s_k_;
  linalg::LuFactorization s_ik_;
};

// Relative residual above which a density solve is reported as failed.
inline constexpr double kDensityResidualLimit = 1e-8;
// Condition number above which a boundary operator is treated as singular
// (k^2 at or next to an interior Dirichlet eigenvalue).
inline constexpr double kConditionLimit = 1e12;

LayerDensities solve_densities(const WaveContext& context, const BoundaryCurve& curve,
                               const BoundaryOperators& ops, Point source);

ScatteredValue evaluate_scattered(const WaveContext& context, const BoundaryCurve& curve,
                                  const LayerDensities& densities, Point receiver);

struct DiskField {
  cplx u_pr;
  cplx u_ev;
};

// Separation-of-variables solution for the disk |x| < a centred at the origin.
DiskField analytic_disk_field(double k, double a, Point x, Point y);

// Propagating (SL_k psi) and evanescent (SL_ik varphi) contributions at every
// sensor pair.
struct LayerFields {
  CMatrix propagating;
  CMatrix evanescent;
};

LayerFields layer_fields(const WaveContext& context, const BoundaryCurve& curve);

NearFieldSet build_near_field(const WaveContext& context, const BoundaryCurve& curve);

// Entrywise multiplicative noise U o (1 + delta E1), L o (1 + delta E2) with
// ||E1||_2 = ||E2||_2 = 1.
NearFieldSet add_noise(const NearFieldSet& data, double delta, std::uint64_t seed);

// Complex Gaussian matrix rescaled to unit spectral norm.
CMatrix unit_noise_matrix(int n, std::uint64_t seed, int stream);

}  // namespace bhfm
