#pragma once

// Regularized factorization-method indicator
//
//   W_reg(z) = [ sum_j phi^2(|lambda_j|, alpha) / |lambda_j| * |(b_z, psi_j)|^2 ]^-1,
//   b_z(xhat) = exp(-i k z . xhat),
//
// built from the eigenpairs of the transformed operator Q N Q^T R.

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "bhfm/fftransform.hpp"
#include "bhfm/linalg.hpp"

namespace bhfm {

enum class FilterKind { Tikhonov, Glsm, Cutoff, None };

FilterKind parse_filter(std::string_view name);
std::string filter_name(FilterKind kind);

struct FilterSpec {
  FilterKind kind = FilterKind::Tikhonov;
  double alpha = 1e-4;

  void validate() const;
};

double filter(FilterKind kind, double t, double alpha);

struct AlphaPolicy {
  enum class Mode { Fixed, APriori };
  Mode mode = Mode::Fixed;
  double alpha = 1e-4;  // Fixed
  double p = 0.125;     // APriori, in (0, 1/4)

  static AlphaPolicy fixed(double alpha) { return {Mode::Fixed, alpha, 0.125}; }
  static AlphaPolicy a_priori(double p) { return {Mode::APriori, 0.0, p}; }
};

// Tikhonov: delta^(1/4 - p) / 4; GLSM: delta^((1/4 - p) / 2).
double select_alpha(const AlphaPolicy& policy, FilterKind kind, double delta_estimate);

// ||N - N^T||_2 / ||N||_2; vanishes for reciprocal (noiseless) data.
double estimate_noise(const CMatrix& n);

// L - k^2 U.
CMatrix near_field_matrix(const NearFieldSet& data);
// -2k^2 U; ignores the Laplacian data.
CMatrix scattered_only_matrix(const NearFieldSet& data);

CVector test_vector(Point z, int sensors, double k);

// Eigenvalues below this fraction of the largest modulus are left out of the sum.
inline constexpr double kEigenvalueFloor = 1e-14;

// Returns +infinity when every retained term vanishes.
double indicator(const linalg::SpectralData& spectral, Point z, const FilterSpec& filter_spec, double k);

struct GridSpec {
  double xmin = -3.0;
  double xmax = 3.0;
  double ymin = -3.0;
  double ymax = 3.0;
  int nx = 200;
  int ny = 200;

  void validate() const;
  Point point(int ix, int iy) const;
};

struct IndicatorGrid {
  GridSpec spec;
  std::vector<double> values;  // row-major: index iy * nx + ix

  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * spec.nx + ix]; }
  Point point(int ix, int iy) const { return spec.point(ix, iy); }
};

// Indicator at every grid node, infinities replaced by the finite maximum,
// then scaled to unit max-norm.
IndicatorGrid evaluate_grid(const linalg::SpectralData& spectral, const GridSpec& grid,
                            const FilterSpec& filter_spec, double k);

struct ReconstructionOptions {
  FilterKind filter = FilterKind::Tikhonov;
  AlphaPolicy alpha = AlphaPolicy::fixed(1e-4);
  GridSpec grid;
  bool scattered_only = false;
};

struct Reconstruction {
  IndicatorGrid grid;
  linalg::SpectralData spectral;
  double noise_estimate = 0.0;
  double alpha = 0.0;
};

// Kernel matrix -> Q N Q^T R -> eigenpairs -> indicator grid.
Reconstruction reconstruct(const NearFieldSet& data, const ReconstructionOptions& options);

}  // namespace bhfm
