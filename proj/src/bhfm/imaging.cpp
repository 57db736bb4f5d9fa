#include "bhfm/imaging.hpp"

#include <algorithm>
#include <cmath>

namespace bhfm {

FilterKind parse_filter(std::string_view name) {
  if (name == "tikhonov") return FilterKind::Tikhonov;
  if (name == "glsm") return FilterKind::Glsm;
  if (name == "cutoff") return FilterKind::Cutoff;
  if (name == "none") return FilterKind::None;
  throw InvalidArgument("unknown filter '" + std::string(name) + "' (expected tikhonov, glsm, cutoff, none)");
}

std::string filter_name(FilterKind kind) {
  switch (kind) {
    case FilterKind::Tikhonov:
      return "tikhonov";
    case FilterKind::Glsm:
      return "glsm";
    case FilterKind::Cutoff:
      return "cutoff";
    case FilterKind::None:
      return "none";
  }
  return "unknown";
}

void FilterSpec::validate() const {
  if (!std::isfinite(alpha) || alpha < 0.0) throw InvalidArgument("alpha must be finite and non-negative");
  if (kind != FilterKind::None && !(alpha > 0.0)) throw InvalidArgument("regularizing filters need alpha > 0");
}

double filter(FilterKind kind, double t, double alpha) {
  switch (kind) {
    case FilterKind::Tikhonov:
      return t * t / (t * t + alpha);
    case FilterKind::Glsm:
      return t / (alpha + t);
    case FilterKind::Cutoff:
      return t * t >= alpha ? 1.0 : 0.0;
    case FilterKind::None:
      return 1.0;
  }
  return 1.0;
}

double select_alpha(const AlphaPolicy& policy, FilterKind kind, double delta_estimate) {
  if (policy.mode == AlphaPolicy::Mode::Fixed) {
    if (!(policy.alpha >= 0.0)) throw InvalidArgument("fixed alpha must be non-negative");
    return policy.alpha;
  }
  if (!(policy.p > 0.0 && policy.p < 0.25)) throw InvalidArgument("alpha rule exponent p must lie in (0, 1/4)");
  if (!(delta_estimate > 0.0)) throw InvalidArgument("alpha rule needs a positive noise estimate");
  const double e = 0.25 - policy.p;
  switch (kind) {
    case FilterKind::Tikhonov:
      return 0.25 * std::pow(delta_estimate, e);
    case FilterKind::Glsm:
      return std::pow(delta_estimate, 0.5 * e);
    case FilterKind::Cutoff:
    case FilterKind::None:
      break;
  }
  throw InvalidArgument("no parameter rule for filter '" + filter_name(kind) + "'");
}

double estimate_noise(const CMatrix& n) {
  if (n.rows() != n.cols()) throw DimensionError("estimate_noise: matrix is not square");
  const double denom = linalg::two_norm(n);
  if (!(denom > 0.0)) throw InvalidArgument("estimate_noise: zero matrix");
  const CMatrix skew = n - n.transpose();
  if (skew.norm() == 0.0) return 0.0;
  return linalg::two_norm(skew) / denom;
}

CMatrix near_field_matrix(const NearFieldSet& data) { return data.propagating(); }

CMatrix scattered_only_matrix(const NearFieldSet& data) { return (-2.0 * data.context.k * data.context.k) * data.U; }

CVector test_vector(Point z, int sensors, double k) {
  const MeasurementCircle circle{1.0, sensors};
  CVector b(sensors);
  for (int i = 0; i < sensors; ++i) b(i) = std::exp(-kI * (k * dot(z, circle.direction(i))));
  return b;
}

namespace {

// phi^2(|lambda_j|) / |lambda_j| * dtheta for every retained eigenpair, zero otherwise.
Eigen::VectorXd picard_weights(const linalg::SpectralData& spectral, const FilterSpec& filter_spec) {
  filter_spec.validate();
  const int m = spectral.size();
  if (m == 0) throw InvalidArgument("indicator: empty spectrum");
  const double lead = std::abs(spectral.eigenvalues(0));
  if (!(lead > 0.0)) throw InvalidArgument("indicator: spectrum is identically zero");
  const double dtheta = 2.0 * kPi / m;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
  for (int j = 0; j < m; ++j) {
    const double t = std::abs(spectral.eigenvalues(j));
    if (t < kEigenvalueFloor * lead) continue;
    const double f = filter(filter_spec.kind, t, filter_spec.alpha);
    w(j) = f * f / t * dtheta;
  }
  return w;
}

}  // namespace

double indicator(const linalg::SpectralData& spectral, Point z, const FilterSpec& filter_spec, double k) {
  const Eigen::VectorXd w = picard_weights(spectral, filter_spec);
  const CVector coeff = spectral.eigenvectors.adjoint() * test_vector(z, spectral.size(), k);
  const double sum = w.dot(coeff.cwiseAbs2());
  return sum > 0.0 ? 1.0 / sum : std::numeric_limits<double>::infinity();
}

void GridSpec::validate() const {
  if (nx < 2 || ny < 2) throw InvalidArgument("grid resolution must be at least 2 per axis");
  if (!(xmax > xmin) || !(ymax > ymin)) throw InvalidArgument("grid bounds are empty");
}

Point GridSpec::point(int ix, int iy) const {
  return {xmin + (xmax - xmin) * ix / (nx - 1), ymin + (ymax - ymin) * iy / (ny - 1)};
}

IndicatorGrid evaluate_grid(const linalg::SpectralData& spectral, const GridSpec& grid,
                            const FilterSpec& filter_spec, double k) {
  grid.validate();
  const Eigen::VectorXd w = picard_weights(spectral, filter_spec);
  const int m = spectral.size();
  const CMatrix vh = spectral.eigenvectors.adjoint();

  IndicatorGrid out{grid, std::vector<double>(static_cast<std::size_t>(grid.nx) * grid.ny)};
  CMatrix row(m, grid.nx);
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) row.col(ix) = test_vector(grid.point(ix, iy), m, k);
    const Eigen::MatrixXd power = (vh * row).cwiseAbs2();
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double sum = w.dot(power.col(ix));
      out.values[static_cast<std::size_t>(iy) * grid.nx + ix] =
          sum > 0.0 ? 1.0 / sum : std::numeric_limits<double>::infinity();
    }
  }

  double finite_max = 0.0;
  for (double v : out.values)
    if (std::isfinite(v)) finite_max = std::max(finite_max, v);
  if (finite_max == 0.0) {
    std::fill(out.values.begin(), out.values.end(), 1.0);
    return out;
  }
  for (double& v : out.values) v = std::isfinite(v) ? v / finite_max : 1.0;
  return out;
}

Reconstruction reconstruct(const NearFieldSet& data, const ReconstructionOptions& options) {
  const CMatrix kernel = options.scattered_only ? scattered_only_matrix(data) : near_field_matrix(data);
  Reconstruction out;
  out.noise_estimate = estimate_noise(kernel);
  out.alpha = options.filter == FilterKind::None ? 0.0
                                                 : select_alpha(options.alpha, options.filter, out.noise_estimate);
  const TransformPair transforms = assemble_transforms(data.context);
  out.spectral = linalg::eig(transform_near_field(transforms, kernel));
  out.grid = evaluate_grid(out.spectral, options.grid, {options.filter, out.alpha}, data.context.k);
  return out;
}

}  // namespace bhfm
