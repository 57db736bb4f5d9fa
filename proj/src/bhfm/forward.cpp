#include "bhfm/forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace bhfm {

namespace {

using specfun::Kernel;

constexpr int kDiskMaxOrder = 120;

double min_node_distance(const BoundaryCurve& curve, Point p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& node : curve.nodes()) best = std::min(best, distance(node.point, p));
  return best;
}

// Phi(z_l, p) for every boundary node z_l and sensor p_j, as an n x M matrix.
CMatrix node_to_sensor(Kernel kernel, double k, const BoundaryCurve& curve, const MeasurementCircle& circle) {
  const int n = curve.size();
  CMatrix out(n, circle.sensors);
  for (int j = 0; j < circle.sensors; ++j) {
    const Point y = circle.point(j);
    for (int l = 0; l < n; ++l) out(l, j) = specfun::phi({kernel, k}, curve.node(l).point, y);
  }
  return out;
}

void require_invertible(const BoundaryOperators& ops) {
  if (ops.helmholtz().condition() > kConditionLimit)
    throw NumericalError("S_k is numerically singular (condition " + std::to_string(ops.helmholtz().condition()) +
                         "); k^2 is at or near an interior Dirichlet eigenvalue");
  if (ops.modified().condition() > kConditionLimit)
    throw NumericalError("S_ik is numerically singular (condition " + std::to_string(ops.modified().condition()) + ")");
}

}  // namespace

void WaveContext::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidArgument("wavenumber must be positive");
  if (!(radius > 0.0)) throw InvalidArgument("measurement radius must be positive");
  if (sensors < 4) throw InvalidArgument("at least 4 sensors are required");
  if (n_boundary < 16 || n_boundary % 2 != 0)
    throw InvalidArgument("boundary node count must be even and at least 16");
  if (trunc < 0) throw InvalidArgument("truncation order must be non-negative");
}

CMatrix NearFieldSet::propagating() const { return L - (context.k * context.k) * U; }
CMatrix NearFieldSet::evanescent() const { return L + (context.k * context.k) * U; }

std::vector<double> log_quadrature_weights(int n) {
  if (n < 2 || n % 2 != 0) throw InvalidArgument("log quadrature needs an even node count");
  const int half = n / 2;
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double s = kPi * j / half;
    double sum = 0.0;
    for (int m = 1; m < half; ++m) sum += std::cos(m * s) / m;
    w[static_cast<std::size_t>(j)] = -2.0 * kPi / half * sum - kPi / (half * half) * std::cos(half * s);
  }
  return w;
}

CMatrix assemble_single_layer(Kernel kernel, double k, const BoundaryCurve& curve) {
  if (kernel != Kernel::Helmholtz && kernel != Kernel::ModifiedHelmholtz)
    throw InvalidArgument("single layer: kernel must be Helmholtz or ModifiedHelmholtz");
  if (!(k > 0.0)) throw InvalidArgument("single layer: wavenumber must be positive");
  const int n = curve.size();
  const auto weights = log_quadrature_weights(n);
  const double trap = 2.0 * kPi / n;
  const bool helmholtz = kernel == Kernel::Helmholtz;

  CMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& xi = curve.node(i);
    for (int j = 0; j < n; ++j) {
      const auto& xj = curve.node(j);
      if (xj.jacobian <= 0.0) throw NumericalError("single layer: vanishing jacobian");
      const double w_log = weights[static_cast<std::size_t>(std::abs(i - j))];
      if (i == j) {
        // Smooth remainder at coincidence from the small-argument expansions of
        // H0 and K0: both behave like -(ln(kr/2) + gamma) / (2 pi).
        const double real = -(std::log(0.5 * k * xi.jacobian) + specfun::kEulerGamma) / (2.0 * kPi);
        const cplx m2 = helmholtz ? cplx(real, 0.25) : cplx(real, 0.0);
        const double m1 = -1.0 / (4.0 * kPi);
        a(i, j) = (w_log * m1 + trap * m2) * xi.jacobian;
        continue;
      }
      const double kr = k * distance(xi.point, xj.point);
      const double log_factor = std::log(4.0 * std::pow(std::sin(0.5 * (xi.t - xj.t)), 2));
      cplx full;
      double m1;
      if (helmholtz) {
        const double j0 = specfun::detail::bessel_j(0, kr);
        full = 0.25 * kI * cplx(j0, specfun::detail::bessel_y(0, kr));
        m1 = -j0 / (4.0 * kPi);
      } else {
        full = specfun::detail::bessel_k(0, kr) / (2.0 * kPi);
        m1 = -specfun::detail::bessel_i(0, kr) / (4.0 * kPi);
      }
      const cplx m2 = full - m1 * log_factor;
      a(i, j) = (w_log * m1 + trap * m2) * xj.jacobian;
    }
  }
  return a;
}

BoundaryOperators::BoundaryOperators(double k, const BoundaryCurve& curve)
    : k_(k),
      a_k_(assemble_single_layer(Kernel::Helmholtz, k, curve)),
      a_ik_(assemble_single_layer(Kernel::ModifiedHelmholtz, k, curve)),
      s_k_(a_k_),
      s_ik_(a_ik_) {}

LayerDensities solve_densities(const WaveContext& context, const BoundaryCurve& curve,
                               const BoundaryOperators& ops, Point source) {
  if (curve.contains(source)) throw InvalidArgument("source point lies inside the obstacle");
  require_invertible(ops);
  const int n = curve.size();
  const double k = context.k;
  CVector rhs_k(n);
  CVector rhs_ik(n);
  for (int l = 0; l < n; ++l) {
    rhs_k(l) = specfun::phi({Kernel::Helmholtz, k}, curve.node(l).point, source);
    rhs_ik(l) = specfun::phi({Kernel::ModifiedHelmholtz, k}, curve.node(l).point, source);
  }
  LayerDensities out;
  out.source = source;
  const CVector sol_k = ops.helmholtz().solve(rhs_k);
  const CVector sol_ik = ops.modified().solve(rhs_ik);
  const double res_k = (ops.helmholtz_matrix() * sol_k - rhs_k).norm() / rhs_k.norm();
  const double res_ik = (ops.modified_matrix() * sol_ik - rhs_ik).norm() / rhs_ik.norm();
  if (!(res_k <= kDensityResidualLimit))
    throw NumericalError("density solve: S_k is near-singular (k^2 close to a Dirichlet eigenvalue?), residual " +
                         std::to_string(res_k));
  if (!(res_ik <= kDensityResidualLimit))
    throw NumericalError("density solve: S_ik is near-singular, residual " + std::to_string(res_ik));
  out.psi = sol_k / (2.0 * k * k);
  out.varphi = -sol_ik / (2.0 * k * k);
  return out;
}

ScatteredValue evaluate_scattered(const WaveContext& context, const BoundaryCurve& curve,
                                  const LayerDensities& densities, Point receiver) {
  if (densities.psi.size() != curve.size() || densities.varphi.size() != curve.size())
    throw DimensionError("densities do not match the curve node count");
  if (curve.contains(receiver) || min_node_distance(curve, receiver) < 1e-12)
    throw InvalidArgument("receiver lies on or inside the obstacle");
  const double k = context.k;
  const double trap = 2.0 * kPi / curve.size();
  cplx pr = 0.0;
  cplx ev = 0.0;
  for (int l = 0; l < curve.size(); ++l) {
    const auto& node = curve.node(l);
    const double w = trap * node.jacobian;
    pr += w * specfun::phi({Kernel::Helmholtz, k}, receiver, node.point) * densities.psi(l);
    ev += w * specfun::phi({Kernel::ModifiedHelmholtz, k}, receiver, node.point) * densities.varphi(l);
  }
  return {pr + ev, -k * k * pr + k * k * ev, pr, ev};
}

DiskField analytic_disk_field(double k, double a, Point x, Point y) {
  if (!(k > 0.0) || !(a > 0.0)) throw InvalidArgument("disk field: k and a must be positive");
  const double rx = norm(x);
  const double ry = norm(y);
  if (rx <= a || ry <= a) throw InvalidArgument("disk field: points must lie outside the disk");
  const double dtheta = std::atan2(x.y, x.x) - std::atan2(y.y, y.x);
  const double ka = k * a;

  using namespace specfun::detail;
  cplx sum_pr = 0.0;
  double sum_ev = 0.0;
  bool pr_done = false;
  bool ev_done = false;
  for (int n = 0; n <= kDiskMaxOrder && !(pr_done && ev_done); ++n) {
    const double weight = n == 0 ? 1.0 : 2.0 * std::cos(n * dtheta);
    const double magnitude = n == 0 ? 1.0 : 2.0;
    if (!pr_done) {
      const cplx t = (bessel_j(n, ka) / hankel1(n, ka)) * hankel1(n, k * rx) * hankel1(n, k * ry);
      sum_pr += weight * t;
      pr_done = n > 2 && magnitude * std::abs(t) < 1e-17 * std::abs(sum_pr);
    }
    if (!ev_done) {
      const double t = (bessel_i(n, ka) / bessel_k(n, ka)) * bessel_k(n, k * rx) * bessel_k(n, k * ry);
      sum_ev += weight * t;
      ev_done = n > 2 && magnitude * std::abs(t) < 1e-17 * std::abs(sum_ev);
    }
  }
  const double scale = 1.0 / (2.0 * k * k);
  return {scale * 0.25 * kI * sum_pr, cplx(-scale * sum_ev / (2.0 * kPi), 0.0)};
}

LayerFields layer_fields(const WaveContext& context, const BoundaryCurve& curve) {
  context.validate();
  const MeasurementCircle circle = context.circle();
  if (!circle.encloses(curve)) throw InvalidArgument("obstacle is not strictly inside the measurement circle");
  const double k = context.k;
  const BoundaryOperators ops(k, curve);
  require_invertible(ops);

  const CMatrix rhs_k = node_to_sensor(Kernel::Helmholtz, k, curve, circle);
  const CMatrix rhs_ik = node_to_sensor(Kernel::ModifiedHelmholtz, k, curve, circle);
  const CMatrix sol_k = ops.helmholtz().solve(rhs_k);
  const CMatrix sol_ik = ops.modified().solve(rhs_ik);
  for (int j = 0; j < circle.sensors; ++j) {
    const double res_k = (ops.helmholtz_matrix() * sol_k.col(j) - rhs_k.col(j)).norm() / rhs_k.col(j).norm();
    const double res_ik = (ops.modified_matrix() * sol_ik.col(j) - rhs_ik.col(j)).norm() / rhs_ik.col(j).norm();
    if (!(res_k <= kDensityResidualLimit) || !(res_ik <= kDensityResidualLimit))
      throw NumericalError("density solve failed for source " + std::to_string(j) + " (residual " +
                           std::to_string(std::max(res_k, res_ik)) + ")");
  }
  const CMatrix psi = sol_k / (2.0 * k * k);
  const CMatrix varphi = -sol_ik / (2.0 * k * k);

  // Trapezoid rule: receivers are the same sensors, so the evaluation matrix is
  // the transposed right-hand side with arclength weights folded in.
  const Eigen::VectorXd w = [&] {
    Eigen::VectorXd out(curve.size());
    for (int l = 0; l < curve.size(); ++l) out(l) = 2.0 * kPi / curve.size() * curve.node(l).jacobian;
    return out;
  }();
  LayerFields out;
  out.propagating = rhs_k.transpose() * w.asDiagonal() * psi;
  out.evanescent = rhs_ik.transpose() * w.asDiagonal() * varphi;
  return out;
}

NearFieldSet build_near_field(const WaveContext& context, const BoundaryCurve& curve) {
  if (curve.size() != context.n_boundary) throw DimensionError("curve node count differs from n_boundary");
  const LayerFields fields = layer_fields(context, curve);
  const double k2 = context.k * context.k;
  NearFieldSet out;
  out.U = fields.propagating + fields.evanescent;
  out.L = -k2 * fields.propagating + k2 * fields.evanescent;
  out.context = context;
  out.shape = curve.shape().name();
  return out;
}

CMatrix unit_noise_matrix(int n, std::uint64_t seed, int stream) {
  if (n <= 0) throw InvalidArgument("noise matrix size must be positive");
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix e(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      e(i, j) = cplx(re, im) / std::sqrt(2.0);
    }
  return e / linalg::two_norm(e);
}

NearFieldSet add_noise(const NearFieldSet& data, double delta, std::uint64_t seed) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw InvalidArgument("noise level must be non-negative");
  NearFieldSet out = data;
  out.noise = {delta, seed};
  if (delta == 0.0) return out;
  const int m = data.sensors();
  const CMatrix e1 = unit_noise_matrix(m, seed, 0);
  const CMatrix e2 = unit_noise_matrix(m, seed, 1);
  out.U = data.U.cwiseProduct((CMatrix::Ones(m, m) + delta * e1));
  out.L = data.L.cwiseProduct((CMatrix::Ones(m, m) + delta * e2));
  return out;
}

}  // namespace bhfm
