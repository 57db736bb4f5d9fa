#include "bhfm/fftransform.hpp"

#include <cmath>
#include <vector>

namespace bhfm {

namespace {

std::vector<cplx> inverse_hankels(double kr, int trunc) {
  std::vector<cplx> out(static_cast<std::size_t>(trunc) + 1);
  for (int m = 0; m <= trunc; ++m) out[static_cast<std::size_t>(m)] = 1.0 / specfun::hankel1(m, kr);
  return out;
}

cplx q_sum(double u, const std::vector<cplx>& inv_h) {
  // u = theta - phi - pi/2; the m and -m terms share 1/H_m up to (-1)^m.
  cplx sum = inv_h[0];
  for (std::size_t m = 1; m < inv_h.size(); ++m) {
    const double md = static_cast<double>(m);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    sum += inv_h[m] * (std::exp(kI * (md * u)) + sign * std::exp(-kI * (md * u)));
  }
  return 2.0 / (kPi * kI) * sum;
}

double r_sum(double u, int trunc) {
  double sum = 1.0;
  for (int m = 1; m <= trunc; ++m) sum += 2.0 * std::cos(m * u);
  return sum / (2.0 * kPi);
}

}  // namespace

cplx q_kernel(double theta, double phi, double k, double radius, int trunc) {
  if (trunc < 0) throw InvalidArgument("q_kernel: negative truncation");
  if (!(k > 0.0) || !(radius > 0.0)) throw InvalidArgument("q_kernel: k and R must be positive");
  return q_sum(theta - phi - 0.5 * kPi, inverse_hankels(k * radius, trunc));
}

double r_kernel(double theta, double phi, int trunc) {
  if (trunc < 0) throw InvalidArgument("r_kernel: negative truncation");
  return r_sum(theta - phi + kPi, trunc);
}

TransformPair assemble_transforms(const WaveContext& context) {
  const int m = context.sensors;
  const int trunc = context.trunc;
  if (trunc < 0) throw InvalidArgument("transforms: negative truncation");
  if (m < 2 * trunc + 2)
    throw InvalidArgument("transforms: sensor count must be at least 2*trunc + 2 to avoid aliasing");
  if (!(context.k > 0.0) || !(context.radius > 0.0)) throw InvalidArgument("transforms: k and R must be positive");

  const MeasurementCircle circle = context.circle();
  const auto inv_h = inverse_hankels(context.k * context.radius, trunc);
  TransformPair out;
  out.trunc = trunc;
  out.angular_weight = circle.angular_weight();
  out.arclength_weight = circle.arclength_weight();
  out.Q.resize(m, m);
  out.R.resize(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double diff = circle.angle(i) - circle.angle(j);
      out.Q(i, j) = q_sum(diff - 0.5 * kPi, inv_h) * out.angular_weight;
      out.R(i, j) = r_sum(diff + kPi, trunc) * out.angular_weight;
    }
  }
  // The dual pairing on the circle integrates against ds = R dtheta, so the
  // transposed angular kernel picks up a factor 1/R.
  out.Qt = out.Q.transpose() / context.radius;
  return out;
}

CMatrix far_field_operator(const TransformPair& transforms, const CMatrix& near_field) {
  const auto m = transforms.Q.rows();
  if (near_field.rows() != m || near_field.cols() != m)
    throw DimensionError("far_field_operator: near-field matrix does not match the transforms");
  return transforms.Q * near_field * transforms.Qt * transforms.R;
}

CMatrix transform_near_field(const TransformPair& transforms, const CMatrix& kernel_samples) {
  return far_field_operator(transforms, kernel_samples * transforms.arclength_weight);
}

}  // namespace bhfm
