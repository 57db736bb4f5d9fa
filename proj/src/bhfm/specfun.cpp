#include "bhfm/specfun.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/bessel.hpp>

namespace bhfm::specfun {

namespace {

void check_order(int order, const char* who) {
  if (order < 0) throw InvalidArgument(std::string(who) + ": negative order");
  if (order > kMaxOrder)
    throw InvalidArgument(std::string(who) + ": order exceeds " + std::to_string(kMaxOrder));
}

void check_finite(double x, const char* who) {
  if (!std::isfinite(x)) throw InvalidArgument(std::string(who) + ": non-finite argument");
}

}  // namespace

namespace detail {

double bessel_j(int order, double x) {
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  return boost::math::cyl_bessel_j(order, x);
}

double bessel_y(int order, double x) { return boost::math::cyl_neumann(order, x); }

double bessel_i(int order, double x) {
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  return boost::math::cyl_bessel_i(order, x);
}

double bessel_k(int order, double x) { return boost::math::cyl_bessel_k(order, x); }

cplx hankel1(int order, double x) {
  const int m = order < 0 ? -order : order;
  cplx h{bessel_j(m, x), bessel_y(m, x)};
  if (order < 0 && (m % 2 == 1)) h = -h;
  return h;
}

}  // namespace detail

double bessel_j(int order, double x) {
  check_order(order, "bessel_j");
  check_finite(x, "bessel_j");
  if (x < 0.0) throw InvalidArgument("bessel_j: negative argument");
  return detail::bessel_j(order, x);
}

double bessel_y(int order, double x) {
  check_order(order, "bessel_y");
  check_finite(x, "bessel_y");
  if (x <= 0.0) throw InvalidArgument("bessel_y: argument must be positive");
  return detail::bessel_y(order, x);
}

double bessel_i(int order, double x) {
  check_order(order, "bessel_i");
  check_finite(x, "bessel_i");
  if (x < 0.0) throw InvalidArgument("bessel_i: negative argument");
  return detail::bessel_i(order, x);
}

double bessel_k(int order, double x) {
  check_order(order, "bessel_k");
  check_finite(x, "bessel_k");
  if (x <= 0.0) throw InvalidArgument("bessel_k: argument must be positive");
  return detail::bessel_k(order, x);
}

cplx hankel1(int order, double x) {
  check_order(order < 0 ? -order : order, "hankel1");
  check_finite(x, "hankel1");
  if (x <= 0.0) throw InvalidArgument("hankel1: argument must be positive");
  return detail::hankel1(order, x);
}

cplx phi_radial(FundamentalSolution fs, double r) {
  if (!(fs.k > 0.0)) throw InvalidArgument("phi: wavenumber must be positive");
  if (!(r > 0.0)) throw InvalidArgument("phi: coincident points");
  const double kr = fs.k * r;
  const auto helmholtz = [&] { return 0.25 * kI * cplx(detail::bessel_j(0, kr), detail::bessel_y(0, kr)); };
  const auto modified = [&] { return cplx(detail::bessel_k(0, kr) / (2.0 * kPi), 0.0); };
  switch (fs.kernel) {
    case Kernel::Helmholtz:
      return helmholtz();
    case Kernel::ModifiedHelmholtz:
      return modified();
    case Kernel::Biharmonic:
      return -(helmholtz() - modified()) / (2.0 * fs.k * fs.k);
    case Kernel::BiharmonicLaplacian:
      return 0.5 * (helmholtz() + modified());
  }
  throw InvalidArgument("phi: unknown kernel");
}

cplx phi(FundamentalSolution fs, Point x, Point y) { return phi_radial(fs, distance(x, y)); }

}  // namespace bhfm::specfun
