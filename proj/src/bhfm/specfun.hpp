#pragma once

// Integer-order Bessel functions of real argument and the radial fundamental
// solutions of the Helmholtz, modified Helmholtz and biharmonic Helmholtz
// operators in the plane.

#include "bhfm/types.hpp"

namespace bhfm::specfun {

inline constexpr int kMaxOrder = 60;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

double bessel_j(int order, double x);
double bessel_y(int order, double x);
double bessel_i(int order, double x);
double bessel_k(int order, double x);

// H^(1)_n(x) = J_n(x) + i Y_n(x); negative orders through H_{-n} = (-1)^n H_n.
cplx hankel1(int order, double x);

namespace detail {
// Same as the public functions but without the order cap; callers guarantee
// the result stays representable.
double bessel_j(int order, double x);
double bessel_y(int order, double x);
double bessel_i(int order, double x);
double bessel_k(int order, double x);
cplx hankel1(int order, double x);
}  // namespace detail

enum class Kernel {
  Helmholtz,            // Phi_k = (i/4) H0(k r)
  ModifiedHelmholtz,    // Phi_ik = (1/2pi) K0(k r)
  Biharmonic,           // G = -(Phi_k - Phi_ik) / (2k^2)
  BiharmonicLaplacian,  // Lap G = (Phi_k + Phi_ik) / 2
};

struct FundamentalSolution {
  Kernel kernel = Kernel::Helmholtz;
  double k = 1.0;
};

// Kernel value as a function of the distance r > 0.
cplx phi_radial(FundamentalSolution fs, double r);

// Kernel value between two distinct points.
cplx phi(FundamentalSolution fs, Point x, Point y);

}  // namespace bhfm::specfun
