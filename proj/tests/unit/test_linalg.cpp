#include <doctest.h>

#include <algorithm>
#include <random>

#include "bhfm/linalg.hpp"
#include "oracles.hpp"

using namespace bhfm;
using namespace bhfm::linalg;

namespace {

CMatrix random_matrix(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  return a;
}

// Sorted by modulus then argument, for multiset comparison.
std::vector<cplx> sorted(const CVector& v) {
  std::vector<cplx> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    if (std::abs(std::abs(a) - std::abs(b)) > 1e-9) return std::abs(a) < std::abs(b);
    return std::arg(a) < std::arg(b);
  });
  return out;
}

}  // namespace

TEST_CASE("LU solves") {
  SUBCASE("identity") {
    const CVector b = CVector::LinSpaced(5, 1.0, 5.0);
    CHECK((lu_solve(CMatrix::Identity(5, 5), b) - b).norm() == 0.0);
  }
  SUBCASE("random system") {
    const CMatrix a = random_matrix(40, 1);
    const CMatrix b = random_matrix(40, 2).leftCols(3);
    const LuFactorization lu(a);
    CHECK((a * lu.solve(b) - b).norm() <= 1e-12 * b.norm() * lu.condition());
    CHECK_FALSE(lu.ill_conditioned());
  }
  SUBCASE("Hilbert matrix triggers the condition warning") {
    CMatrix h(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) h(i, j) = 1.0 / (i + j + 1.0);
    const LuFactorization lu(h);
    CHECK(lu.ill_conditioned());
    CHECK(lu.condition() > 1e9);
  }
  SUBCASE("singular and malformed input") {
    CMatrix s = CMatrix::Zero(3, 3);
    s(0, 0) = 1.0;
    CHECK_THROWS_AS(LuFactorization{s}, NumericalError);
    CHECK_THROWS_AS(LuFactorization{CMatrix::Zero(2, 3)}, DimensionError);
    CMatrix bad = CMatrix::Identity(2, 2);
    bad(1, 0) = std::nan("");
    CHECK_THROWS_AS(LuFactorization{bad}, InvalidArgument);
    CHECK_THROWS_AS(lu_solve(CMatrix(CMatrix::Identity(2, 2)), CVector(CVector::Ones(3))), DimensionError);
  }
}

TEST_CASE("eigenvalues of closed-form cases") {
  SUBCASE("diagonal") {
    CMatrix d = CMatrix::Zero(3, 3);
    d(0, 0) = -1.0;
    d(1, 1) = cplx(0.0, 2.0);
    d(2, 2) = 3.0;
    const SpectralData s = eig(d);
    CHECK(std::abs(s.eigenvalues(0) - 3.0) < 1e-14);
    CHECK(std::abs(s.eigenvalues(1) - cplx(0.0, 2.0)) < 1e-14);
    CHECK(std::abs(s.eigenvalues(2) + 1.0) < 1e-14);
    CHECK(std::abs(std::abs(s.eigenvectors(2, 0)) - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(s.eigenvectors(1, 1)) - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(s.eigenvectors(0, 2)) - 1.0) < 1e-14);
  }
  SUBCASE("rotation") {
    CMatrix r(2, 2);
    r << 0.0, 1.0, -1.0, 0.0;
    const SpectralData s = eig(r);
    const auto v = sorted(s.eigenvalues);
    CHECK(std::abs(v[0] - cplx(0.0, -1.0)) < 1e-14);
    CHECK(std::abs(v[1] - cplx(0.0, 1.0)) < 1e-14);
  }
  SUBCASE("eigenvalues are roots of the characteristic polynomial") {
    const CMatrix a = random_matrix(5, 3);
    const SpectralData s = eig(a);
    for (int j = 0; j < 5; ++j) {
      const cplx det = (a - s.eigenvalues(j) * CMatrix::Identity(5, 5)).determinant();
      CHECK(std::abs(det) < 1e-10 * std::pow(a.norm(), 5));
    }
  }
}

TEST_CASE("eigendecomposition invariants on random matrices") {
  for (unsigned seed : {4u, 5u, 6u}) {
    const int n = 16;
    const CMatrix a = random_matrix(n, seed);
    const SpectralData s = eig(a);
    CHECK(max_residual(a, s) <= 1e-10 * two_norm(a));
    for (int j = 0; j < n; ++j) CHECK(s.eigenvectors.col(j).norm() == doctest::Approx(1.0).epsilon(1e-14));
    for (int j = 1; j < n; ++j) CHECK(std::abs(s.eigenvalues(j)) <= std::abs(s.eigenvalues(j - 1)));
    CHECK(std::abs(s.eigenvalues.sum() - a.trace()) <= 1e-8 * std::abs(a.trace()) + 1e-12 * a.norm());
    CHECK(std::abs(s.eigenvalues.prod() - LuFactorization(a).determinant()) <=
          1e-8 * std::abs(LuFactorization(a).determinant()));

    const CMatrix p = CMatrix::Identity(n, n) + 0.1 * random_matrix(n, seed + 100);
    const SpectralData t = eig(LuFactorization(p).solve(CMatrix(a * p)));
    const auto u = sorted(s.eigenvalues), v = sorted(t.eigenvalues);
    for (int j = 0; j < n; ++j) CHECK(std::abs(u[static_cast<std::size_t>(j)] - v[static_cast<std::size_t>(j)]) <= 1e-6);
  }
}

TEST_CASE("balancing is a diagonal similarity") {
  CMatrix a = random_matrix(6, 9);
  for (int i = 0; i < 6; ++i) {
    a.row(i) *= std::pow(1e3, i - 3);
    a.col(i) /= std::pow(1e3, i - 3);
  }
  const Balanced b = balance(a);
  const CMatrix d = b.scale.cast<cplx>().asDiagonal();
  const CMatrix dinv = b.scale.cwiseInverse().cast<cplx>().asDiagonal();
  CHECK((dinv * a * d - b.matrix).norm() <= 1e-14 * a.norm());
  CHECK(b.matrix.norm() < a.norm());
  for (int i = 0; i < 6; ++i) CHECK(std::log2(b.scale(i)) == doctest::Approx(std::round(std::log2(b.scale(i)))));
}

TEST_CASE("norms") {
  CHECK(two_norm(CMatrix::Identity(4, 4)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(inf_norm(CMatrix::Identity(4, 4)) == 1.0);
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -4.0;
  const MatrixNorms n = norms(d);
  CHECK(n.two_norm == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(n.inf_norm == 4.0);
  CHECK(n.fro_norm == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(max_abs(d) == 4.0);
  CHECK(two_norm(CMatrix::Zero(3, 3)) == 0.0);

  CMatrix ones = CMatrix::Ones(3, 3);
  CHECK(inf_norm(ones) == 3.0);
  CHECK(max_abs(ones) == 1.0);

  for (unsigned seed : {11u, 12u}) {
    const CMatrix a = random_matrix(24, seed);
    CHECK(two_norm(a) == doctest::Approx(oracle::two_norm(a)).epsilon(1e-8));
  }
}
