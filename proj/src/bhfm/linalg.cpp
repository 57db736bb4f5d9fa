#include "bhfm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace bhfm::linalg {

namespace {

void require_square(const CMatrix& a, const char* who) {
  if (a.rows() != a.cols()) throw DimensionError(std::string(who) + ": matrix is not square");
}

void require_finite(const CMatrix& a, const char* who) {
  if (!a.allFinite()) throw InvalidArgument(std::string(who) + ": non-finite entries");
}

double one_norm(const CMatrix& a) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) best = std::max(best, a.col(j).cwiseAbs().sum());
  return best;
}

}  // namespace

LuFactorization::LuFactorization(const CMatrix& a) {
  require_square(a, "lu");
  require_finite(a, "lu");
  if (a.rows() == 0) throw DimensionError("lu: empty matrix");
  lu_.compute(a);
  const auto& packed = lu_.matrixLU();
  for (Eigen::Index i = 0; i < packed.rows(); ++i)
    if (packed(i, i) == cplx(0.0, 0.0)) throw NumericalError("lu: matrix is exactly singular");
  condition_ = one_norm(a) * one_norm(lu_.inverse());
  if (!std::isfinite(condition_)) throw NumericalError("lu: matrix is numerically singular");
}

CMatrix LuFactorization::solve(const CMatrix& b) const {
  if (b.rows() != lu_.rows()) throw DimensionError("lu solve: right-hand side has wrong row count");
  return lu_.solve(b);
}

CVector LuFactorization::solve(const CVector& b) const {
  if (b.size() != lu_.rows()) throw DimensionError("lu solve: right-hand side has wrong length");
  return lu_.solve(b);
}

CMatrix lu_solve(const CMatrix& a, const CMatrix& b) { return LuFactorization(a).solve(b); }
CVector lu_solve(const CMatrix& a, const CVector& b) { return LuFactorization(a).solve(b); }

Balanced balance(const CMatrix& a) {
  require_square(a, "balance");
  const Eigen::Index n = a.rows();
  Balanced out{a, Eigen::VectorXd::Ones(n)};
  constexpr double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(out.matrix(j, i));
        r += std::abs(out.matrix(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        out.scale(i) *= f;
        out.matrix.row(i) /= f;
        out.matrix.col(i) *= f;
      }
    }
  }
  return out;
}

SpectralData eig(const CMatrix& a) {
  require_square(a, "eig");
  require_finite(a, "eig");
  const Eigen::Index n = a.rows();
  SpectralData out;
  if (n == 0) return out;

  const Balanced bal = balance(a);
  Eigen::ComplexEigenSolver<CMatrix> solver(bal.matrix, true);
  if (solver.info() != Eigen::Success) throw NumericalError("eig: QR iteration did not converge");

  CMatrix vectors = bal.scale.asDiagonal() * solver.eigenvectors();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double len = vectors.col(j).norm();
    if (len > 0.0) vectors.col(j) /= len;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto& values = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index l, Eigen::Index r) { return std::abs(values(l)) > std::abs(values(r)); });

  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.eigenvalues(j) = values(order[static_cast<std::size_t>(j)]);
    out.eigenvectors.col(j) = vectors.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

double max_residual(const CMatrix& a, const SpectralData& spectral) {
  double worst = 0.0;
  for (int j = 0; j < spectral.size(); ++j) {
    const CVector r = a * spectral.eigenvectors.col(j) - spectral.eigenvalues(j) * spectral.eigenvectors.col(j);
    worst = std::max(worst, r.norm());
  }
  return worst;
}

double two_norm(const CMatrix& a) {
  require_finite(a, "two_norm");
  if (a.size() == 0) return 0.0;
  const double fro = a.norm();
  if (fro == 0.0) return 0.0;
  const CMatrix scaled = a / fro;

  // Deterministic start with every component nonzero.
  CVector v(a.cols());
  for (Eigen::Index j = 0; j < v.size(); ++j)
    v(j) = cplx(1.0 + 0.37 * std::sin(1.0 + j), 0.21 * std::cos(2.0 + j));
  v.normalize();

  constexpr int kMaxIterations = 200000;
  double sigma2 = 0.0;
  for (int it = 0; it < kMaxIterations; ++it) {
    const CVector w = scaled * v;
    const CVector s = scaled.adjoint() * w;
    sigma2 = w.squaredNorm();
    if (sigma2 == 0.0) throw NumericalError("two_norm: start vector in the null space");
    const double residual = (s - sigma2 * v).norm();
    v = s / s.norm();
    if (residual <= 1e-9 * sigma2) return fro * std::sqrt((scaled * v).squaredNorm());
  }
  throw NumericalError("two_norm: power iteration stagnated");
}

double inf_norm(const CMatrix& a) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) best = std::max(best, a.row(i).cwiseAbs().sum());
  return best;
}

double max_abs(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double fro_norm(const CMatrix& a) { return a.norm(); }

MatrixNorms norms(const CMatrix& a) { return {two_norm(a), inf_norm(a), fro_norm(a)}; }

}  // namespace bhfm::linalg
