#pragma once

// Dense complex linear algebra used by the forward solver and the imaging
// pipeline. LU and the Schur-based eigensolver are Eigen's; balancing, the
// spectral norm and the diagnostics are ours.

#include <vector>

#include <Eigen/LU>

#include "bhfm/types.hpp"

namespace bhfm::linalg {

// Systems with an estimated 1-norm condition number above this are flagged.
inline constexpr double kConditionWarning = 1e8;

class LuFactorization {
 public:
  explicit LuFactorization(const CMatrix& a);

  CMatrix solve(const CMatrix& b) const;
  CVector solve(const CVector& b) const;

  int size() const { return static_cast<int>(lu_.rows()); }
  // 1-norm condition number estimate ||A||_1 ||A^-1||_1.
  double condition() const { return condition_; }
  bool ill_conditioned() const { return condition_ > kConditionWarning; }
  cplx determinant() const { return lu_.determinant(); }

 private:
  Eigen::PartialPivLU<CMatrix> lu_;
  double condition_ = 0.0;
};

CMatrix lu_solve(const CMatrix& a, const CMatrix& b);
CVector lu_solve(const CMatrix& a, const CVector& b);

// Eigenpairs sorted by descending |lambda|; eigenvectors are unit columns.
struct SpectralData {
  CVector eigenvalues;
  CMatrix eigenvectors;

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

// Full eigendecomposition of a general complex matrix: diagonal balancing,
// Hessenberg reduction and shifted QR on the complex Schur form.
SpectralData eig(const CMatrix& a);

// Largest ||A v_j - lambda_j v_j||_2 over all pairs.
double max_residual(const CMatrix& a, const SpectralData& spectral);

// Diagonal similarity D^-1 A D with row and column norms roughly equal.
struct Balanced {
  CMatrix matrix;
  Eigen::VectorXd scale;  // diagonal of D
};
Balanced balance(const CMatrix& a);

struct MatrixNorms {
  double two_norm = 0.0;
  double inf_norm = 0.0;
  double fro_norm = 0.0;
};

// Largest singular value by power iteration on A^* A.
double two_norm(const CMatrix& a);
double inf_norm(const CMatrix& a);
// Largest entry modulus.
double max_abs(const CMatrix& a);
double fro_norm(const CMatrix& a);
MatrixNorms norms(const CMatrix& a);

}  // namespace bhfm::linalg
