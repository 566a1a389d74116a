#include "rfs/care.hpp"

#include <complex>
#include <vector>

namespace rfs {

Matrix care_branch(const Matrix& A, const Matrix& W, const Matrix& Q, bool stable) {
  const int n = static_cast<int>(A.rows());
  Matrix H(2 * n, 2 * n);
  H.topLeftCorner(n, n) = A;
  H.topRightCorner(n, n) = -W;
  H.bottomLeftCorner(n, n) = -Q;
  H.bottomRightCorner(n, n) = -A.transpose();

  Eigen::EigenSolver<Matrix> es(H);
  if (es.info() != Eigen::Success) {
    throw SolvabilityError("care_branch: eigendecomposition failed");
  }
  std::vector<int> sel;
  for (int i = 0; i < 2 * n; ++i) {
    if ((es.eigenvalues()(i).real() < 0.0) == stable) sel.push_back(i);
  }
  if (static_cast<int>(sel.size()) != n) {
    throw SolvabilityError("care_branch: requested invariant subspace does not exist");
  }
  Eigen::MatrixXcd U(2 * n, n);
  for (int k = 0; k < n; ++k) U.col(k) = es.eigenvectors().col(sel[k]);

  const Eigen::MatrixXcd U1 = U.topRows(n);
  const Eigen::MatrixXcd U2 = U.bottomRows(n);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(U1);
  if (!lu.isInvertible()) {
    throw SolvabilityError("care_branch: singular subspace basis");
  }
  const Matrix X = (U2 * lu.inverse()).real();
  return 0.5 * (X + X.transpose());
}

Matrix care_stabilizing(const Matrix& A, const Matrix& B, const Matrix& Q,
                        const Matrix& R) {
  const Matrix W = B * R.llt().solve(B.transpose());
  return care_branch(A, W, Q, /*stable=*/true);
}

Matrix solve_lyapunov(const Matrix& A, const Matrix& Q) {
  const int n = static_cast<int>(A.rows());
  // vec(A^T P + P A) = (I (x) A^T + A^T (x) I) vec(P) = -vec(Q)
  Matrix K = Matrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    K.block(i * n, i * n, n, n) += A.transpose();
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        K(j * n + k, i * n + k) += A(i, j);
      }
    }
  }
  const Vector q = Eigen::Map<const Vector>(Q.data(), n * n);
  Eigen::FullPivLU<Matrix> lu(K);
  if (!lu.isInvertible()) {
    throw SolvabilityError("solve_lyapunov: operator is singular");
  }
  const Vector p = lu.solve(-q);
  Matrix P = Eigen::Map<const Matrix>(p.data(), n, n);
  return 0.5 * (P + P.transpose());
}

double spectral_abscissa(const Matrix& A) {
  Eigen::EigenSolver<Matrix> es(A, /*computeEigenvectors=*/false);
  return es.eigenvalues().real().maxCoeff();
}

double min_eig_sym(const Matrix& S) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eig_sym(const Matrix& S) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace rfs
