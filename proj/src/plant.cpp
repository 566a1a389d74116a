#include "rfs/plant.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace rfs {

namespace {

Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return K;
}

Vector vec(const Matrix& M) {
  return Eigen::Map<const Vector>(M.data(), M.size());
}

}  // namespace

RegulatorSolution solve_regulator(const LinearPlant& plant, const Matrix& A_ref,
                                  const Matrix& C_ref) {
  const int n = plant.n();
  const int m = plant.m();
  const int p = plant.p();
  const int r = static_cast<int>(A_ref.rows());
  if (C_ref.rows() != p || C_ref.cols() != r) {
    throw ConfigError("solve_regulator: reference output dimensions mismatch");
  }
  const int nx = n * r;
  const int nu = m * r;

  // Rows 1: vec(X A_ref - A X - B U) = 0, rows 2: vec(C X) = vec(C_ref).
  Matrix M = Matrix::Zero(nx + p * r, nx + nu);
  M.topLeftCorner(nx, nx) =
      kron(A_ref.transpose(), Matrix::Identity(n, n)) - kron(Matrix::Identity(r, r), plant.A);
  M.topRightCorner(nx, nu) = -kron(Matrix::Identity(r, r), plant.B);
  M.bottomLeftCorner(p * r, nx) = kron(Matrix::Identity(r, r), plant.C);

  Vector rhs = Vector::Zero(nx + p * r);
  rhs.tail(p * r) = vec(C_ref);

  const Vector sol = M.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);

  RegulatorSolution out;
  out.X = Eigen::Map<const Matrix>(sol.data(), n, r);
  out.U = Eigen::Map<const Matrix>(sol.data() + nx, m, r);
  out.residual_primary = (out.X * A_ref - plant.A * out.X - plant.B * out.U).norm();
  out.residual_output = (C_ref - plant.C * out.X).norm();
  if (out.residual_primary > kResidualTol || out.residual_output > kResidualTol) {
    throw SolvabilityError("regulator equations are inconsistent for agent " +
                           std::to_string(plant.agent_id));
  }
  return out;
}

Vector formation_state(const FormationShape& shape, double t) {
  const Matrix E = (shape.A_h * t).exp();
  return E * shape.h0;
}

}  // namespace rfs
