#pragma once

#include "rfs/types.hpp"

namespace rfs {

/// One heterogeneous agent: xdot = A x + B u, y = C x.
struct LinearPlant {
  Matrix A;  // n x n
  Matrix B;  // n x m
  Matrix C;  // p x n
  int agent_id = 0;

  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(B.cols()); }
  int p() const { return static_cast<int>(C.rows()); }
};

/// Autonomous reference generator: x0dot = A0 x0, y0 = C0 x0.
struct LeaderModel {
  Matrix A0;  // r x r
  Matrix C0;  // p x r

  int r() const { return static_cast<int>(A0.rows()); }
  int p() const { return static_cast<int>(C0.rows()); }
};

/// Solution of the regulator equations X A0 = A X + B U, C0 = C X.
struct RegulatorSolution {
  Matrix X;  // n x r
  Matrix U;  // m x r
  double residual_primary = 0.0;  // ||X A0 - A X - B U||_F
  double residual_output = 0.0;   // ||C0 - C X||_F
};

/// Formation generator hdot = A_h h, y_h = C_h h, plus its regulator solution.
struct FormationShape {
  Matrix A_h;  // q x q
  Matrix C_h;  // p x q
  Matrix X_h;  // n x q
  Matrix U_h;  // m x q
  Vector h0;   // initial formation state

  int q() const { return static_cast<int>(A_h.rows()); }
};

/// Minimum-norm solve of the regulator equations via Kronecker vectorization.
/// Throws SolvabilityError when the residuals exceed the tolerance.
RegulatorSolution solve_regulator(const LinearPlant& plant, const Matrix& A_ref,
                                  const Matrix& C_ref);

inline RegulatorSolution solve_regulator(const LinearPlant& plant,
                                         const LeaderModel& leader) {
  return solve_regulator(plant, leader.A0, leader.C0);
}

inline RegulatorSolution solve_formation_regulator(const LinearPlant& plant,
                                                   const Matrix& A_h,
                                                   const Matrix& C_h) {
  return solve_regulator(plant, A_h, C_h);
}

/// h(t) = expm(A_h t) h0 (matrix-exponential diagnostic path; the closed-loop
/// simulator integrates h alongside everything else).
Vector formation_state(const FormationShape& shape, double t);

}  // namespace rfs
