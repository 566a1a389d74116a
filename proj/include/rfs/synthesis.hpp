#pragma once

#include "rfs/graph.hpp"
#include "rfs/plant.hpp"

namespace rfs {

/// Leader-estimator gain plus its feasibility certificate:
///   P0 A0 + A0^T P0 - C0^T R0^{-1} C0 + Q0 < 0        (margin1 < 0)
///   P0 A0 + A0^T P0 + eps C0^T R0^{-1} C0 - beta P0 < 0 (margin2 < 0)
///   kappa0 in (1/lambda_m, eps/sigma_m), K0 = kappa0 P0^{-1} C0^T R0^{-1}.
struct EstimatorGainCertificate {
  Matrix K0;
  Matrix P0;
  Matrix R0;
  Matrix Q0;
  double epsilon = 0.0;
  double kappa0 = 0.0;
  double alpha = 0.0;   // lambda_min(Q0) / lambda_max(P0)
  double beta = 0.0;    // smallest feasible decay factor for this P0
  double margin1 = 0.0; // max eigenvalue of the first inequality
  double margin2 = 0.0; // max eigenvalue of the second inequality
  double interval_lo = 0.0;  // 1 / lambda_m
  double interval_hi = 0.0;  // eps / sigma_m (infinity when sigma_m = 0)
};

/// All per-agent gains plus the augmented-observer certificate and the
/// feedback maps used to form the adaptive compensation drive signal.
struct AgentGainSet {
  Matrix K1;  // m x n state feedback
  Matrix K2;  // m x r, K2 = U - K1 X
  Matrix K3;  // m x q, K3 = U_h - K1 X_h
  Matrix L;   // n x p observer injection
  Matrix M;   // p x p attack-estimator injection

  Matrix A_rho;  // [[A - L C, -L], [-M C, -M]]
  Matrix B_rho;  // [0; I_p]
  Matrix Cbar;   // [C, I_p]
  Matrix P_rho;  // Lyapunov certificate: A_rho^T P + P A_rho = -Q_rho
  Matrix Q_rho;

  // Compensation drive maps (three realizations; see SimOptions):
  Matrix map_certified;   // p x (n+p), applied to the augmented error rho
  Matrix map_structured;  // p x p, applied to the measurable residual
  Matrix map_projected;   // p x p, applied to the measurable residual

  double closed_loop_abscissa = 0.0;  // max Re eig(A + B K1)
  double observer_abscissa = 0.0;     // max Re eig(A_rho)
};

/// Grid-scan + bisection solver for the estimator-gain inequalities. A
/// quadratic regularization w I is added to make the matrix equation solvable
/// by a Riccati branch; candidates over (w, slack, branch) are screened for
/// feasibility and the one maximizing alpha/beta is kept. beta is then refined
/// by bisection (1e-4 relative) for the selected P0.
EstimatorGainCertificate design_estimator_gain(const LeaderModel& leader,
                                               const SpectralConstants& sc,
                                               const Matrix& R0, const Matrix& Q0,
                                               double epsilon);

/// Containment variant: same construction with the spectral constants taken
/// over the summed per-leader exchange matrices.
inline EstimatorGainCertificate design_containment_estimator_gain(
    const LeaderModel& leader, const SpectralConstants& sc_bar, const Matrix& R0,
    const Matrix& Q0, double epsilon) {
  return design_estimator_gain(leader, sc_bar, R0, Q0, epsilon);
}

/// LQ state feedback with a spectral shift: returns K1 with
/// max Re eig(A + B K1) <= -margin.
Matrix design_state_feedback(const LinearPlant& plant, double margin = 0.5);

/// K2 = U - K1 X and K3 = U_h - K1 X_h (exact arithmetic).
std::pair<Matrix, Matrix> coupling_gains(const RegulatorSolution& reg,
                                         const Matrix& X_h, const Matrix& U_h,
                                         const Matrix& K1);

/// True iff (A, C A) is observable (rank of the observability matrix is n);
/// equivalent to observability of the augmented pair ([A,0;0,0], [C, I]).
bool check_augmented_observability(const LinearPlant& plant);

/// Filter-Riccati observer design for the augmented pair, returning (L, M)
/// with the augmented error matrix Hurwitz with the given margin.
std::pair<Matrix, Matrix> design_observer_gains(const LinearPlant& plant,
                                                double margin = 0.5);

/// Assembles and certifies a full AgentGainSet from explicit gains: checks
/// Hurwitz spectra, solves the observer Lyapunov equation with Q_rho = I, and
/// builds the three compensation drive maps.
AgentGainSet certify_agent_gains(const LinearPlant& plant,
                                 const RegulatorSolution& reg, const Matrix& X_h,
                                 const Matrix& U_h, const Matrix& K1,
                                 const Matrix& L, const Matrix& M);

}  // namespace rfs
