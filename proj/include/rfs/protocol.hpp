#pragma once

#include <vector>

#include "rfs/graph.hpp"
#include "rfs/plant.hpp"
#include "rfs/synthesis.hpp"

namespace rfs {

/// Per-agent leader-estimator state.
struct EstimatorState {
  Vector zeta;  // r-vector
};

/// Per-agent resilient-observer state.
struct ObserverState {
  Vector xhat;    // n-vector
  Vector yhat_a;  // p-vector, attack estimate
  Vector epshat;  // p-vector, adaptive bound estimate (nondecreasing)
};

/// Boundary-layer decay rates: vartheta_j(t) = exp(-vartheta0_j t).
struct CompensationConfig {
  Vector vartheta0;  // strictly positive p-vector
};

/// xi_i = sum_j a_ij (zeta_i - zeta_j) + a_i0 (zeta_i - x0), one per follower.
std::vector<Vector> consensus_error(const std::vector<Vector>& zetas,
                                    const Vector& x0, const Digraph& g);

/// Containment variant: xi_i = sum_j a_ij (zeta_i - zeta_j)
///                             + sum_k a_ik (zeta_i - x_k).
/// With one leader this equals consensus_error exactly.
std::vector<Vector> containment_error(const std::vector<Vector>& zetas,
                                      const std::vector<Vector>& leader_states,
                                      const Digraph& g);

/// dzeta/dt = A0 zeta - K0 C0 xi.
Vector estimator_rate(const Vector& zeta, const Vector& xi, const Matrix& A0,
                      const Matrix& K0, const Matrix& C0);

/// ytilde = y_corrupted - C xhat - yhat_a (equals Cbar rho identically).
Vector residual(const Vector& y_corrupted, const Vector& xhat,
                const Vector& yhat_a, const Matrix& C);

/// f_j = rho_bar_j / sqrt(rho_bar_j^2 + vartheta_j(t)^2) * epshat_j.
Vector compensation(const Vector& rho_bar, const Vector& epshat, double t,
                    const CompensationConfig& cfg);

/// depshat_j/dt = rho_bar_j^2 / sqrt(rho_bar_j^2 + vartheta_j(t)^2) >= 0.
Vector adaptive_rate(const Vector& rho_bar, double t,
                     const CompensationConfig& cfg);

/// dxhat/dt = A xhat + B u + L ytilde.
Vector observer_rate(const Vector& xhat, const Vector& u, const Vector& ytilde,
                     const LinearPlant& plant, const Matrix& L);

/// dyhat_a/dt = M ytilde + f.
Vector attack_estimator_rate(const Vector& ytilde, const Vector& f,
                             const Matrix& M);

/// u = K1 xhat + K2 zeta + K3 h.
Vector control(const Vector& xhat, const Vector& zeta, const Vector& h,
               const AgentGainSet& gains);

}  // namespace rfs
