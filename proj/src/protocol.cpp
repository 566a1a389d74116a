#include "rfs/protocol.hpp"

#include <cmath>

namespace rfs {

std::vector<Vector> consensus_error(const std::vector<Vector>& zetas,
                                    const Vector& x0, const Digraph& g) {
  const int N = g.n_followers();
  if (static_cast<int>(zetas.size()) != N || g.n_leaders() != 1) {
    throw ConfigError("consensus_error: size mismatch");
  }
  const Vector& b = g.leader_links[0];
  std::vector<Vector> xi(N);
  for (int i = 0; i < N; ++i) {
    Vector acc = Vector::Zero(x0.size());
    for (int j = 0; j < N; ++j) {
      const double a = g.adjacency(i, j);
      if (a != 0.0) acc += a * (zetas[i] - zetas[j]);
    }
    acc += b(i) * (zetas[i] - x0);
    xi[i] = acc;
  }
  return xi;
}

std::vector<Vector> containment_error(const std::vector<Vector>& zetas,
                                      const std::vector<Vector>& leader_states,
                                      const Digraph& g) {
  const int N = g.n_followers();
  const int M = g.n_leaders();
  if (static_cast<int>(zetas.size()) != N ||
      static_cast<int>(leader_states.size()) != M) {
    throw ConfigError("containment_error: size mismatch");
  }
  std::vector<Vector> xi(N);
  for (int i = 0; i < N; ++i) {
    Vector acc = Vector::Zero(leader_states[0].size());
    for (int j = 0; j < N; ++j) {
      const double a = g.adjacency(i, j);
      if (a != 0.0) acc += a * (zetas[i] - zetas[j]);
    }
    for (int k = 0; k < M; ++k) {
      const double a = g.leader_links[k](i);
      if (a != 0.0) acc += a * (zetas[i] - leader_states[k]);
    }
    xi[i] = acc;
  }
  return xi;
}

Vector estimator_rate(const Vector& zeta, const Vector& xi, const Matrix& A0,
                      const Matrix& K0, const Matrix& C0) {
  return A0 * zeta - K0 * (C0 * xi);
}

Vector residual(const Vector& y_corrupted, const Vector& xhat,
                const Vector& yhat_a, const Matrix& C) {
  return y_corrupted - C * xhat - yhat_a;
}

Vector compensation(const Vector& rho_bar, const Vector& epshat, double t,
                    const CompensationConfig& cfg) {
  Vector f(rho_bar.size());
  for (int j = 0; j < rho_bar.size(); ++j) {
    const double th = std::exp(-cfg.vartheta0(j) * t);
    f(j) = rho_bar(j) / std::sqrt(rho_bar(j) * rho_bar(j) + th * th) * epshat(j);
  }
  return f;
}

Vector adaptive_rate(const Vector& rho_bar, double t,
                     const CompensationConfig& cfg) {
  Vector rate(rho_bar.size());
  for (int j = 0; j < rho_bar.size(); ++j) {
    const double th = std::exp(-cfg.vartheta0(j) * t);
    rate(j) = rho_bar(j) * rho_bar(j) /
              std::sqrt(rho_bar(j) * rho_bar(j) + th * th);
  }
  return rate;
}

Vector observer_rate(const Vector& xhat, const Vector& u, const Vector& ytilde,
                     const LinearPlant& plant, const Matrix& L) {
  return plant.A * xhat + plant.B * u + L * ytilde;
}

Vector attack_estimator_rate(const Vector& ytilde, const Vector& f,
                             const Matrix& M) {
  return M * ytilde + f;
}

Vector control(const Vector& xhat, const Vector& zeta, const Vector& h,
               const AgentGainSet& gains) {
  return gains.K1 * xhat + gains.K2 * zeta + gains.K3 * h;
}

}  // namespace rfs
