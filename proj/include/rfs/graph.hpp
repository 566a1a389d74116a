#pragma once

#include <vector>

#include "rfs/types.hpp"

namespace rfs {

/// Weighted digraph over N followers plus one or more leaders.
/// adjacency(i, j) is the weight of the edge j -> i between followers;
/// leader_links[k](i) is the weight of the edge from leader k to follower i.
/// Leaders have no incoming edges by construction.
struct Digraph {
  Matrix adjacency;                   // N x N, zero diagonal, nonnegative
  std::vector<Vector> leader_links;   // one N-vector per leader

  int n_followers() const { return static_cast<int>(adjacency.rows()); }
  int n_leaders() const { return static_cast<int>(leader_links.size()); }
};

/// H = L + diag(leader links) for the single-leader case.
struct ExchangeMatrix {
  Matrix H;
  int graph_index = -1;
};

/// Diagonal scaling Theta = diag(q), q = H^{-T} 1, with
/// Q = H^T Theta + Theta H certified positive definite.
struct ScalingCertificate {
  Matrix Theta;
  Matrix Q;
  int graph_index = -1;
  double q_min = 0.0;        // smallest entry of q
  double lambda_min_Q = 0.0;
};

/// Constants entering the switched-estimator dwell-time condition.
struct SpectralConstants {
  double mu = 1.0;       // Lyapunov jump factor across switches
  double lambda_m = 0.0; // min over connected graphs of lambda_min(Theta^-1 Q)
  double sigma_m = 0.0;  // max over bad graphs of sigma_max(Phi^-1 H^T Phi + H)
  Matrix Phi;            // average of the Theta_i
};

/// Follower Laplacian: l_ii = sum_j a_ij, l_ij = -a_ij.
Matrix laplacian(const Digraph& g);

/// True iff every follower is reachable from the (single) leader.
bool has_leader_rooted_spanning_tree(const Digraph& g);

/// Multi-leader reachability: every follower is reachable from at least one
/// leader through the union of leader links and follower edges.
bool has_leaders_rooted_reach(const Digraph& g);

/// H = L + B with B = diag(a_i0); requires exactly one leader-link vector.
ExchangeMatrix exchange_matrix(const Digraph& g, int graph_index = -1);

/// Diagonal scaling: q = H^{-T} 1, Theta = diag(q), Q = H^T Theta + Theta H.
/// Throws CertificationError when H is singular or Q is not positive definite.
ScalingCertificate diagonal_scaling(const ExchangeMatrix& em);

/// mu, lambda_m, sigma_m, Phi from the connected-set certificates and the
/// bad-set exchange matrices. sigma_m = 0 when no bad graphs are given.
SpectralConstants spectral_constants(const std::vector<ScalingCertificate>& certs,
                                     const std::vector<ExchangeMatrix>& bad_graphs);

/// Per-leader exchange matrices H_k = gamma_k L + diag(a_ik) and their sum.
/// gamma must be convex weights (sums to 1 within 1e-9).
struct MultiLeaderExchange {
  std::vector<Matrix> H_k;
  Matrix H_sum;
  int graph_index = -1;
};
MultiLeaderExchange multi_leader_exchange(const Digraph& g,
                                          const std::vector<double>& gamma,
                                          int graph_index = -1);

}  // namespace rfs
