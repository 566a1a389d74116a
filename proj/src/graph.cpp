#include "rfs/graph.hpp"

#include <cmath>
#include <numeric>
#include <queue>

namespace rfs {

Matrix laplacian(const Digraph& g) {
  const int n = g.n_followers();
  Matrix L = -g.adjacency;
  for (int i = 0; i < n; ++i) {
    L(i, i) = g.adjacency.row(i).sum();
  }
  return L;
}

namespace {

// BFS over follower edges from the given seed set (follower indices).
std::vector<bool> reach_from(const Digraph& g, const std::vector<int>& seeds) {
  const int n = g.n_followers();
  std::vector<bool> seen(n, false);
  std::queue<int> frontier;
  for (int s : seeds) {
    if (!seen[s]) {
      seen[s] = true;
      frontier.push(s);
    }
  }
  while (!frontier.empty()) {
    const int j = frontier.front();
    frontier.pop();
    for (int i = 0; i < n; ++i) {
      if (!seen[i] && g.adjacency(i, j) > 0.0) {  // edge j -> i
        seen[i] = true;
        frontier.push(i);
      }
    }
  }
  return seen;
}

std::vector<int> informed_followers(const Digraph& g) {
  std::vector<int> seeds;
  for (int i = 0; i < g.n_followers(); ++i) {
    for (const Vector& links : g.leader_links) {
      if (links(i) > 0.0) {
        seeds.push_back(i);
        break;
      }
    }
  }
  return seeds;
}

}  // namespace

bool has_leader_rooted_spanning_tree(const Digraph& g) {
  if (g.n_leaders() != 1) {
    throw ConfigError("spanning-tree test expects a single leader");
  }
  const auto seen = reach_from(g, informed_followers(g));
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

bool has_leaders_rooted_reach(const Digraph& g) {
  const auto seen = reach_from(g, informed_followers(g));
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

ExchangeMatrix exchange_matrix(const Digraph& g, int graph_index) {
  if (g.n_leaders() != 1) {
    throw ConfigError("exchange_matrix expects a single leader-link vector");
  }
  ExchangeMatrix em;
  em.H = laplacian(g);
  em.H += Matrix(g.leader_links[0].asDiagonal());
  em.graph_index = graph_index;
  return em;
}

ScalingCertificate diagonal_scaling(const ExchangeMatrix& em) {
  const int n = static_cast<int>(em.H.rows());
  Eigen::FullPivLU<Matrix> lu(em.H.transpose());
  if (!lu.isInvertible()) {
    throw CertificationError("exchange matrix is singular (no spanning tree?)");
  }
  const Vector q = lu.solve(Vector::Ones(n));
  ScalingCertificate cert;
  cert.graph_index = em.graph_index;
  cert.Theta = Matrix(q.asDiagonal());
  cert.Q = em.H.transpose() * cert.Theta + cert.Theta * em.H;
  cert.q_min = q.minCoeff();
  Eigen::SelfAdjointEigenSolver<Matrix> es(cert.Q);
  cert.lambda_min_Q = es.eigenvalues().minCoeff();
  if (cert.q_min <= kPdTolerance || cert.lambda_min_Q <= kPdTolerance) {
    throw CertificationError("scaling certificate is not positive definite");
  }
  return cert;
}

SpectralConstants spectral_constants(const std::vector<ScalingCertificate>& certs,
                                     const std::vector<ExchangeMatrix>& bad_graphs) {
  if (certs.empty()) {
    throw ConfigError("spectral_constants: connected set is empty");
  }
  SpectralConstants sc;
  const int n = static_cast<int>(certs.front().Theta.rows());

  // mu = max over connected graphs of the Theta condition number; exactly 1
  // when only a single connected graph is used.
  if (certs.size() == 1) {
    sc.mu = 1.0;
  } else {
    sc.mu = 1.0;
    for (const auto& c : certs) {
      const Vector d = c.Theta.diagonal();
      sc.mu = std::max(sc.mu, d.maxCoeff() / d.minCoeff());
    }
  }

  // lambda_m via the symmetric similarity Theta^{-1/2} Q Theta^{-1/2}.
  sc.lambda_m = std::numeric_limits<double>::infinity();
  for (const auto& c : certs) {
    const Vector d = c.Theta.diagonal();
    const Vector dinv_sqrt = d.cwiseSqrt().cwiseInverse();
    const Matrix S = dinv_sqrt.asDiagonal() * c.Q * dinv_sqrt.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Matrix> es(S);
    sc.lambda_m = std::min(sc.lambda_m, es.eigenvalues().minCoeff());
  }

  sc.Phi = Matrix::Zero(n, n);
  for (const auto& c : certs) sc.Phi += c.Theta;
  sc.Phi /= static_cast<double>(certs.size());

  sc.sigma_m = 0.0;
  const Vector phi = sc.Phi.diagonal();
  for (const auto& em : bad_graphs) {
    const Matrix S =
        Matrix(phi.cwiseInverse().asDiagonal()) * em.H.transpose() * Matrix(phi.asDiagonal()) + em.H;
    Eigen::JacobiSVD<Matrix> svd(S);
    sc.sigma_m = std::max(sc.sigma_m, svd.singularValues().maxCoeff());
  }
  return sc;
}

MultiLeaderExchange multi_leader_exchange(const Digraph& g,
                                          const std::vector<double>& gamma,
                                          int graph_index) {
  if (gamma.size() != static_cast<size_t>(g.n_leaders())) {
    throw ConfigError("multi_leader_exchange: one weight per leader required");
  }
  const double sum = std::accumulate(gamma.begin(), gamma.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("multi_leader_exchange: weights must sum to 1");
  }
  MultiLeaderExchange mle;
  mle.graph_index = graph_index;
  const Matrix L = laplacian(g);
  mle.H_sum = Matrix::Zero(L.rows(), L.cols());
  for (size_t k = 0; k < gamma.size(); ++k) {
    Matrix Hk = gamma[k] * L;
    Hk += Matrix(g.leader_links[k].asDiagonal());
    mle.H_sum += Hk;
    mle.H_k.push_back(std::move(Hk));
  }
  return mle;
}

}  // namespace rfs
