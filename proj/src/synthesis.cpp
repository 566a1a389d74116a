#include "rfs/synthesis.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "rfs/care.hpp"

namespace rfs {

namespace {

// Smallest beta > 0 with max_eig(P A + A^T P + eps G - beta P) < 0, by
// bisection to 1e-4 relative. P must be positive definite.
double bisect_beta(const Matrix& P, const Matrix& A, const Matrix& G, double eps) {
  const Matrix N = P * A + A.transpose() * P + eps * G;
  auto margin = [&](double beta) { return max_eig_sym(N - beta * P); };
  double lo = 0.0;
  double hi = 1.0;
  while (margin(hi) >= 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw SolvabilityError("bisect_beta: no feasible beta");
  }
  while ((hi - lo) > 1e-4 * hi) {
    const double mid = 0.5 * (lo + hi);
    (margin(mid) < 0.0 ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

EstimatorGainCertificate design_estimator_gain(const LeaderModel& leader,
                                               const SpectralConstants& sc,
                                               const Matrix& R0, const Matrix& Q0,
                                               double epsilon) {
  const Matrix& A0 = leader.A0;
  const Matrix& C0 = leader.C0;
  const int r = leader.r();
  const Matrix G = C0.transpose() * R0.llt().solve(C0);  // C0^T R0^{-1} C0

  struct Candidate {
    Matrix P;
    double alpha, beta, score;
  };
  std::optional<Candidate> best;

  for (double w : {1.0, 0.5, 0.2, 0.1, 0.05, 0.02, 0.01}) {
    for (double slack : {1e-6, 0.01, 0.05, 0.2, 0.5}) {
      for (bool stable : {false, true}) {
        Matrix X;
        try {
          X = care_branch(A0, w * Matrix::Identity(r, r),
                          G - Q0 - slack * Matrix::Identity(r, r), stable);
        } catch (const SolvabilityError&) {
          continue;
        }
        const Matrix P = -X;
        if (min_eig_sym(P) <= kPdTolerance) continue;
        const Matrix ineq1 = P * A0 + A0.transpose() * P - G + Q0;
        if (max_eig_sym(ineq1) >= -kPdTolerance) continue;
        const double alpha = min_eig_sym(Q0) / max_eig_sym(P);
        double beta;
        try {
          beta = bisect_beta(P, A0, G, epsilon);
        } catch (const SolvabilityError&) {
          continue;
        }
        const double score = alpha / beta;
        if (!best || score > best->score) {
          best = Candidate{P, alpha, beta, score};
        }
      }
    }
  }
  if (!best) {
    throw SolvabilityError("design_estimator_gain: no feasible P0 found "
                           "(leader may not be detectable)");
  }

  EstimatorGainCertificate cert;
  cert.P0 = best->P;
  cert.R0 = R0;
  cert.Q0 = Q0;
  cert.epsilon = epsilon;
  cert.alpha = best->alpha;
  cert.beta = best->beta;
  cert.interval_lo = 1.0 / sc.lambda_m;
  cert.interval_hi = sc.sigma_m > 0.0 ? epsilon / sc.sigma_m
                                      : std::numeric_limits<double>::infinity();
  if (sc.sigma_m > 0.0) {
    if (cert.interval_lo >= cert.interval_hi) {
      throw CertificationError("design_estimator_gain: empty gain interval "
                               "(raise epsilon or change the topology set)");
    }
    cert.kappa0 = std::sqrt(cert.interval_lo * cert.interval_hi);
  } else {
    cert.kappa0 = 2.0 * cert.interval_lo;
  }
  cert.K0 = cert.kappa0 * cert.P0.llt().solve(C0.transpose()) *
            R0.llt().solve(Matrix::Identity(C0.rows(), C0.rows()));
  cert.margin1 = max_eig_sym(cert.P0 * A0 + A0.transpose() * cert.P0 - G + Q0);
  cert.margin2 = max_eig_sym(cert.P0 * A0 + A0.transpose() * cert.P0 +
                             epsilon * G - cert.beta * cert.P0);
  if (cert.margin1 >= -kPdTolerance || cert.margin2 >= 0.0) {
    throw CertificationError("design_estimator_gain: certificate inequalities "
                             "failed re-verification");
  }
  return cert;
}

Matrix design_state_feedback(const LinearPlant& plant, double margin) {
  const int n = plant.n();
  const int m = plant.m();
  Matrix X;
  try {
    X = care_stabilizing(plant.A + margin * Matrix::Identity(n, n), plant.B,
                         Matrix::Identity(n, n), Matrix::Identity(m, m));
  } catch (const SolvabilityError&) {
    throw SolvabilityError("design_state_feedback: plant is not stabilizable");
  }
  const Matrix K1 = -plant.B.transpose() * X;
  if (spectral_abscissa(plant.A + plant.B * K1) > -margin + 1e-9) {
    throw CertificationError("design_state_feedback: margin not met");
  }
  return K1;
}

std::pair<Matrix, Matrix> coupling_gains(const RegulatorSolution& reg,
                                         const Matrix& X_h, const Matrix& U_h,
                                         const Matrix& K1) {
  return {reg.U - K1 * reg.X, U_h - K1 * X_h};
}

bool check_augmented_observability(const LinearPlant& plant) {
  const int n = plant.n();
  const Matrix CA = plant.C * plant.A;
  Matrix obs(n * plant.p(), n);
  Matrix Ak = Matrix::Identity(n, n);
  for (int k = 0; k < n; ++k) {
    obs.middleRows(k * plant.p(), plant.p()) = CA * Ak;
    Ak = plant.A * Ak;
  }
  Eigen::FullPivLU<Matrix> lu(obs);
  return lu.rank() == n;
}

std::pair<Matrix, Matrix> design_observer_gains(const LinearPlant& plant,
                                                double margin) {
  if (!check_augmented_observability(plant)) {
    throw SolvabilityError("design_observer_gains: (A, CA) not observable");
  }
  const int n = plant.n();
  const int p = plant.p();
  Matrix Abar = Matrix::Zero(n + p, n + p);
  Abar.topLeftCorner(n, n) = plant.A;
  Matrix Cbar(p, n + p);
  Cbar << plant.C, Matrix::Identity(p, p);

  // Filter Riccati with a spectral shift on the augmented pair.
  const Matrix S =
      care_stabilizing(Abar.transpose() + margin * Matrix::Identity(n + p, n + p),
                       Cbar.transpose(), Matrix::Identity(n + p, n + p),
                       Matrix::Identity(p, p));
  const Matrix Kf = (Cbar * S).transpose();
  return {Kf.topRows(n), Kf.bottomRows(p)};
}

AgentGainSet certify_agent_gains(const LinearPlant& plant,
                                 const RegulatorSolution& reg, const Matrix& X_h,
                                 const Matrix& U_h, const Matrix& K1,
                                 const Matrix& L, const Matrix& M) {
  const int n = plant.n();
  const int p = plant.p();
  AgentGainSet g;
  g.K1 = K1;
  g.L = L;
  g.M = M;
  std::tie(g.K2, g.K3) = coupling_gains(reg, X_h, U_h, K1);

  g.A_rho = Matrix::Zero(n + p, n + p);
  g.A_rho.topLeftCorner(n, n) = plant.A - L * plant.C;
  g.A_rho.topRightCorner(n, p) = -L;
  g.A_rho.bottomLeftCorner(p, n) = -M * plant.C;
  g.A_rho.bottomRightCorner(p, p) = -M;
  g.B_rho = Matrix::Zero(n + p, p);
  g.B_rho.bottomRows(p) = Matrix::Identity(p, p);
  g.Cbar = Matrix(p, n + p);
  g.Cbar << plant.C, Matrix::Identity(p, p);

  g.closed_loop_abscissa = spectral_abscissa(plant.A + plant.B * K1);
  g.observer_abscissa = spectral_abscissa(g.A_rho);
  if (g.closed_loop_abscissa >= 0.0) {
    throw CertificationError("agent " + std::to_string(plant.agent_id) +
                             ": A + B K1 is not Hurwitz");
  }
  if (g.observer_abscissa >= 0.0) {
    throw CertificationError("agent " + std::to_string(plant.agent_id) +
                             ": augmented observer matrix is not Hurwitz");
  }

  g.Q_rho = Matrix::Identity(n + p, n + p);
  g.P_rho = solve_lyapunov(g.A_rho, g.Q_rho);
  if (min_eig_sym(g.P_rho) <= kPdTolerance) {
    throw CertificationError("agent " + std::to_string(plant.agent_id) +
                             ": observer Lyapunov certificate failed");
  }

  // Certified drive: rho_bar = B_rho^T P_rho rho (the Lyapunov-consistent
  // signal; requires the augmented error itself).
  g.map_certified = g.B_rho.transpose() * g.P_rho;

  // Structured drive: least-squares fit of a symmetric P with
  // S = Cbar^T Cbar P Cbar^T Cbar approximating the Lyapunov solution, then
  // rho_bar = (Cbar P Cbar^T) ytilde. The fit is generally rank-deficient,
  // which is exactly why this realization is kept behind a switch.
  {
    const int d = n + p;
    const Matrix CtC = g.Cbar.transpose() * g.Cbar;
    // Minimize || A_rho^T (CtC P CtC) + (CtC P CtC) A_rho + I ||_F over P.
    Matrix Amap = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        // d vec(S)/d vec(P) with S = CtC P CtC: kron(CtC^T, CtC) = kron(CtC, CtC)
        Amap.block(i * d, j * d, d, d) = CtC(j, i) * CtC;
      }
    }
    Matrix Lyap = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        Lyap.block(i * d, j * d, d, d) += g.A_rho(j, i) * Matrix::Identity(d, d);
      }
      Lyap.block(i * d, i * d, d, d) += g.A_rho.transpose();
    }
    const Matrix full = Lyap * Amap;
    const Vector rhs = -Eigen::Map<const Vector>(
        Matrix(Matrix::Identity(d, d)).eval().data(), d * d);
    const Vector pvec = full.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
    Matrix Pfit = Eigen::Map<const Matrix>(pvec.data(), d, d);
    Pfit = 0.5 * (Pfit + Pfit.transpose()).eval();
    g.map_structured = g.Cbar * Pfit * g.Cbar.transpose();
  }

  // Projected drive: rho_bar = B_rho^T P_rho Cbar^+ ytilde with the
  // right pseudo-inverse of Cbar.
  {
    const Matrix CCt = g.Cbar * g.Cbar.transpose();
    const Matrix Cpinv = g.Cbar.transpose() * CCt.llt().solve(Matrix::Identity(p, p));
    g.map_projected = g.B_rho.transpose() * g.P_rho * Cpinv;
  }
  return g;
}

}  // namespace rfs
