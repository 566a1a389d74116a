#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "rfs/protocol.hpp"

using namespace rfs;

namespace {

Digraph chain2() {
  Digraph g;
  g.adjacency = Matrix::Zero(2, 2);
  g.adjacency(1, 0) = 1.0;  // edge 1 -> 2
  Vector b(2);
  b << 1.0, 0.0;  // leader -> 1
  g.leader_links = {b};
  return g;
}

Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) {
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return K;
}

std::mt19937_64 rng(29);

Vector random_vector(int n) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = uni(rng);
  return v;
}

}  // namespace

TEST_CASE("consensus error vanishes at the consensus point") {
  const Digraph g = chain2();
  const Vector x0 = random_vector(2);
  const auto xi = consensus_error({x0, x0}, x0, g);
  CHECK(xi[0].norm() == doctest::Approx(0.0));
  CHECK(xi[1].norm() == doctest::Approx(0.0));
}

TEST_CASE("consensus error on the two-follower chain") {
  const Digraph g = chain2();
  const Vector x0 = random_vector(2);
  const Vector e = random_vector(2);
  const auto xi = consensus_error({x0 + e, x0}, x0, g);
  CHECK((xi[0] - e).norm() < 1e-14);
  CHECK((xi[1] + e).norm() < 1e-14);
}

TEST_CASE("stacked consensus error equals the Kronecker form") {
  const Digraph g = chain2();
  const auto em = exchange_matrix(g);
  const int r = 3;
  const Vector x0 = random_vector(r);
  std::vector<Vector> zetas{random_vector(r), random_vector(r)};
  const auto xi = consensus_error(zetas, x0, g);

  Vector delta(2 * r);
  delta << zetas[0] - x0, zetas[1] - x0;
  const Vector stacked = kron(em.H, Matrix::Identity(r, r)) * delta;
  Vector flat(2 * r);
  flat << xi[0], xi[1];
  CHECK((flat - stacked).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("containment error with one leader equals consensus error") {
  const Digraph g = chain2();
  const Vector x0 = random_vector(2);
  std::vector<Vector> zetas{random_vector(2), random_vector(2)};
  const auto a = consensus_error(zetas, x0, g);
  const auto b = containment_error(zetas, {x0}, g);
  CHECK((a[0] - b[0]).norm() == doctest::Approx(0.0));
  CHECK((a[1] - b[1]).norm() == doctest::Approx(0.0));
}

TEST_CASE("stacked containment error matches the summed exchange form") {
  Digraph g = chain2();
  Vector b2(2);
  b2 << 0.0, 1.0;
  g.leader_links.push_back(b2);  // second leader -> follower 2
  const std::vector<double> gamma{0.5, 0.5};
  const auto mex = multi_leader_exchange(g, gamma);

  const int r = 2;
  std::vector<Vector> zetas{random_vector(r), random_vector(r)};
  std::vector<Vector> leaders{random_vector(r), random_vector(r)};
  const auto xi = containment_error(zetas, leaders, g);

  // vec(xi) = sum_k (H_k x I)(vec(zeta) - 1 x x_k) with H_k = gamma_k L + B_k.
  Vector stacked = Vector::Zero(2 * r);
  for (int k = 0; k < 2; ++k) {
    Vector delta(2 * r);
    delta << zetas[0] - leaders[k], zetas[1] - leaders[k];
    stacked += kron(mex.H_k[k], Matrix::Identity(r, r)) * delta;
  }
  Vector flat(2 * r);
  flat << xi[0], xi[1];
  CHECK((flat - stacked).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("estimator rate reduces to pure consensus decay in the scalar case") {
  // r = 1, A0 = 0, K0 C0 = 1: stacked rate is -H xi.
  const Matrix A0 = Matrix::Zero(1, 1);
  const Matrix K0 = Matrix::Identity(1, 1);
  const Matrix C0 = Matrix::Identity(1, 1);
  const Vector zeta = random_vector(1);
  const Vector xi = random_vector(1);
  const Vector rate = estimator_rate(zeta, xi, A0, K0, C0);
  CHECK(rate(0) == doctest::Approx(-xi(0)));
  CHECK(estimator_rate(zeta, Vector::Zero(1), A0, K0, C0)(0) ==
        doctest::Approx(0.0));
}

TEST_CASE("residual equals Cbar rho identically") {
  const auto plants = fixtures::agents();
  for (const auto& plant : plants) {
    const int n = plant.n();
    const int p = plant.p();
    const Vector x = random_vector(n);
    const Vector xhat = random_vector(n);
    const Vector ya = random_vector(p);
    const Vector yhat_a = random_vector(p);
    const Vector yc = plant.C * x + ya;
    const Vector ytilde = residual(yc, xhat, yhat_a, plant.C);
    const Vector expect = plant.C * (x - xhat) + (ya - yhat_a);
    CHECK((ytilde - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("compensation saturates inside the adaptive bound") {
  CompensationConfig cfg;
  cfg.vartheta0 = Vector::Ones(2);
  const Vector zero = Vector::Zero(2);
  const Vector eps = random_vector(2).cwiseAbs();
  CHECK(compensation(zero, eps, 1.0, cfg).norm() == doctest::Approx(0.0));

  // As the boundary layer decays the compensation approaches +/- epshat.
  Vector rb(2);
  rb << 0.7, -0.4;
  const Vector f = compensation(rb, eps, 40.0, cfg);
  CHECK(f(0) == doctest::Approx(eps(0)).epsilon(1e-10));
  CHECK(f(1) == doctest::Approx(-eps(1)).epsilon(1e-10));

  for (int trial = 0; trial < 50; ++trial) {
    const Vector r = 5.0 * random_vector(2);
    const Vector e = random_vector(2).cwiseAbs();
    const double t = 3.0 * std::abs(random_vector(1)(0));
    const Vector g = compensation(r, e, t, cfg);
    CHECK(g.cwiseAbs().maxCoeff() <= e.cwiseAbs().maxCoeff() + 1e-15);
  }
}

TEST_CASE("boundary-layer inequality holds pointwise") {
  CompensationConfig cfg;
  cfg.vartheta0 = Vector::Ones(1);
  for (int trial = 0; trial < 200; ++trial) {
    const double rb = 10.0 * random_vector(1)(0);
    const double t = 5.0 * std::abs(random_vector(1)(0));
    const double th = std::exp(-t);
    const double lhs = std::abs(rb) - rb * rb / std::sqrt(rb * rb + th * th);
    CHECK(lhs <= th + 1e-15);
    CHECK(lhs >= 0.0);
  }
}

TEST_CASE("adaptive rate is nonnegative and matches the closed form") {
  CompensationConfig cfg;
  cfg.vartheta0 = Vector::Ones(2);
  CHECK(adaptive_rate(Vector::Zero(2), 1.0, cfg).norm() == doctest::Approx(0.0));
  // rho_bar_j = vartheta_j gives rate vartheta_j / sqrt(2).
  const double t = 0.8;
  const double th = std::exp(-t);
  Vector rb(2);
  rb << th, th;
  const Vector rate = adaptive_rate(rb, t, cfg);
  CHECK(rate(0) == doctest::Approx(th / std::sqrt(2.0)));
  for (int trial = 0; trial < 50; ++trial) {
    const Vector r = 5.0 * random_vector(2);
    CHECK(adaptive_rate(r, 1.0, cfg).minCoeff() >= 0.0);
  }
}

TEST_CASE("assembled error dynamics equal the augmented block form") {
  const auto plants = fixtures::agents();
  const auto Ls = fixtures::reference_L();
  const auto Ms = fixtures::reference_M();
  for (size_t i = 0; i < plants.size(); ++i) {
    const auto& plant = plants[i];
    const int n = plant.n();
    const int p = plant.p();
    const Vector x = random_vector(n);
    const Vector xhat = random_vector(n);
    const Vector ya = random_vector(p);
    const Vector yhat_a = random_vector(p);
    const Vector ya_dot = random_vector(p);
    const Vector f = random_vector(p);
    const Vector u = random_vector(plant.m());

    const Vector ytilde = residual(plant.C * x + ya, xhat, yhat_a, plant.C);
    const Vector x_rate = plant.A * x + plant.B * u;
    const Vector xhat_rate = observer_rate(xhat, u, ytilde, plant, Ls[i]);
    const Vector yhat_a_rate = attack_estimator_rate(ytilde, f, Ms[i]);

    Vector rho(n + p), rho_rate(n + p);
    rho << x - xhat, ya - yhat_a;
    rho_rate << x_rate - xhat_rate, ya_dot - yhat_a_rate;

    Matrix A_rho = Matrix::Zero(n + p, n + p);
    A_rho.topLeftCorner(n, n) = plant.A - Ls[i] * plant.C;
    A_rho.topRightCorner(n, p) = -Ls[i];
    A_rho.bottomLeftCorner(p, n) = -Ms[i] * plant.C;
    A_rho.bottomRightCorner(p, p) = -Ms[i];
    Matrix B_rho = Matrix::Zero(n + p, p);
    B_rho.bottomRows(p) = Matrix::Identity(p, p);

    const Vector expect = A_rho * rho + B_rho * (ya_dot - f);
    CHECK((rho_rate - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("control law arithmetic") {
  AgentGainSet g;
  g.K1 = fixtures::row({-8.0, -4.0});
  g.K2 = fixtures::row({2.0, -12.0});
  g.K3 = fixtures::row({2.0, 4.0});
  Vector xhat(2), zero(2);
  xhat << 1.0, 0.0;
  zero.setZero();
  CHECK(control(xhat, zero, zero, g)(0) == doctest::Approx(-8.0));
  CHECK(control(zero, zero, zero, g).norm() == doctest::Approx(0.0));
}
