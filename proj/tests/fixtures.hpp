#pragma once

// Shared six-agent benchmark system used across the test suites. The numbers
// mirror the committed case1/case2 presets.

#include <vector>

#include "rfs/plant.hpp"

namespace fixtures {

using rfs::LeaderModel;
using rfs::LinearPlant;
using rfs::Matrix;
using rfs::Vector;

inline LeaderModel leader() {
  LeaderModel l;
  l.A0 = Matrix(2, 2);
  l.A0 << 1, -3, 2, -1;
  l.C0 = Matrix(2, 2);
  l.C0 << 1, 0, 0, -3;
  return l;
}

inline std::vector<LinearPlant> agents() {
  std::vector<LinearPlant> out;
  const double a2[] = {-1.0, -1.5, -2.0};
  const double b2[] = {1.0, 2.0, 3.0};
  for (int i = 0; i < 3; ++i) {
    LinearPlant p;
    p.agent_id = i + 1;
    p.A = Matrix(2, 2);
    p.A << 1, 1, 0, a2[i];
    p.B = Matrix(2, 1);
    p.B << 0, b2[i];
    p.C = Matrix::Identity(2, 2);
    out.push_back(p);
  }
  const double a3[] = {2.5, 3.0, 3.5};
  const double b3[] = {4.0, 5.0, 6.0};
  const double c3[] = {4.0, 5.0, 6.0};
  for (int i = 0; i < 3; ++i) {
    LinearPlant p;
    p.agent_id = i + 4;
    p.A = Matrix(3, 3);
    p.A << 1, 1, 0, 0, -1, 1, 0, a3[i], c3[i];
    p.B = Matrix(3, 1);
    p.B << 0, 0, b3[i];
    p.C = Matrix(2, 3);
    p.C << 1, 0, 0, 0, 1, 0;
    out.push_back(p);
  }
  return out;
}

inline Matrix formation_A() {
  Matrix A(2, 2);
  A << 0, 1, -1, 0;
  return A;
}

inline Matrix formation_C() {
  Matrix C(2, 2);
  C << 1, 0, -1, 1;
  return C;
}

inline Matrix row(std::initializer_list<double> v) {
  Matrix m(1, static_cast<int>(v.size()));
  int j = 0;
  for (double x : v) m(0, j++) = x;
  return m;
}

/// Reference state-feedback gains (exact-fraction entries where published
/// tables round to a few digits).
inline std::vector<Matrix> reference_K1() {
  return {row({-8.0, -4.0}),
          row({-7.5, -2.75}),
          row({-8.0, -7.0 / 3.0}),
          row({-78.75, -26.875, -5.5}),
          row({-96.0, -29.4, -5.2}),
          row({-115.5, -385.0 / 12.0, -5.0})};
}

inline std::vector<Matrix> reference_K2() {
  return {row({2.0, -12.0}),  row({4.5, -9.0}),   row({6.0, -8.0}),
          row({50.25, -74.25}), row({69.6, -82.8}), row({90.5, -91.5})};
}

inline std::vector<Matrix> reference_K3() {
  return {row({2.0, 4.0}),     row({3.5, 3.0}),
          row({14.0 / 3.0, 8.0 / 3.0}), row({43.5, 25.75}),
          row({58.8, 28.4}),   row({76.0, 187.0 / 6.0})};
}

inline std::vector<Matrix> reference_L() {
  std::vector<Matrix> out;
  Matrix L1(2, 2), L2(2, 2), L3(2, 2), L4(3, 2), L5(3, 2), L6(3, 2);
  L1 << 2, 1, 0, 1;
  L2 << 2, 1, 0, 0.5;
  L3 << 2, 1, 0, 0;
  L4 << 4.9998, 0.9927, -0.331, 11.0002, -2.6786, 65.504;
  L5 << 4.9997, 0.993, -0.4036, 12.0003, -3.6811, 83.0059;
  L6 << 4.9995, 0.9933, -0.4811, 13.0005, -4.8797, 102.5079;
  out = {L1, L2, L3, L4, L5, L6};
  return out;
}

inline std::vector<Matrix> reference_M() {
  Matrix Ma(2, 2), Mb(2, 2);
  Ma << -1, 1.3, -0.2, 1;
  Mb << -1, 0.3, -0.2, -1;
  return {Ma, Ma, Ma, Mb, Mb, Mb};
}

}  // namespace fixtures
