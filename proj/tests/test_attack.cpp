#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rfs/attack.hpp"

using namespace rfs;

TEST_CASE("ramp attack grows linearly from its start time") {
  AttackProfile p;
  p.kind = AttackProfile::Kind::Ramp;
  p.start_time = 2.0;
  p.slope = Vector(2);
  p.slope << 0.1, 0.2;

  CHECK(attack_signal(p, 0.0, 2).norm() == doctest::Approx(0.0));
  CHECK(attack_signal(p, 1.999, 2).norm() == doctest::Approx(0.0));
  const Vector a = attack_signal(p, 12.0, 2);
  CHECK(a(0) == doctest::Approx(1.0));
  CHECK(a(1) == doctest::Approx(2.0));
}

TEST_CASE("inactive profiles inject nothing") {
  AttackProfile p;
  p.kind = AttackProfile::Kind::Ramp;
  p.slope = Vector::Ones(2);
  p.active = false;
  CHECK(attack_signal(p, 5.0, 2).norm() == doctest::Approx(0.0));
}

TEST_CASE("sinusoid attack follows amplitude, frequency, and phase") {
  AttackProfile p;
  p.kind = AttackProfile::Kind::Sinusoid;
  p.amplitude = Vector(2);
  p.amplitude << 1.0, -2.0;
  p.omega = 2.0;
  p.phase = M_PI / 2.0;
  const Vector a = attack_signal(p, 0.0, 2);
  CHECK(a(0) == doctest::Approx(1.0));
  CHECK(a(1) == doctest::Approx(-2.0));
  const Vector b = attack_signal(p, M_PI / 4.0, 2);  // sin(pi) = 0
  CHECK(b.norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("table attack interpolates linearly and clamps at the ends") {
  AttackProfile p;
  p.kind = AttackProfile::Kind::Table;
  p.table_times = {0.0, 1.0, 3.0};
  Vector v0(1), v1(1), v2(1);
  v0 << 0.0;
  v1 << 2.0;
  v2 << -2.0;
  p.table_values = {v0, v1, v2};
  CHECK(attack_signal(p, -1.0, 1)(0) == doctest::Approx(0.0));
  CHECK(attack_signal(p, 0.5, 1)(0) == doctest::Approx(1.0));
  CHECK(attack_signal(p, 2.0, 1)(0) == doctest::Approx(0.0));
  CHECK(attack_signal(p, 10.0, 1)(0) == doctest::Approx(-2.0));
}

TEST_CASE("corrupt adds the injected signal to the true output") {
  AttackProfile p;
  p.kind = AttackProfile::Kind::Ramp;
  p.slope = Vector(2);
  p.slope << 0.1, 0.2;
  Vector y(2);
  y << 1.0, -1.0;
  const Vector yc = corrupt(y, p, 10.0);
  CHECK(yc(0) == doctest::Approx(2.0));
  CHECK(yc(1) == doctest::Approx(1.0));
  // None-profile corruption is the identity.
  AttackProfile none;
  CHECK((corrupt(y, none, 10.0) - y).norm() == doctest::Approx(0.0));
}
