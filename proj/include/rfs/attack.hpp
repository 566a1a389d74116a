#pragma once

#include <vector>

#include "rfs/types.hpp"

namespace rfs {

/// Sensor false-data-injection profile for one agent. The injected signal is
/// added to the measured output; it may grow without bound but must have a
/// bounded derivative (ramp and sinusoid satisfy this by construction).
struct AttackProfile {
  enum class Kind { None, Ramp, Sinusoid, Table };

  int agent_id = 0;
  bool active = true;
  Kind kind = Kind::None;
  double start_time = 0.0;

  Vector slope;       // Ramp: y^a(t) = slope * (t - start_time)
  Vector amplitude;   // Sinusoid: amplitude .* sin(omega (t-start) + phase)
  double omega = 0.0;
  double phase = 0.0;

  std::vector<double> table_times;    // Table: linear interpolation
  std::vector<Vector> table_values;
};

/// phi^a * y^a(t); zero before start_time or when inactive.
Vector attack_signal(const AttackProfile& p, double t, int dim);

/// y^c = y + attack_signal.
Vector corrupt(const Vector& y_true, const AttackProfile& p, double t);

}  // namespace rfs
