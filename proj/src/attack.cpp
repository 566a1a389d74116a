#include "rfs/attack.hpp"

#include <algorithm>
#include <cmath>

namespace rfs {

Vector attack_signal(const AttackProfile& p, double t, int dim) {
  if (!p.active || t < p.start_time || p.kind == AttackProfile::Kind::None) {
    return Vector::Zero(dim);
  }
  const double tau = t - p.start_time;
  switch (p.kind) {
    case AttackProfile::Kind::Ramp:
      return p.slope * tau;
    case AttackProfile::Kind::Sinusoid:
      return p.amplitude * std::sin(p.omega * tau + p.phase);
    case AttackProfile::Kind::Table: {
      if (p.table_times.empty()) return Vector::Zero(dim);
      if (t <= p.table_times.front()) return p.table_values.front();
      if (t >= p.table_times.back()) return p.table_values.back();
      const auto it = std::upper_bound(p.table_times.begin(), p.table_times.end(), t);
      const size_t k = static_cast<size_t>(it - p.table_times.begin());
      const double t0 = p.table_times[k - 1];
      const double t1 = p.table_times[k];
      const double w = (t - t0) / (t1 - t0);
      return (1.0 - w) * p.table_values[k - 1] + w * p.table_values[k];
    }
    default:
      return Vector::Zero(dim);
  }
}

Vector corrupt(const Vector& y_true, const AttackProfile& p, double t) {
  const Vector a = attack_signal(p, t, static_cast<int>(y_true.size()));
  if (a.size() != y_true.size()) {
    throw ConfigError("corrupt: attack dimension mismatch");
  }
  return y_true + a;
}

}  // namespace rfs
