#include "ubiloc/geometry.hpp"

namespace ubiloc {

double circular_mean(std::span<const double> angles) {
  double s = 0.0, c = 0.0;
  for (double a : angles) {
    s += std::sin(a);
    c += std::cos(a);
  }
  return std::atan2(s, c);
}

double circular_stddev(std::span<const double> angles) {
  if (angles.size() < 2) return 0.0;
  double s = 0.0, c = 0.0;
  for (double a : angles) {
    s += std::sin(a);
    c += std::cos(a);
  }
  const double n = static_cast<double>(angles.size());
  double rbar = std::sqrt(s * s + c * c) / n;
  if (rbar >= 1.0) return 0.0;
  if (rbar < 1e-12) rbar = 1e-12;
  return std::sqrt(-2.0 * std::log(rbar));
}

}  // namespace ubiloc
