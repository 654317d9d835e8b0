#include "ubiloc/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ubiloc/error.hpp"

namespace ubiloc {

ErrorSeries compute_errors(std::span<const PairedFix> paired) {
  if (paired.empty()) throw Error("compute_errors: empty input");
  ErrorSeries series;
  series.reserve(paired.size());
  for (const PairedFix& p : paired) {
    series.push_back({p.truth.timestamp,
                      euclidean_distance(p.truth.position, p.fix.position),
                      p.fix.method});
  }
  return series;
}

std::vector<CdfPoint> cdf(const ErrorSeries& series) {
  if (series.empty()) throw Error("cdf: empty input");
  std::vector<double> values;
  values.reserve(series.size());
  for (const ErrorSample& e : series) values.push_back(e.error_m);
  std::sort(values.begin(), values.end());
  std::vector<CdfPoint> points;
  points.reserve(values.size());
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    points.push_back({values[i], static_cast<double>(i + 1) / n});
  }
  return points;
}

double percentile(std::span<const double> values, double q) {
  if (values.empty()) throw Error("percentile: empty input");
  if (!(q >= 0.0 && q <= 1.0)) throw Error("percentile: q out of [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double percentile(const ErrorSeries& series, double q) {
  std::vector<double> values;
  values.reserve(series.size());
  for (const ErrorSample& e : series) values.push_back(e.error_m);
  return percentile(std::span<const double>(values), q);
}

}  // namespace ubiloc
