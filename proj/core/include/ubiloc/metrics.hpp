#pragma once

#include <span>
#include <vector>

#include "ubiloc/pipeline.hpp"

namespace ubiloc {

struct ErrorSample {
  double timestamp = 0.0;
  double error_m = 0.0;
  FixMethod method = FixMethod::Multilateration;
};

using ErrorSeries = std::vector<ErrorSample>;

// Per-pose Euclidean error between truth and estimate. Rejects empty input.
ErrorSeries compute_errors(std::span<const PairedFix> paired);

struct CdfPoint {
  double error_m = 0.0;
  double fraction = 0.0;
};

// Empirical CDF: errors sorted ascending, fractions (i+1)/n, ending at 1.
std::vector<CdfPoint> cdf(const ErrorSeries& series);

// Linear-interpolated empirical quantile, q in [0, 1].
double percentile(std::span<const double> values, double q);
double percentile(const ErrorSeries& series, double q);

}  // namespace ubiloc
