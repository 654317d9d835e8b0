#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "ubiloc/metrics.hpp"
#include "ubiloc/sweep.hpp"

namespace ubiloc {

// CSV/JSON builders. All numeric formatting is deterministic so identical
// inputs produce byte-identical files.

// Columns: t,truth_x,truth_y,est_x,est_y,error_m,method,n_anchors
std::string pose_csv(std::span<const PairedFix> fixes);

// Columns: error_m,fraction
std::string cdf_csv(std::span<const CdfPoint> points);

// Columns: axis_value,median_m,p90_m,mean_m
std::string sweep_csv(std::span<const SweepRow> rows);

struct RunSummary {
  double median_m = 0.0;
  double p90_m = 0.0;
  double mean_m = 0.0;
  std::size_t n_poses = 0;
  std::string scenario;
  std::string policy;
  int k = 0;
  std::uint64_t seed = 0;
};

std::string summary_json(const RunSummary& summary);

// Write-then-rename so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace ubiloc
