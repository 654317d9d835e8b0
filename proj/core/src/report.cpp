#include "ubiloc/report.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "ubiloc/error.hpp"

namespace ubiloc {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

std::string pose_csv(std::span<const PairedFix> fixes) {
  std::string out = "t,truth_x,truth_y,est_x,est_y,error_m,method,n_anchors\n";
  for (const PairedFix& p : fixes) {
    out += fmt(p.truth.timestamp);
    out += ',';
    out += fmt(p.truth.position.x);
    out += ',';
    out += fmt(p.truth.position.y);
    out += ',';
    out += fmt(p.fix.position.x);
    out += ',';
    out += fmt(p.fix.position.y);
    out += ',';
    out += fmt(euclidean_distance(p.truth.position, p.fix.position));
    out += ',';
    out += fix_method_name(p.fix.method);
    out += ',';
    out += std::to_string(p.fix.anchors_used.size());
    out += '\n';
  }
  return out;
}

std::string cdf_csv(std::span<const CdfPoint> points) {
  std::string out = "error_m,fraction\n";
  for (const CdfPoint& p : points) {
    out += fmt(p.error_m);
    out += ',';
    out += fmt(p.fraction);
    out += '\n';
  }
  return out;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "axis_value,median_m,p90_m,mean_m\n";
  for (const SweepRow& r : rows) {
    out += r.axis_value;
    out += ',';
    out += fmt(r.median_m);
    out += ',';
    out += fmt(r.p90_m);
    out += ',';
    out += fmt(r.mean_m);
    out += '\n';
  }
  return out;
}

std::string summary_json(const RunSummary& summary) {
  nlohmann::json j;
  j["median_m"] = summary.median_m;
  j["p90_m"] = summary.p90_m;
  j["mean_m"] = summary.mean_m;
  j["n_poses"] = summary.n_poses;
  j["scenario"] = summary.scenario;
  j["policy"] = summary.policy;
  j["k"] = summary.k;
  j["seed"] = summary.seed;
  return j.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

}  // namespace ubiloc
