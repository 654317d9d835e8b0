#include "ubiloc/select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ubiloc/error.hpp"

namespace ubiloc {

SelectionKind parse_selection_kind(const std::string& name) {
  if (name == "all") return SelectionKind::All;
  if (name == "nearest") return SelectionKind::KNearest;
  if (name == "farthest") return SelectionKind::KFarthest;
  if (name == "least-variance") return SelectionKind::KLeastVariance;
  if (name == "strongest") return SelectionKind::KStrongest;
  throw ConfigError("unknown selection policy '" + name +
                    "' (expected all|nearest|farthest|least-variance|strongest)");
}

std::string selection_kind_name(SelectionKind kind) {
  switch (kind) {
    case SelectionKind::All: return "all";
    case SelectionKind::KNearest: return "nearest";
    case SelectionKind::KFarthest: return "farthest";
    case SelectionKind::KLeastVariance: return "least-variance";
    case SelectionKind::KStrongest: return "strongest";
  }
  return "unknown";
}

void RangeHistory::update(std::span<const TagMeasurement> measurements) {
  for (const TagMeasurement& m : measurements) {
    if (m.timestamp < latest_s_) {
      throw OrderingError("RangeHistory::update: stale measurement timestamp");
    }
    Buffer& buf = buffers_[m.anchor_id];
    if (!buf.entries.empty() && m.timestamp <= buf.entries.back().first) {
      throw OrderingError("RangeHistory::update: non-increasing timestamp for anchor " +
                          std::to_string(m.anchor_id));
    }
    buf.entries.emplace_back(m.timestamp, m.range_m);
    while (buf.entries.size() > cfg_.window) buf.entries.pop_front();
  }
  for (const TagMeasurement& m : measurements) {
    latest_s_ = std::max(latest_s_, m.timestamp);
  }
  // Drop anchors that have gone silent.
  for (auto it = buffers_.begin(); it != buffers_.end();) {
    if (latest_s_ - it->second.entries.back().first > cfg_.expiry_s) {
      it = buffers_.erase(it);
    } else {
      ++it;
    }
  }
}

std::size_t RangeHistory::sample_count(int anchor_id) const {
  auto it = buffers_.find(anchor_id);
  return it == buffers_.end() ? 0 : it->second.entries.size();
}

bool RangeHistory::has_full_window(int anchor_id) const {
  return sample_count(anchor_id) >= cfg_.min_samples;
}

std::optional<double> RangeHistory::range_variance(int anchor_id) const {
  auto it = buffers_.find(anchor_id);
  if (it == buffers_.end() || it->second.entries.size() < 2) return std::nullopt;
  const auto& entries = it->second.entries;
  const double n = static_cast<double>(entries.size());
  double mean = 0.0;
  for (const auto& [t, r] : entries) mean += r;
  mean /= n;
  double ss = 0.0;
  for (const auto& [t, r] : entries) ss += (r - mean) * (r - mean);
  return ss / (n - 1.0);
}

std::vector<TagMeasurement> select(std::span<const TagMeasurement> measurements,
                                   const RangeHistory& history,
                                   const SelectionPolicy& policy,
                                   const std::map<int, double>* rss) {
  if (policy.kind != SelectionKind::All && policy.k < 1) {
    throw ConfigError("selection k must be >= 1");
  }
  if (policy.kind == SelectionKind::KStrongest && rss == nullptr) {
    throw ConfigError("k-strongest selection requires per-anchor strength values");
  }

  std::vector<TagMeasurement> out(measurements.begin(), measurements.end());
  const auto by_id = [](const TagMeasurement& a, const TagMeasurement& b) {
    return a.anchor_id < b.anchor_id;
  };

  switch (policy.kind) {
    case SelectionKind::All:
      std::sort(out.begin(), out.end(), by_id);
      return out;

    case SelectionKind::KNearest:
      std::sort(out.begin(), out.end(), [](const TagMeasurement& a, const TagMeasurement& b) {
        return std::tie(a.range_m, a.anchor_id) < std::tie(b.range_m, b.anchor_id);
      });
      break;

    case SelectionKind::KFarthest:
      std::sort(out.begin(), out.end(), [](const TagMeasurement& a, const TagMeasurement& b) {
        if (a.range_m != b.range_m) return a.range_m > b.range_m;
        return a.anchor_id < b.anchor_id;
      });
      break;

    case SelectionKind::KLeastVariance:
      // Fully-windowed anchors first by ascending variance; the rest after
      // them by ascending range.
      std::sort(out.begin(), out.end(),
                [&history](const TagMeasurement& a, const TagMeasurement& b) {
                  const bool fa = history.has_full_window(a.anchor_id);
                  const bool fb = history.has_full_window(b.anchor_id);
                  if (fa != fb) return fa;
                  if (fa) {
                    const double va = *history.range_variance(a.anchor_id);
                    const double vb = *history.range_variance(b.anchor_id);
                    return std::tie(va, a.anchor_id) < std::tie(vb, b.anchor_id);
                  }
                  return std::tie(a.range_m, a.anchor_id) < std::tie(b.range_m, b.anchor_id);
                });
      break;

    case SelectionKind::KStrongest:
      for (const TagMeasurement& m : out) {
        if (rss->find(m.anchor_id) == rss->end()) {
          throw ConfigError("k-strongest selection: no strength value for anchor " +
                            std::to_string(m.anchor_id));
        }
      }
      std::sort(out.begin(), out.end(), [rss](const TagMeasurement& a, const TagMeasurement& b) {
        const double sa = rss->at(a.anchor_id);
        const double sb = rss->at(b.anchor_id);
        if (sa != sb) return sa > sb;
        return a.anchor_id < b.anchor_id;
      });
      break;
  }

  const std::size_t keep = std::min<std::size_t>(out.size(), static_cast<std::size_t>(policy.k));
  out.resize(keep);
  return out;
}

}  // namespace ubiloc
