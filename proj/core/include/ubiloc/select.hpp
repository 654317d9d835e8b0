#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ubiloc/geometry.hpp"

namespace ubiloc {

enum class SelectionKind { All, KNearest, KFarthest, KLeastVariance, KStrongest };

struct SelectionPolicy {
  SelectionKind kind = SelectionKind::KNearest;
  int k = 6;  // ignored for All
};

SelectionKind parse_selection_kind(const std::string& name);  // throws ConfigError
std::string selection_kind_name(SelectionKind kind);

struct RangeHistoryConfig {
  std::size_t window = 10;      // readings kept per anchor
  std::size_t min_samples = 3;  // below this an anchor has no usable variance
  double expiry_s = 10.0;       // silent anchors are dropped after this long
};

// Per-anchor ring buffer of recent range readings, backing the
// least-variance heuristic and the solver's variance weights.
class RangeHistory {
 public:
  RangeHistory() = default;
  explicit RangeHistory(RangeHistoryConfig cfg) : cfg_(cfg) {}

  // Appends one batch of measurements. Entries must be newer than everything
  // stored; stale timestamps throw OrderingError. Evicts beyond the window
  // and drops anchors unseen for longer than expiry_s.
  void update(std::span<const TagMeasurement> measurements);

  std::size_t sample_count(int anchor_id) const;
  bool has_full_window(int anchor_id) const;  // >= min_samples readings

  // Unbiased (n-1) variance of the stored ranges; nullopt below 2 samples.
  std::optional<double> range_variance(int anchor_id) const;

  const RangeHistoryConfig& config() const { return cfg_; }

 private:
  struct Buffer {
    std::deque<std::pair<double, double>> entries;  // (timestamp, range)
  };
  RangeHistoryConfig cfg_{};
  std::map<int, Buffer> buffers_;
  double latest_s_ = -std::numeric_limits<double>::infinity();
};

// Returns the subset of `measurements` the policy keeps, ordered by the
// selection key (ties by ascending anchor id):
//   All            - everything, in anchor-id order
//   KNearest       - k smallest ranges
//   KFarthest      - k largest ranges
//   KLeastVariance - k smallest windowed range variances; anchors without a
//                    full window rank after all fully-windowed ones, among
//                    themselves by ascending range
//   KStrongest     - k largest strengths (requires `rss`)
std::vector<TagMeasurement> select(std::span<const TagMeasurement> measurements,
                                   const RangeHistory& history,
                                   const SelectionPolicy& policy,
                                   const std::map<int, double>* rss = nullptr);

}  // namespace ubiloc
